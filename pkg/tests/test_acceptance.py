"""Exit criteria of the build, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import math
import time

import numpy as np
import pytest

from gegenchain.chain import build_hamiltonian, build_hermitian_partner, build_omega0, similarity_transform
from gegenchain.dieudonne import DieudonneOperator, residual, solve_banded, spectral_pseudometric
from gegenchain.gegenbauer import gegenbauer_zeros
from gegenchain.metrics import p1, p2, p_longrange_n4, p_longrange_n8, theta0
from gegenchain.numerics import norm_inf
from gegenchain.positivity import analytic_2x2_boundary, boundary, positivity_record

pytestmark = pytest.mark.acceptance

# N -> (G, G', G''); None marks a dash in the published table
TABLE1 = {
    1: (math.inf, None, None),
    2: (1.0, None, None),
    3: (0.8164965809, None, None),
    4: (0.7835809235, 2.210430034, None),
    5: (0.7772152453, 1.528761895, None),
    6: (0.7761738933, 1.347821298, 3.702152325),
    7: (0.7760367842, 1.284679682, 2.333798009),
    8: (0.7760220038, 1.261982266, 1.922171587),
    9: (0.7760206592, 1.254396565, 1.747726425),
}


def test_01_table1(criterion):
    t0 = time.perf_counter()
    records = {n: positivity_record(n, 1.0, tol=1e-10) for n in TABLE1}
    elapsed = time.perf_counter() - t0
    worst, checked, shape_ok = 0.0, 0, True
    for n, ref in TABLE1.items():
        rec = records[n]
        got = (rec.g_boundary, rec.g_prime, rec.g_double_prime)
        for r, g in zip(ref, got):
            if r is None:
                shape_ok &= g is None
                continue
            checked += 1
            if math.isinf(r):
                shape_ok &= math.isinf(g)
                continue
            worst = max(worst, abs(g - r))
    ok = shape_ok and worst <= 1e-6 and elapsed < 10.0
    criterion(1, ok, f"{checked} Table-1 values, max |err| = {worst:.2e} (tol 1e-6), dashes match = {shape_ok}, {elapsed:.2f}s (< 10s)")
    assert ok


def test_02_theta_decay(criterion):
    t = np.diag(theta0(9, 1.0).dense())
    e7, e8 = abs(t[7] - 0.0003968), abs(t[8] - 0.0000496)
    ok = e7 <= 1e-7 and e8 <= 1e-7
    criterion(2, ok, f"theta_7 = {t[7]:.7g} (err {e7:.1e}), theta_8 = {t[8]:.7g} (err {e8:.1e}), tol 1e-7")
    assert ok


def test_03_residual_suite(criterion):
    worst, count = 0.0, 0
    for a in (0.5, 1.0, 2.0, 5.0):
        for n in range(1, 31):
            h = build_hamiltonian(n, a)
            mats = [theta0(n, a)]
            if n >= 2:
                mats.append(p1(n, a))
            if n >= 3:
                mats.append(p2(n, a))
            for m in mats:
                worst = max(worst, residual(h, m))
                count += 1
        worst = max(worst, residual(build_hamiltonian(4, a), p_longrange_n4(a)))
        worst = max(worst, residual(build_hamiltonian(8, a), p_longrange_n8(a)))
        count += 2
    ok = worst <= 1e-12
    criterion(3, ok, f"{count} closed-form pseudometrics, max relative residual = {worst:.2e} (tol 1e-12)")
    assert ok


def _entrywise_rel(got, want):
    nz = want != 0
    rel = np.abs(got[nz] - want[nz]) / np.abs(want[nz])
    zero_leak = np.abs(got[~nz]).max(initial=0.0) / np.abs(want).max()
    return max(rel.max(initial=0.0), zero_leak)


def test_04_solver_equivalence(criterion):
    worst, count = 0.0, 0
    for a in (0.5, 1.0, 2.0):
        for n in range(1, 13):
            h = build_hamiltonian(n, a)
            pairs = [(0, theta0(n, a))]
            if n >= 2:
                pairs.append((1, p1(n, a)))
            if n >= 3:
                pairs.append((2, p2(n, a)))
            for k, ref in pairs:
                sols = solve_banded(h, k)
                assert len(sols) == 1
                worst = max(worst, _entrywise_rel(sols[0].dense(), ref.dense()))
                count += 1
            if n >= 3:
                corner = solve_banded(h, 2)[0].entry(n - 1, n - 1)
                u, v = (2 * n - 3) * (n - 2), 3 * n - 6
                gamma = math.prod(i + 2 * a for i in range(1, n - 1))
                omega = -(u + v * a) / ((2 * n - 4 + 2 * a) * gamma)
                worst = max(worst, abs(corner - omega) / abs(omega))
    ok = worst <= 1e-10
    criterion(4, ok, f"{count} solver/closed-form pairs incl. corner omega^(N), max entrywise rel err = {worst:.2e} (tol 1e-10)")
    assert ok


def test_05_isospectrality(criterion):
    worst, worst_at, sym = 0.0, None, 0.0
    for a in (0.5, 1.0, 2.0, 5.0):
        for n in range(1, 21):
            e_chain = build_hermitian_partner(n, a).eigenvalues()
            e_zero = gegenbauer_zeros(n, a).energies
            d = np.abs(np.sort(e_chain) - np.sort(e_zero)).max()
            if d > worst:
                worst, worst_at = d, (n, a)
            sym = max(sym, np.abs(e_chain + e_chain[::-1]).max())
    ok = worst <= 1e-10 and sym <= 1e-12
    criterion(
        5, ok,
        f"max |eig(h_0) - zeros of G(N,a,.)| = {worst:.2e} at (N, a) = {worst_at} (tol 1e-10); "
        f"+/- symmetry {sym:.1e} (tol 1e-12)",
    )
    assert ok


def test_06_similarity(criterion):
    worst = 0.0
    for a in (0.5, 1.0, 2.0, 5.0):
        for n in range(1, 31):
            hp = build_hermitian_partner(n, a).dense()
            sim = similarity_transform(build_hamiltonian(n, a), build_omega0(n, a))
            scale = norm_inf(hp) if n > 1 else 1.0
            worst = max(worst, np.abs(sim - hp).max() / scale)
    ok = worst <= 1e-12
    criterion(6, ok, f"max |Omega_0 H Omega_0^-1 - h_0| / |h_0| = {worst:.2e} (tol 1e-12), N <= 30")
    assert ok


def test_07_analytic_2x2(criterion):
    worst = 0.0
    for a in (0.5, 1.0, 2.0, 3.0, 10.0):
        worst = max(worst, abs(boundary(2, a, 0, 1e-10) - math.sqrt(2 * a + 2) / 2))
    g1 = boundary(2, 1.0, 0, 1e-10)
    ok = worst <= 1e-9 and abs(g1 - 1.0) <= 1e-9 and analytic_2x2_boundary(1.0) == 2.0
    criterion(7, ok, f"max |boundary - sqrt(2a+2)/2| = {worst:.1e} (tol 1e-9); G(2) at a=1 = {g1:.10f}")
    assert ok


def test_08_nullspace_dimension(criterion):
    dims_ok, worst_proj = True, 0.0
    rng = np.random.default_rng(8)
    for a in (0.5, 1.0, 2.0):
        for n in range(1, 13):
            h = build_hamiltonian(n, a)
            basis = DieudonneOperator(h).solution_space()
            dims_ok &= len(basis) == n
            q = np.array([b.dense().ravel() for b in basis]).T
            q, _ = np.linalg.qr(q)
            for w in (np.ones(n), rng.uniform(-1, 2, n), np.eye(n)[n // 2]):
                s = spectral_pseudometric(h, w).dense().ravel()
                s = s / np.linalg.norm(s)
                worst_proj = max(worst_proj, np.linalg.norm(s - q @ (q.T @ s)))
    ok = dims_ok and worst_proj <= 1e-9
    criterion(8, ok, f"nullspace dim == N for all N <= 12: {dims_ok}; spectral projection residual = {worst_proj:.1e} (tol 1e-9)")
    assert ok


def _pseudometric(n, a, k):
    if k == 0:
        return theta0(n, a).dense()
    if k == 1:
        return p1(n, a).dense()
    if k == 2:
        return p2(n, a).dense()
    if (n, k) == (4, 3):
        return p_longrange_n4(a).dense()
    if (n, k) == (8, 7):
        return p_longrange_n8(a).dense()
    return solve_banded(build_hamiltonian(n, a), k)[0].dense()


def test_09_metric_orthogonality(criterion):
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(500):
        n = int(rng.integers(2, 11))
        a = float(rng.uniform(0.2, 6.0))
        k = int(rng.integers(0, n))
        p = _pseudometric(n, a, k)
        w, v = np.linalg.eig(build_hamiltonian(n, a).dense())
        v = v.real[:, np.argsort(w.real)]
        gram = v.T @ p @ v
        norms = np.linalg.norm(v, axis=0)
        bound = norm_inf(p) * np.outer(norms, norms)
        off = np.abs(gram - np.diag(np.diag(gram))) / bound
        worst = max(worst, off.max())
    ok = worst <= 1e-9
    criterion(9, ok, f"500 random (N, a, k): max |psi_m^T P psi_n| / (|P||psi_m||psi_n|) = {worst:.1e} (tol 1e-9)")
    assert ok


def test_10_stabilization(criterion):
    g = {n: boundary(n, 1.0, 0, 1e-12) for n in range(3, 10)}
    diffs = {n: abs(g[n] - g[n - 1]) for n in range(4, 10)}
    ok = all(diffs[n] < 10.0 ** (3 - n) for n in diffs)
    ratios = ", ".join(f"N={n}: {diffs[n] / 10.0 ** (3 - n):.3f}" for n in diffs)
    criterion(10, ok, f"|G(N) - G(N-1)| / 10^(3-N) (each must be < 1): {ratios}")
    assert ok
