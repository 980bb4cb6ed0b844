import math

import numpy as np
import pytest
from scipy.special import roots_gegenbauer

from gegenchain.gegenbauer import (
    DomainError,
    gegenbauer_eval,
    gegenbauer_zeros,
    recurrence_matrix,
)


def horner_gegenbauer(n, a, x):
    """Explicit power-series coefficients evaluated by Horner's rule."""
    coeffs = np.zeros(n + 1)  # highest degree first for np.polyval
    for k in range(n // 2 + 1):
        c = (-1) ** k * math.gamma(n - k + a) / (math.gamma(a) * math.factorial(k) * math.factorial(n - 2 * k))
        coeffs[2 * k] = c * 2 ** (n - 2 * k)
    return np.polyval(coeffs, x)


def bisect_zero(f, lo, hi, tol=1e-15):
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestEval:
    def test_degree_zero(self):
        assert gegenbauer_eval(0, 1.0, 0.3) == 1.0

    def test_degree_one(self):
        assert gegenbauer_eval(1, 1.0, 0.5) == 1.0

    def test_degree_two(self):
        # G(2) = 2a(1+a)x^2 - a, zero at a=1, x=1/2
        assert gegenbauer_eval(2, 1.0, 0.5) == pytest.approx(0.0, abs=1e-15)

    def test_vectorized(self):
        x = np.linspace(-1, 1, 5)
        assert np.allclose(gegenbauer_eval(3, 1.0, x), 8 * x**3 - 4 * x)

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 5.0])
    @pytest.mark.parametrize("n", range(16))
    def test_recurrence_vs_horner(self, n, a):
        x = np.linspace(-1, 1, 41)
        ref = horner_gegenbauer(n, a, x)
        got = gegenbauer_eval(n, a, x)
        scale = np.abs(ref).max()
        assert np.abs(got - ref).max() <= 1e-10 * scale

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            gegenbauer_eval(-1, 1.0, 0.0)


class TestZeros:
    def test_single_level(self):
        assert gegenbauer_zeros(1, 3.0).energies == pytest.approx([0.0])

    def test_two_levels(self):
        assert gegenbauer_zeros(2, 1.0).energies == pytest.approx([-0.5, 0.5], abs=1e-15)

    def test_three_levels(self):
        e = gegenbauer_zeros(3, 1.0).energies
        assert e == pytest.approx([-1 / math.sqrt(2), 0.0, 1 / math.sqrt(2)], abs=1e-15)

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 5.0])
    @pytest.mark.parametrize("n", [1, 2, 3, 7, 12, 20])
    def test_against_scipy(self, n, a):
        sd = gegenbauer_zeros(n, a)
        assert np.allclose(sd.energies, roots_gegenbauer(n, a)[0], atol=1e-12)

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 5.0])
    @pytest.mark.parametrize("n", [2, 5, 9, 16])
    def test_sign_change_brackets(self, n, a):
        e = gegenbauer_zeros(n, a).energies
        for x in e:
            lo, hi = x - 0.5e-8, x + 0.5e-8
            assert gegenbauer_eval(n, a, lo) * gegenbauer_eval(n, a, hi) < 0
            assert bisect_zero(lambda t: gegenbauer_eval(n, a, t), lo, hi) == pytest.approx(x, abs=1e-13)

    @pytest.mark.parametrize("n", [2, 3, 8, 15])
    def test_invariants(self, n):
        sd = gegenbauer_zeros(n, 1.5)
        assert np.all(np.diff(sd.energies) > 0)
        assert np.abs(sd.energies + sd.energies[::-1]).max() <= 1e-12
        assert np.allclose(sd.eigenvectors[:, 0], 1.0)
        assert np.allclose(np.linalg.norm(sd.normalized_eigenvectors(), axis=1), 1.0)

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 5.0])
    @pytest.mark.parametrize("n", [1, 2, 4, 9, 14])
    def test_schrodinger_residual_of_truncated_recurrence(self, n, a):
        h = recurrence_matrix(n, a)
        sd = gegenbauer_zeros(n, a)
        scale = np.abs(h).sum(axis=1).max() if n > 1 else 1.0
        for e, psi in zip(sd.energies, sd.eigenvectors):
            assert np.abs(h @ psi - e * psi).max() <= 1e-10 * scale * np.abs(psi).max()

    def test_rejects_nonpositive_a(self):
        with pytest.raises(DomainError, match="Chebyshev"):
            gegenbauer_zeros(3, 0.0)
        with pytest.raises(DomainError):
            gegenbauer_zeros(3, -1.0)
