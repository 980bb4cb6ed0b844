"""Numerical machinery for the Dieudonne equation H^T P = P H.

The operator L(P) = H^T P - P H is materialized as an N^2 x m constraint
matrix over a chosen set of m independent upper-triangle entries of a
symmetric P, so banded solutions are nullspace vectors of that matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .chain import ChainHamiltonian
from .metrics import Pseudometric
from .numerics import SymmetricMatrix, as_array, jacobi_eigh, norm_inf, nullspace

log = logging.getLogger(__name__)

SEED_FLOOR = 1e-8


class Residual(float):
    """Relative residual |H^T P - P H| / (|H| |P|), infinity norms.

    ``degenerate`` is set when P (or H) is zero and the ratio is undefined.
    """

    degenerate: bool

    def __new__(cls, value: float, degenerate: bool = False):
        obj = super().__new__(cls, value)
        obj.degenerate = degenerate
        return obj


def _h_dense(h) -> np.ndarray:
    return h.dense() if isinstance(h, ChainHamiltonian) else np.asarray(h, dtype=float)


def residual(h, p) -> Residual:
    hd = _h_dense(h)
    pd = as_array(p)
    if hd.shape != pd.shape:
        raise ValueError(f"dimension mismatch: H is {hd.shape}, P is {pd.shape}")
    denom = norm_inf(hd) * norm_inf(pd)
    if denom == 0.0:
        return Residual(0.0, degenerate=True)
    return Residual(norm_inf(hd.T @ pd - pd @ hd) / denom)


@dataclass(frozen=True, eq=False)
class DieudonneOperator:
    h: ChainHamiltonian

    @property
    def n(self) -> int:
        return self.h.n_levels

    def full_support(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i, self.n)]

    def constraint_matrix(self, support=None) -> np.ndarray:
        """Column c is vec(L(E_c)) for the symmetric unit matrix E_c of support[c]."""
        if support is None:
            support = self.full_support()
        hd = self.h.dense()
        n = self.n
        cols = np.empty((n * n, len(support)))
        for c, (i, j) in enumerate(support):
            e = np.zeros((n, n))
            e[i, j] = e[j, i] = 1.0
            cols[:, c] = (hd.T @ e - e @ hd).ravel()
        return cols

    def apply(self, p) -> np.ndarray:
        hd = self.h.dense()
        pd = as_array(p)
        return hd.T @ pd - pd @ hd

    def solution_space(self, tol: float = 1e-10) -> list[SymmetricMatrix]:
        """Basis of every symmetric solution, no banded ansatz."""
        support = self.full_support()
        basis = nullspace(self.constraint_matrix(support), tol)
        return [_to_symmetric(self.n, support, v) for v in basis]


def _to_dense(n: int, support, values) -> np.ndarray:
    m = np.zeros((n, n))
    for (i, j), v in zip(support, values):
        m[i, j] = m[j, i] = v
    return m


def _to_symmetric(n: int, support, values) -> SymmetricMatrix:
    return SymmetricMatrix.from_upper(_to_dense(n, support, values))


def banded_support(n: int, band: int, parity: bool = True) -> list[tuple[int, int]]:
    """Upper-triangle unknowns of the band-k ansatz.

    Entries on diagonals |d| <= k (only d = k mod 2 when ``parity``), with
    row 0 restricted to its column-k entry.  The row-0 condition removes the
    lower-band pseudometrics that would otherwise also satisfy the ansatz.
    """
    out = []
    for i in range(n):
        for j in range(i, min(n, i + band + 1)):
            d = j - i
            if parity and (d - band) % 2:
                continue
            if i == 0 and j != band:
                continue
            out.append((i, j))
    return out


def seed_value(band: int, a: float) -> float:
    if band == 0:
        return 2 * a * a
    if band == 1:
        return 2 * a
    return a


_LABELS = {0: "diagonal", 1: "tridiagonal", 2: "pentadiagonal"}


def solve_banded(h: ChainHamiltonian, band: int, tol: float = 1e-10, parity: bool = True) -> list[Pseudometric]:
    """Banded solutions of H^T P = P H, rescaled to the seed [P]_{0,k}.

    Returns an empty list when no banded solution exists.  If the seed entry
    of a solution is below 1e-8 the solution is scaled by its largest entry
    instead and flagged ``nonstandard_normalization``.
    """
    n = h.n_levels
    if not 0 <= band <= n - 1:
        raise ValueError(f"band must lie in [0, {n - 1}], got {band}")
    support = banded_support(n, band, parity)
    op = DieudonneOperator(h)
    basis = nullspace(op.constraint_matrix(support), tol)
    seed_col = support.index((0, band))
    label = "longrange" if band == n - 1 and band > 2 else _LABELS.get(band, f"band{band}")
    out = []
    for v in basis:
        m = _to_dense(n, support, v)
        seed = v[seed_col]
        nonstandard = abs(seed) < SEED_FLOOR
        if nonstandard:
            big = v[np.abs(v).argmax()]
            m = m / big
            log.warning("band-%d solution has negligible seed entry; scaled by largest entry", band)
        else:
            m = m * (seed_value(band, h.a) / seed)
        out.append(Pseudometric.from_dense(m, h.a, band, label, nonstandard_normalization=nonstandard))
    return out


def left_eigenvectors(h: ChainHamiltonian) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and left eigenvectors (columns) of a tridiagonal H.

    H is symmetrized by a diagonal similarity D built from its own couplings
    (requires c_j b_{j+1} > 0); left eigenvectors are then D u for the
    eigenvectors u of D H D^{-1}.
    """
    c, b = h.superdiag, h.subdiag
    if np.any(c * b <= 0):
        raise ValueError("couplings must have positive products for a real simple spectrum")
    d = np.ones(h.n_levels)
    for j in range(h.n_levels - 1):
        d[j + 1] = d[j] * np.sqrt(c[j] / b[j])
    off = np.sqrt(c * b)
    t = np.diag(off, 1) + np.diag(off, -1)
    w, u = jacobi_eigh(t)
    if h.n_levels > 1 and np.diff(w).min() <= 1e-12 * max(1.0, np.abs(w).max()):
        raise ValueError("degenerate spectrum")
    return w, d[:, None] * u


def spectral_pseudometric(h: ChainHamiltonian, weights) -> SymmetricMatrix:
    """P = sum_n w_n psi_n psi_n^T over left eigenvectors psi_n of H."""
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (h.n_levels,):
        raise ValueError(f"need {h.n_levels} weights")
    _, psi = left_eigenvectors(h)
    return SymmetricMatrix.from_upper((psi * weights) @ psi.T)
