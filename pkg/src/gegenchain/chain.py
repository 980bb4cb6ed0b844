"""The non-Hermitian tridiagonal chain H(N, a) and its Hermitian partner."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gegenbauer import check_a
from .metrics import theta0_entries
from .numerics import tridiagonal_eigvalsh


@dataclass(frozen=True, eq=False)
class ChainHamiltonian:
    """Zero-diagonal tridiagonal matrix with H[j, j+1] = c_j and H[j+1, j] = b_{j+1}."""

    n_levels: int
    a: float
    superdiag: np.ndarray
    subdiag: np.ndarray

    def dense(self) -> np.ndarray:
        h = np.zeros((self.n_levels, self.n_levels))
        idx = np.arange(self.n_levels - 1)
        h[idx, idx + 1] = self.superdiag
        h[idx + 1, idx] = self.subdiag
        return h

    def norm_inf(self) -> float:
        return float(np.abs(self.dense()).sum(axis=1).max())


@dataclass(frozen=True, eq=False)
class HermitianPartner:
    n_levels: int
    a: float
    offdiag: np.ndarray

    def dense(self) -> np.ndarray:
        return np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def eigenvalues(self) -> np.ndarray:
        return tridiagonal_eigvalsh(np.zeros(self.n_levels), self.offdiag)


def _check_n(n_levels: int) -> None:
    if n_levels < 1:
        raise ValueError("n_levels must be >= 1")


def build_hamiltonian(n_levels: int, a: float) -> ChainHamiltonian:
    """c_j = 1/(2a+2j) above and b_{j+1} = (2a+j)/(2a+2j+2) below the diagonal."""
    _check_n(n_levels)
    a = check_a(a)
    j = np.arange(n_levels - 1, dtype=float)
    return ChainHamiltonian(n_levels, a, 1.0 / (2 * a + 2 * j), (2 * a + j) / (2 * a + 2 * j + 2))


def build_omega0(n_levels: int, a: float) -> np.ndarray:
    """Diagonal of Omega_0 = sqrt(Theta_0)."""
    _check_n(n_levels)
    return np.sqrt(theta0_entries(n_levels, a))


def build_hermitian_partner(n_levels: int, a: float) -> HermitianPartner:
    _check_n(n_levels)
    a = check_a(a)
    k = np.arange(n_levels - 1, dtype=float)
    mu = 0.5 * np.sqrt((2 * a + k) / ((a + k) * (a + k + 1)))
    return HermitianPartner(n_levels, a, mu)


def similarity_transform(h: ChainHamiltonian, omega_diag: np.ndarray) -> np.ndarray:
    """Omega H Omega^{-1} for diagonal Omega, inverted entrywise."""
    return omega_diag[:, None] * h.dense() * (1.0 / omega_diag)[None, :]


def chain_spectrum(h: ChainHamiltonian) -> np.ndarray:
    """Eigenvalues of H via its Hermitian partner."""
    return build_hermitian_partner(h.n_levels, h.a).eigenvalues()
