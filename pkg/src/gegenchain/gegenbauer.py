"""Gegenbauer (ultraspherical) polynomials G(n, a, x) = C_n^(a)(x).

Evaluation uses the forward three-term recurrence

    n G(n) = 2 (n + a - 1) x G(n-1) - (n + 2a - 2) G(n-2),
    G(0) = 1,  G(1) = 2 a x.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import jacobi_eigh


class DomainError(ValueError):
    pass


def check_a(a: float) -> float:
    a = float(a)
    if not np.isfinite(a) or a <= 0:
        raise DomainError(
            f"parameter a must be > 0 (got {a}); at a = 0 the Gegenbauer family "
            "degenerates to Chebyshev polynomials"
        )
    return a


def gegenbauer_eval(n: int, a: float, x):
    """Value of G(n, a, x); ``x`` may be a scalar or an array."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    g_prev = np.ones_like(x)
    if n == 0:
        return g_prev if g_prev.ndim else float(g_prev)
    g = 2.0 * a * x
    for k in range(2, n + 1):
        g_prev, g = g, (2.0 * (k + a - 1) * x * g - (k + 2 * a - 2) * g_prev) / k
    return g if g.ndim else float(g)


def gegenbauer_sequence(n: int, a: float, x: float) -> np.ndarray:
    """Values G(0, a, x), ..., G(n-1, a, x)."""
    out = np.empty(n)
    if n == 0:
        return out
    out[0] = 1.0
    if n > 1:
        out[1] = 2.0 * a * x
    for k in range(2, n):
        out[k] = (2.0 * (k + a - 1) * x * out[k - 1] - (k + 2 * a - 2) * out[k - 2]) / k
    return out


def gegenbauer_derivative(n: int, a: float, x):
    # d/dx C_n^(a) = 2a C_{n-1}^(a+1)
    if n == 0:
        return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
    return 2.0 * a * gegenbauer_eval(n - 1, a + 1.0, x)


def jacobi_matrix(n_levels: int, a: float) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the symmetric Jacobi matrix of G(., a, .).

    Its eigenvalues are the zeros of G(n_levels, a, x).
    """
    a = check_a(a)
    k = np.arange(1, n_levels, dtype=float)
    off = 0.5 * np.sqrt(k * (k + 2 * a - 1) / ((k + a) * (k + a - 1)))
    return np.zeros(n_levels), off


def recurrence_matrix(n_levels: int, a: float) -> np.ndarray:
    """Tridiagonal matrix whose rows are the truncated recurrence.

    Row k encodes ``x G(k) = (k+1)/(2(k+a)) G(k+1) + (k+2a-1)/(2(k+a)) G(k-1)``,
    so the vector (G(0, a, E), ..., G(N-1, a, E)) is an eigenvector exactly
    when G(N, a, E) = 0.
    """
    a = check_a(a)
    h = np.zeros((n_levels, n_levels))
    for k in range(n_levels - 1):
        h[k, k + 1] = (k + 1) / (2.0 * (k + a))
        h[k + 1, k] = (k + 2 * a) / (2.0 * (k + 1 + a))
    return h


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Zeros E_n of G(N, a, .) and the vectors (G(k, a, E_n))_k.

    ``eigenvectors[n]`` is left unnormalized, with first component G(0)=1.
    """

    n_levels: int
    a: float
    energies: np.ndarray
    eigenvectors: np.ndarray

    def normalized_eigenvectors(self) -> np.ndarray:
        return self.eigenvectors / np.linalg.norm(self.eigenvectors, axis=1, keepdims=True)


def gegenbauer_zeros(n_levels: int, a: float) -> SpectralData:
    """Zeros of G(n_levels, a, .) with their polynomial eigenvectors.

    Eigenvalues of the symmetric Jacobi matrix, then one Newton step on the
    recurrence value; the result is symmetrized about 0.
    """
    if n_levels < 1:
        raise ValueError("n_levels must be >= 1")
    a = check_a(a)
    diag, off = jacobi_matrix(n_levels, a)
    t = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    x, _ = jacobi_eigh(t)
    g = gegenbauer_eval(n_levels, a, x)
    dg = gegenbauer_derivative(n_levels, a, x)
    step = np.where(dg != 0, g / np.where(dg != 0, dg, 1.0), 0.0)
    x = x - step
    x = 0.5 * (x - x[::-1])
    vecs = np.array([gegenbauer_sequence(n_levels, a, e) for e in x])
    return SpectralData(n_levels, a, x, vecs)
