"""Closed-form pseudometrics of the Gegenbauer chain and their combinations.

Every pseudometric P is a real symmetric banded solution of H^T P = P H.
Normalizations follow the seeds theta_0 = 2a^2 (diagonal), kappa_1 = 2a
(tridiagonal), gamma_1 = a (pentadiagonal) and [P]_{0,N-1} = a (long range).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gegenbauer import DomainError, check_a
from .numerics import SymmetricMatrix

# beyond this many factors the rising product is evaluated in log space
_LOG_SPACE_FROM = 60


def rising(n: int, a: float) -> float:
    """Gamma_n = (1+2a)(2+2a)...(n+2a), with Gamma_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > _LOG_SPACE_FROM:
        return math.exp(math.lgamma(n + 1 + 2 * a) - math.lgamma(1 + 2 * a))
    out = 1.0
    for i in range(1, n + 1):
        out *= i + 2 * a
    return out


@dataclass(frozen=True, eq=False)
class Pseudometric:
    """Symmetric banded matrix stored by upper diagonals.

    ``diagonals[d][i]`` holds entry (i, i+d) for 0 <= d <= band.
    """

    n_levels: int
    a: float
    band: int
    label: str
    diagonals: dict[int, np.ndarray]
    nonstandard_normalization: bool = False

    def entry(self, i: int, j: int) -> float:
        if i > j:
            i, j = j, i
        d = j - i
        if d > self.band or d not in self.diagonals:
            return 0.0
        return float(self.diagonals[d][i])

    def dense(self) -> np.ndarray:
        out = np.zeros((self.n_levels, self.n_levels))
        for d, vals in self.diagonals.items():
            idx = np.arange(len(vals))
            out[idx, idx + d] = vals
            out[idx + d, idx] = vals
        return out

    def symmetric(self) -> SymmetricMatrix:
        return SymmetricMatrix.from_upper(self.dense())

    def nonzero_entries(self, tol: float = 0.0) -> list[tuple[int, int, float]]:
        """Upper-triangle (row, col, value) triples, row-major."""
        out = []
        for i in range(self.n_levels):
            for j in range(i, min(self.n_levels, i + self.band + 1)):
                v = self.entry(i, j)
                if abs(v) > tol:
                    out.append((i, j, v))
        return out

    @classmethod
    def from_dense(cls, m, a: float, band: int, label: str, **kw) -> "Pseudometric":
        m = np.asarray(m, dtype=float)
        n = m.shape[0]
        diags = {d: np.diag(m, d).copy() for d in range(band + 1) if np.any(np.diag(m, d))}
        return cls(n, a, band, label, diags, **kw)


def _require(n_levels: int, minimum: int) -> None:
    if n_levels < minimum:
        raise DomainError(f"need n_levels >= {minimum}, got {n_levels}")


def theta0_entries(n_levels: int, a: float) -> np.ndarray:
    a = check_a(a)
    _require(n_levels, 1)
    t = np.empty(n_levels)
    t[0] = 2 * a * a
    if n_levels > 1:
        t[1] = a + 1
    for j in range(2, n_levels):
        t[j] = (a + j) / rising(j - 1, a)
    return t


def theta0(n_levels: int, a: float) -> Pseudometric:
    """Diagonal metric Theta_0, positive definite for every a > 0."""
    return Pseudometric(n_levels, float(a), 0, "diagonal", {0: theta0_entries(n_levels, a)})


def p1(n_levels: int, a: float) -> Pseudometric:
    """Tridiagonal pseudometric with kappa_j on the first off-diagonals."""
    a = check_a(a)
    _require(n_levels, 2)
    k = np.empty(n_levels - 1)
    k[0] = 2 * a
    if n_levels > 2:
        k[1] = 1.0
    for j in range(3, n_levels):
        k[j - 1] = 1.0 / rising(j - 2, a)
    return Pseudometric(n_levels, a, 1, "tridiagonal", {1: k})


def gamma_entry(j: int, a: float) -> float:
    if j == 1:
        return a
    if j == 2:
        return (1 + a) / (4 + 2 * a)
    return (1 + a) / ((2 * j + 2 * a) * rising(j - 2, a))


def delta_entry(j: int, a: float) -> float:
    num = 2 * (2 * a**3 + 3 * a**2 - (4 * j - 5) * j * a - (2 * j * j - 1) * (j - 1))
    return num / ((2 * j + 2 + 2 * a) * (2 * j - 2 + 2 * a) * rising(j - 1, a))


def omega_corner(n_levels: int, a: float) -> float:
    """Truncation-dependent last diagonal element of P_2 at dimension N."""
    n = n_levels
    u = (2 * n - 3) * (n - 2)
    v = 3 * n - 6
    return -(u + v * a) / ((2 * n - 4 + 2 * a) * rising(n - 2, a))


def p2(n_levels: int, a: float) -> Pseudometric:
    """Pentadiagonal pseudometric: gamma_j on the second off-diagonals,
    delta_j on the diagonal from row 1, and omega^(N) in the last corner."""
    a = check_a(a)
    _require(n_levels, 3)
    n = n_levels
    diag = np.zeros(n)
    for j in range(1, n - 1):
        diag[j] = delta_entry(j, a)
    diag[n - 1] = omega_corner(n, a)
    gam = np.array([gamma_entry(j, a) for j in range(1, n - 1)])
    return Pseudometric(n, a, 2, "pentadiagonal", {0: diag, 2: gam})


def p_longrange_n4(a: float) -> Pseudometric:
    """Heptadiagonal (k = 3) pseudometric at N = 4."""
    a = check_a(a)
    m = np.zeros((4, 4))
    m[0, 3] = a
    m[1, 2] = (a * a + 2 * a + 1) / (a + 3)
    m[2, 3] = -(3 * a + 5) / ((a + 3) * (2 * a + 1))
    return Pseudometric.from_dense(np.triu(m) + np.triu(m, 1).T, a, 3, "longrange")


def appendix_n8_entries(a: float) -> dict[tuple[int, int], float]:
    """Closed-form entries of the k = 7 pseudometric at N = 8, 0-indexed.

    Only the elements whose polynomials are fully known are included; the
    layer-l, position-m element sits at (m - 1 + 2(l - 1), N - m).
    """
    a = check_a(a)
    d1, d5, d6, d7 = 2 * a + 1, a + 5, a + 6, a + 7
    return {
        (0, 7): a,
        (1, 6): (a + 1) * (a + 3) / d7,
        (2, 5): (a + 1) * (a + 3) * (2 * a + 5) * (a + 2) / (d1 * d7 * d6),
        (3, 4): (2 * a + 5) * (a + 3) ** 2 * (a + 2) ** 2 / (d1 * d7 * d6 * d5),
        (2, 7): -3 * (3 * a + 13) * (a + 2) / (d1 * d7 * d6),
        (3, 6): -5 * (a + 4) * (3 * a * a + 22 * a + 23) * (a + 3) ** 2
        / (d1 * d6 * d5 * (a + 1) * d7**2),
        (4, 5): -6 * (2 * a + 5) * (a + 3)
        * (3 * a**5 + 55 * a**4 + 380 * a**3 + 1223 * a**2 + 1811 * a + 976)
        / (d5 * (2 * a + 3) * d1 * (a + 1) * d7**2 * d6**2),
    }


def p_longrange_n8(a: float) -> Pseudometric:
    """Fifteen-diagonal (k = 7) pseudometric at N = 8.

    Closed forms where available; the three remaining independent entries,
    (4, 7), (5, 6) and (6, 7), come from the banded Dieudonne solver.
    """
    from .chain import build_hamiltonian
    from .dieudonne import solve_banded

    a = check_a(a)
    (solved,) = solve_banded(build_hamiltonian(8, a), 7)
    m = np.triu(solved.dense())
    for (i, j), v in appendix_n8_entries(a).items():
        m[i, j] = v
    return Pseudometric.from_dense(m + np.triu(m, 1).T, a, 7, "longrange")


@dataclass(frozen=True, eq=False)
class MetricCombination:
    alphas: np.ndarray
    components: list[Pseudometric] = field(repr=False)
    assembled: SymmetricMatrix = field(repr=False)

    def dense(self) -> np.ndarray:
        return self.assembled.dense()


def assemble_metric(components, alphas) -> MetricCombination:
    """Theta = sum_i alphas[i] * components[i]."""
    components = list(components)
    alphas = np.asarray(alphas, dtype=float)
    if not components:
        raise ValueError("need at least one component")
    if len(alphas) != len(components):
        raise ValueError(f"{len(alphas)} coefficients for {len(components)} components")
    n = components[0].n_levels
    a = components[0].a
    for c in components:
        if c.n_levels != n or c.a != a:
            raise ValueError("components must share (n_levels, a)")
    total = sum(float(al) * c.dense() for al, c in zip(alphas, components))
    return MetricCombination(alphas, components, SymmetricMatrix.from_upper(total))


def truncated_metric(n_levels: int, a: float, alphas_prime) -> MetricCombination:
    """Theta_k = Theta_0 + sum_{j=1..k} alpha_j P_j with k = len(alphas_prime) <= 2."""
    alphas_prime = list(alphas_prime)
    builders = [p1, p2]
    if len(alphas_prime) > len(builders):
        raise ValueError("closed forms exist only up to the pentadiagonal pseudometric")
    comps = [theta0(n_levels, a)] + [builders[i](n_levels, a) for i in range(len(alphas_prime))]
    return assemble_metric(comps, [1.0] + alphas_prime)


def tridiagonal_metric(n_levels: int, a: float, g: float) -> MetricCombination:
    """Theta_1(g, a) = Theta_0 + g P_1; just Theta_0 when n_levels == 1."""
    if n_levels == 1:
        return assemble_metric([theta0(1, a)], [1.0])
    return truncated_metric(n_levels, a, [g])
