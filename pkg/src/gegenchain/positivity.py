"""Positivity domains of the tridiagonal metric family Theta_1(g) = Theta_0 + g P_1."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gegenbauer import check_a
from .metrics import MetricCombination, p1, theta0, tridiagonal_metric
from .numerics import Inertia, inertia_of, jacobi_eigh


class NoBoundaryError(RuntimeError):
    def __init__(self, n_levels: int, max_negatives: int, g_cap: float):
        super().__init__(
            f"Theta_1 at N={n_levels} never has more than {max_negatives} negative "
            f"eigenvalues for |g| <= {g_cap:g}"
        )
        self.g_cap = g_cap


class NonMonotoneInertiaError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class EigenCurve:
    n_levels: int
    a: float
    g_samples: np.ndarray
    eigenvalue_tracks: np.ndarray  # shape (samples, N), ascending per row


@dataclass(frozen=True)
class PositivityRecord:
    n_levels: int
    a: float
    g_boundary: float
    g_prime: float | None
    g_double_prime: float | None
    precision: float


class _Theta1:
    """Theta_0 and P_1 held densely so Theta_1(g) is a cheap axpy."""

    def __init__(self, n_levels: int, a: float):
        self.n = n_levels
        self.base = theta0(n_levels, a).dense()
        self.pert = p1(n_levels, a).dense() if n_levels > 1 else np.zeros((1, 1))

    def __call__(self, g: float) -> np.ndarray:
        return self.base + g * self.pert

    def negatives(self, g: float) -> int:
        # strict sign count: the crossing eigenvalue can be far below 1e-10 |Theta|
        return inertia_of(self(g), tol=0.0).negatives


def eigencurves(n_levels: int, a: float, g_min: float = -1.2, g_max: float = 1.2, samples: int = 241) -> EigenCurve:
    """Sorted eigenvalues of Theta_1(g) on a uniform grid of g."""
    if samples < 2:
        raise ValueError("samples must be >= 2")
    a = check_a(a)
    fam = _Theta1(n_levels, a)
    g = np.linspace(g_min, g_max, samples)
    tracks = np.array([jacobi_eigh(fam(x))[0] for x in g])
    return EigenCurve(n_levels, a, g, tracks)


def negative_count_profile(n_levels: int, a: float, g_values) -> np.ndarray:
    fam = _Theta1(n_levels, check_a(a))
    return np.array([fam.negatives(float(g)) for g in g_values])


def boundary(
    n_levels: int,
    a: float,
    max_negatives: int = 0,
    tol: float = 1e-9,
    g_cap: float = 10.0,
    g_cap_limit: float = 1e4,
    scan_points: int = 200,
) -> float:
    """Smallest g >= 0 at which Theta_1(g) has more than ``max_negatives``
    negative eigenvalues, to absolute accuracy ``tol``.

    The interval [0, g_cap] is scanned on a uniform grid (checking that the
    negative count never decreases), then the first cell where the count
    exceeds ``max_negatives`` is bisected.  g_cap doubles up to g_cap_limit.
    By the g -> -g symmetry the same value bounds the negative side.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_negatives not in (0, 1, 2):
        raise ValueError("max_negatives must be 0, 1 or 2")
    a = check_a(a)
    if n_levels < 2:
        raise NoBoundaryError(n_levels, max_negatives, math.inf)
    fam = _Theta1(n_levels, a)

    lo_g, lo_count = 0.0, fam.negatives(0.0)
    cap = g_cap
    while True:
        grid = np.linspace(lo_g, cap, scan_points + 1)[1:]
        hi_g = None
        for g in grid:
            count = fam.negatives(float(g))
            if count < lo_count:
                raise NonMonotoneInertiaError(
                    f"negative count dropped from {lo_count} to {count} between "
                    f"g={lo_g:.6g} and g={g:.6g} (N={n_levels}, a={a})"
                )
            if count > max_negatives:
                hi_g = float(g)
                break
            lo_g, lo_count = float(g), count
        if hi_g is not None:
            break
        if cap >= g_cap_limit:
            raise NoBoundaryError(n_levels, max_negatives, cap)
        cap = min(2 * cap, g_cap_limit)

    lo, hi = lo_g, hi_g
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fam.negatives(mid) > max_negatives:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def positivity_record(n_levels: int, a: float, tol: float = 1e-9) -> PositivityRecord:
    """G, G' and G'' for one (N, a); G is infinite at N = 1, absent G'/G'' are None."""
    a = check_a(a)
    if n_levels == 1:
        return PositivityRecord(1, a, math.inf, None, None, tol)
    values = []
    for m in (0, 1, 2):
        try:
            values.append(boundary(n_levels, a, m, tol))
        except NoBoundaryError:
            values.append(None)
    g0, g1, g2 = values
    return PositivityRecord(n_levels, a, g0, g1, g2, tol)


def analytic_2x2_boundary(a: float, parametrization: str = "b") -> float:
    """Edge of the positivity interval of the 2x2 metric [[2a^2, ab], [ab, a+1]].

    ``"b"`` gives sqrt(2a+2); ``"g"`` gives the same edge in g = b/2.
    """
    a = check_a(a)
    b = math.sqrt(2 * a + 2)
    if parametrization == "b":
        return b
    if parametrization == "g":
        return b / 2
    raise ValueError("parametrization must be 'b' or 'g'")


def is_positive_metric(m: MetricCombination, tol: float | None = None) -> tuple[bool, Inertia]:
    inert = inertia_of(m.assembled, tol)
    return inert.negatives == 0 and inert.zeros == 0, inert


def theta1(n_levels: int, a: float, g: float) -> MetricCombination:
    return tridiagonal_metric(n_levels, a, g)
