"""Small dense linear-algebra backbone.

Cyclic Jacobi eigensolver for symmetric matrices, Sturm-sequence bisection
for symmetric tridiagonals, Bunch-Kaufman LDL^T inertia counting and an
orthonormal nullspace with deterministic ordering.  Everything works on
binary64 numpy arrays and is meant for the small matrices (n <= ~200) that
appear in this package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = np.finfo(float).eps


class NonConvergenceError(RuntimeError):
    """Raised when an iterative eigensolver hits its iteration cap."""

    def __init__(self, iterations: int, off_norm: float):
        super().__init__(
            f"Jacobi iteration did not converge after {iterations} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )
        self.iterations = iterations
        self.off_norm = off_norm


class FactorizationBreakdown(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Real symmetric matrix stored as its packed upper triangle.

    Symmetry is structural: ``entry(i, j)`` and ``entry(j, i)`` read the
    same storage slot.
    """

    n: int
    packed: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be at least 1")
        if self.packed.shape != (self.n * (self.n + 1) // 2,):
            raise ValueError("packed storage has the wrong length")

    @classmethod
    def from_upper(cls, a) -> "SymmetricMatrix":
        """Build from the upper triangle of ``a``; the lower triangle is ignored."""
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        iu = np.triu_indices(a.shape[0])
        return cls(a.shape[0], a[iu].copy())

    @classmethod
    def from_dense(cls, a, rtol: float = 1e-12) -> "SymmetricMatrix":
        """Build from a dense matrix that must already be symmetric to ``rtol``."""
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        scale = max(np.abs(a).max(initial=0.0), np.finfo(float).tiny)
        if np.abs(a - a.T).max(initial=0.0) > rtol * scale:
            raise ValueError("matrix is not symmetric")
        return cls.from_upper(a)

    @classmethod
    def identity(cls, n: int) -> "SymmetricMatrix":
        return cls.from_upper(np.eye(n))

    def _slot(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if not (0 <= i and j < self.n):
            raise IndexError((i, j))
        return i * self.n - i * (i - 1) // 2 + (j - i)

    def entry(self, i: int, j: int) -> float:
        return float(self.packed[self._slot(i, j)])

    def dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        iu = np.triu_indices(self.n)
        out[iu] = self.packed
        out.T[iu] = self.packed
        return out

    def norm_inf(self) -> float:
        return float(np.abs(self.dense()).sum(axis=1).max())

    def __add__(self, other: "SymmetricMatrix") -> "SymmetricMatrix":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return SymmetricMatrix(self.n, self.packed + other.packed)

    def __mul__(self, c: float) -> "SymmetricMatrix":
        return SymmetricMatrix(self.n, float(c) * self.packed)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Inertia:
    negatives: int
    zeros: int
    positives: int
    tol: float

    @property
    def n(self) -> int:
        return self.negatives + self.zeros + self.positives


def as_array(m) -> np.ndarray:
    if isinstance(m, SymmetricMatrix):
        return m.dense()
    if hasattr(m, "dense"):
        return m.dense()
    return np.asarray(m, dtype=float)


def norm_inf(a) -> float:
    a = as_array(a)
    if a.ndim == 1:
        return float(np.abs(a).max(initial=0.0))
    return float(np.abs(a).sum(axis=1).max(initial=0.0))


def _check_square_finite(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")


# --------------------------------------------------------------------------
# eigenvalues


def jacobi_eigh(m, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with ascending eigenvalues ``w`` and orthonormal
    eigenvectors in the columns of ``v``.  Only the upper triangle of a
    dense input is read.
    """
    a = as_array(m)
    _check_square_finite(a)
    a = np.triu(a) + np.triu(a, 1).T
    n = a.shape[0]
    v = np.eye(n)
    fro = np.sqrt((a * a).sum())
    # rotations below this size cannot move any eigenvalue by more than rounding
    tiny = 1e-3 * EPS * fro + np.finfo(float).tiny

    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= tiny or abs(apq) <= EPS * np.sqrt(abs(a[p, p] * a[q, q])):
                    a[p, q] = a[q, p] = 0.0
                    continue
                rotated = True
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        if not rotated:
            w = np.diag(a).copy()
            order = np.argsort(w, kind="stable")
            return w[order], v[:, order]
    off = np.sqrt(max((a * a).sum() - (np.diag(a) ** 2).sum(), 0.0))
    raise NonConvergenceError(max_sweeps, off)


def eig_symmetric(m, max_sweeps: int = 60) -> list[tuple[float, np.ndarray]]:
    """Eigenpairs of a symmetric matrix, ascending by eigenvalue."""
    w, v = jacobi_eigh(m, max_sweeps)
    return [(float(w[i]), v[:, i].copy()) for i in range(len(w))]


def sturm_count(diag, off, x: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal (diag, off) below ``x``."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    scale = max(np.abs(diag).max(initial=0.0), np.abs(off).max(initial=0.0), 1.0)
    pivmin = np.finfo(float).tiny / EPS * scale
    count = 0
    d = diag[0] - x
    if abs(d) < pivmin:
        d = -pivmin
    if d < 0:
        count += 1
    for i in range(1, len(diag)):
        d = (diag[i] - x) - off[i - 1] ** 2 / d
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0:
            count += 1
    return count


def tridiagonal_eigvalsh(diag, off, tol: float | None = None) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix by Sturm bisection."""
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = len(diag)
    if len(off) != n - 1:
        raise ValueError("off-diagonal must have length n-1")
    if n == 1:
        return diag.copy()
    r = np.zeros(n)
    r[:-1] += np.abs(off)
    r[1:] += np.abs(off)
    lo = float((diag - r).min())
    hi = float((diag + r).max())
    width = max(hi - lo, abs(lo), abs(hi), 1.0)
    if tol is None:
        tol = 4 * EPS * width
    out = np.empty(n)
    for k in range(n):
        a, b = lo, hi
        while b - a > tol:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if sturm_count(diag, off, mid) > k:
                b = mid
            else:
                a = mid
        out[k] = 0.5 * (a + b)
    return out


# --------------------------------------------------------------------------
# inertia


def _bunch_kaufman_pivots(a: np.ndarray) -> list:
    """Diagonal blocks (floats or 2x2 arrays) of a Bunch-Kaufman LDL^T."""
    a = a.copy()
    n = a.shape[0]
    alpha = (1.0 + np.sqrt(17.0)) / 8.0
    blocks: list = []
    k = 0
    while k < n:
        akk = abs(a[k, k])
        if k + 1 < n:
            col = np.abs(a[k + 1 :, k])
            imax = k + 1 + int(col.argmax())
            colmax = float(col.max())
        else:
            imax, colmax = k, 0.0
        step = 1
        if max(akk, colmax) == 0.0:
            blocks.append(0.0)
            k += 1
            continue
        if akk < alpha * colmax:
            row = np.abs(a[imax, k:])
            row[imax - k] = 0.0
            rowmax = float(row.max())
            if akk * rowmax >= alpha * colmax * colmax:
                pass
            elif abs(a[imax, imax]) >= alpha * rowmax:
                _swap(a, k, imax)
            else:
                _swap(a, k + 1, imax)
                step = 2
        if step == 1:
            d = a[k, k]
            w = a[k + 1 :, k].copy()
            a[k + 1 :, k + 1 :] -= np.outer(w, w) / d
            blocks.append(float(d))
        else:
            d = a[k : k + 2, k : k + 2].copy()
            w = a[k + 2 :, k : k + 2].copy()
            det = d[0, 0] * d[1, 1] - d[0, 1] * d[1, 0]
            if det == 0.0:
                raise FactorizationBreakdown("singular 2x2 pivot block")
            dinv = np.array([[d[1, 1], -d[0, 1]], [-d[1, 0], d[0, 0]]]) / det
            a[k + 2 :, k + 2 :] -= w @ dinv @ w.T
            blocks.append(d)
        k += step
    return blocks


def _swap(a: np.ndarray, i: int, j: int) -> None:
    if i == j:
        return
    a[[i, j], :] = a[[j, i], :]
    a[:, [i, j]] = a[:, [j, i]]


def default_tol(a) -> float:
    return 1e-10 * norm_inf(a)


def inertia_of(m, tol: float | None = None, method: str = "ldl") -> Inertia:
    """Count negative, zero and positive eigenvalues of a symmetric matrix.

    ``method="ldl"`` uses Sylvester's law of inertia on a Bunch-Kaufman
    factorization and falls back to the eigendecomposition whenever a pivot
    is within ``tol`` of zero (the only case where pivot signs and the
    thresholded eigenvalue signs may disagree).
    """
    a = as_array(m)
    _check_square_finite(a)
    if tol is None:
        tol = default_tol(a)
    if tol < 0:
        raise ValueError("tol must be non-negative")
    if method == "ldl":
        try:
            blocks = _bunch_kaufman_pivots(a)
        except FactorizationBreakdown:
            blocks = None
        if blocks is not None:
            neg = pos = 0
            ok = True
            for b in blocks:
                if isinstance(b, float):
                    if abs(b) <= tol:
                        ok = False
                        break
                    neg += b < 0
                    pos += b > 0
                else:
                    # 2x2 Bunch-Kaufman blocks are indefinite: one eigenvalue of each sign
                    ev = np.linalg.eigvalsh(b)
                    if np.abs(ev).min() <= tol:
                        ok = False
                        break
                    neg += int((ev < 0).sum())
                    pos += int((ev > 0).sum())
            if ok:
                return Inertia(neg, 0, pos, tol)
        method = "eig"
    if method != "eig":
        raise ValueError(f"unknown method {method!r}")
    w, _ = jacobi_eigh(a)
    return Inertia(int((w < -tol).sum()), int((np.abs(w) <= tol).sum()), int((w > tol).sum()), tol)


# --------------------------------------------------------------------------
# nullspace


def nullspace(a, tol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormal basis of the (numerical) nullspace of a real matrix.

    A vector counts as null when ``|a x| <= tol * |a| * |x|`` in the 2-norm.
    The basis is ordered by the pivot columns of the reduced row-echelon form
    of the null vectors, and each vector has a positive entry at its pivot, so
    the output is reproducible across platforms.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    ncols = a.shape[1]
    if a.size == 0 or not np.any(a):
        return [e for e in np.eye(ncols)]
    _, s, vt = np.linalg.svd(a)
    rank = int((s > tol * s[0]).sum())
    z = vt[rank:]
    if len(z) == 0:
        return []
    r, pivots = _rref(z)
    q, _ = np.linalg.qr(r.T)
    out = []
    for i, p in enumerate(pivots):
        v = q[:, i]
        if v[p] < 0:
            v = -v
        out.append(v)
    return out


def _rref(z: np.ndarray, tol: float = 1e-12) -> tuple[np.ndarray, list[int]]:
    z = z.copy()
    rows, cols = z.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = r + int(np.abs(z[r:, c]).argmax())
        if abs(z[i, c]) <= tol:
            continue
        z[[r, i]] = z[[i, r]]
        z[r] /= z[r, c]
        for k in range(rows):
            if k != r:
                z[k] -= z[k, c] * z[r]
        pivots.append(c)
        r += 1
    return z[:r], pivots


def solve(a, b) -> np.ndarray:
    """Dense linear solve with a finite-input check."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("non-finite input")
    return np.linalg.solve(a, b)
