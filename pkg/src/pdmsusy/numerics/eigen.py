"""Lowest eigenpairs of a symmetric tridiagonal matrix.

Eigenvalues come from bisection on the Sturm count (the number of negative
pivots of the LDLᵀ factorisation of T - sigma I); eigenvectors from inverse
iteration on a pivoted tridiagonal LU factorisation.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from ..errors import NumericalFailure
from .operators import TridiagonalMatrix

_EPS = np.finfo(float).eps
_SAFMIN = np.finfo(float).tiny
MAX_INVERSE_ITERATIONS = 50


@dataclass(frozen=True)
class EigenSolution:
    """Ascending eigenvalues and eigenvectors (rows) with sum(psi² h) = 1."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    spacing: float = 1.0


def sturm_count(diag, off_sq, sigma: float, pivmin: float) -> int:
    """Number of eigenvalues strictly below ``sigma``."""
    count = 0
    q = diag[0] - sigma
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, len(diag)):
        q = diag[i] - sigma - off_sq[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def gershgorin_bounds(matrix: TridiagonalMatrix) -> tuple[float, float]:
    d = matrix.diag
    r = np.zeros_like(d)
    r[:-1] += np.abs(matrix.offdiag)
    r[1:] += np.abs(matrix.offdiag)
    return float(np.min(d - r)), float(np.max(d + r))


# entries outside this range are rescaled first so that squared couplings
# neither underflow nor overflow in the Sturm recurrence
_RMIN = math.sqrt(float(_SAFMIN) / float(_EPS))
_RMAX = 1.0 / _RMIN


def _safe_scale(matrix: TridiagonalMatrix) -> tuple[TridiagonalMatrix, float]:
    norm = matrix.norm()
    if norm == 0.0 or _RMIN <= norm <= _RMAX:
        return matrix, 1.0
    return TridiagonalMatrix(matrix.diag / norm, matrix.offdiag / norm), norm


def lowest_eigenvalues(matrix: TridiagonalMatrix, k: int) -> np.ndarray:
    """The ``k`` smallest eigenvalues by Sturm-sequence bisection."""
    n = matrix.dim
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got {k}")
    matrix, factor = _safe_scale(matrix)
    if factor != 1.0:
        return lowest_eigenvalues(matrix, k) * factor
    diag = matrix.diag.tolist()
    off_sq = (matrix.offdiag**2).tolist()
    pivmin = _SAFMIN * max(1.0, max(off_sq, default=0.0))
    lo, hi = gershgorin_bounds(matrix)
    tnorm = max(abs(lo), abs(hi))
    pad = 2.0 * _EPS * tnorm * n + 2.0 * pivmin
    lo, hi = lo - pad, hi + pad
    abstol = 2.0 * _EPS * tnorm

    # sorted probe points with their counts; counts are monotone in sigma
    sigmas = [lo, hi]
    counts = [0, n]
    out = np.empty(k)
    for j in range(k):
        # tightest bracket with count(left) <= j < count(right)
        idx = bisect.bisect_right(counts, j)
        left, right = sigmas[idx - 1], sigmas[idx]
        while right - left > max(abstol, 2.0 * _EPS * max(abs(left), abs(right))):
            mid = 0.5 * (left + right)
            if mid <= left or mid >= right:
                break
            c = sturm_count(diag, off_sq, mid, pivmin)
            pos = bisect.bisect_left(sigmas, mid)
            sigmas.insert(pos, mid)
            counts.insert(pos, c)
            if c <= j:
                left = mid
            else:
                right = mid
        out[j] = 0.5 * (left + right)
    return out


class _ShiftedLU:
    """LU factorisation with partial pivoting of T - lam I (LAPACK gttrf layout)."""

    def __init__(self, matrix: TridiagonalMatrix, lam: float, tiny: float):
        n = matrix.dim
        d = (matrix.diag - lam).tolist()
        dl = matrix.offdiag.tolist()
        du = matrix.offdiag.tolist()
        du2 = [0.0] * max(n - 2, 0)
        piv = [False] * max(n - 1, 0)
        def guard(v):
            # pivots this small would only amplify roundoff into overflow
            return v if abs(v) >= tiny else math.copysign(tiny, v)

        for i in range(n - 1):
            if abs(d[i]) >= abs(dl[i]):
                d[i] = guard(d[i])
                fact = dl[i] / d[i]
                dl[i] = fact
                d[i + 1] -= fact * du[i]
            else:
                fact = d[i] / dl[i]
                d[i] = guard(dl[i])
                dl[i] = fact
                temp = du[i]
                du[i] = d[i + 1]
                d[i + 1] = temp - fact * d[i + 1]
                if i < n - 2:
                    du2[i] = du[i + 1]
                    du[i + 1] = -fact * du[i + 1]
                piv[i] = True
        d[n - 1] = guard(d[n - 1])
        self.n, self.d, self.dl, self.du, self.du2, self.piv = n, d, dl, du, du2, piv

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        n, d, dl, du, du2, piv = self.n, self.d, self.dl, self.du, self.du2, self.piv
        b = rhs.tolist()
        for i in range(n - 1):
            if piv[i]:
                temp = b[i]
                b[i] = b[i + 1]
                b[i + 1] = temp - dl[i] * b[i]
            else:
                b[i + 1] -= dl[i] * b[i]
        b[n - 1] /= d[n - 1]
        if n > 1:
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2]
        for i in range(n - 3, -1, -1):
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i]
        return np.array(b)


def _inverse_iteration(matrix, lam, tnorm, previous, seed):
    n = matrix.dim
    lu = _ShiftedLU(matrix, lam, tiny=_EPS * tnorm + _SAFMIN)
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0, 1.0, n)
    x /= np.linalg.norm(x)
    tol = max(1e-8 * tnorm, 4.0 * _EPS * abs(lam), 4.0 * _SAFMIN)
    residual = math.inf
    extra = 0
    for _ in range(MAX_INVERSE_ITERATIONS):
        y = lu.solve(x)
        for v in previous:
            y -= np.dot(v, y) * v
        peak = np.max(np.abs(y))
        if not np.isfinite(peak) or peak == 0.0:
            break
        y = y / peak  # rescale first so the 2-norm cannot overflow
        x = y / np.linalg.norm(y)
        residual = float(np.linalg.norm(matrix.matvec(x) - lam * x))
        if residual <= tol:
            # a couple more sweeps to clean up the direction
            extra += 1
            if extra > 2:
                break
    if residual > tol:
        raise NumericalFailure(f"inverse iteration for eigenvalue {lam:.12g} did not converge", residual)
    return x, residual


def lowest_eigenpairs(matrix: TridiagonalMatrix, k: int, spacing: float = 1.0) -> EigenSolution:
    """The ``k`` lowest eigenpairs of a symmetric tridiagonal matrix.

    Eigenvectors are scaled so that ``sum(psi**2) * spacing == 1`` and signed so
    that their (first) largest-magnitude component is positive.
    """
    matrix, factor = _safe_scale(matrix)
    values = lowest_eigenvalues(matrix, k)
    lo, hi = gershgorin_bounds(matrix)
    tnorm = max(abs(lo), abs(hi), _SAFMIN)
    vectors, residuals = [], []
    shifted = values.copy()
    for j in range(k):
        if j and shifted[j] - shifted[j - 1] < 10.0 * _EPS * abs(shifted[j]):
            shifted[j] = shifted[j - 1] + 10.0 * _EPS * abs(shifted[j])
        # only a few low-lying vectors are wanted, so orthogonalising against all of
        # them is cheap and also covers clusters that a relative gap test would miss
        vec, res = _inverse_iteration(matrix, shifted[j], tnorm, vectors, seed=12345 + j)
        i = int(np.argmax(np.abs(vec)))
        if vec[i] < 0:
            vec = -vec
        vectors.append(vec)
        residuals.append(res)
    vecs = np.array(vectors) / math.sqrt(spacing)
    return EigenSolution(values * factor, vecs, np.array(residuals) * factor, spacing)
