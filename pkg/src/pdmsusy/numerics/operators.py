"""Staggered-grid discretisation of the ladder operators and Hamiltonians."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..mass import MassProfile, mass_jet
from ..susy import OrderingParams, PotentialFamily, superpotential_w
from .grid import DiscretizationGrid


@dataclass(frozen=True)
class BidiagonalOperator:
    """(n-1) x n operator with row i acting on nodes (i, i+1); ``transposed`` flips it."""

    lo: np.ndarray
    hi: np.ndarray
    transposed: bool = False

    @property
    def shape(self) -> tuple[int, int]:
        rows, cols = len(self.lo), len(self.lo) + 1
        return (cols, rows) if self.transposed else (rows, cols)

    @property
    def T(self) -> "BidiagonalOperator":
        return BidiagonalOperator(self.lo, self.hi, not self.transposed)

    def matvec(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.shape[1],):
            raise ValueError(f"operator of shape {self.shape} cannot act on vector of length {v.shape}")
        if not self.transposed:
            return self.lo * v[:-1] + self.hi * v[1:]
        out = np.zeros(len(v) + 1)
        out[:-1] += self.lo * v
        out[1:] += self.hi * v
        return out

    def to_dense(self) -> np.ndarray:
        k = len(self.lo)
        a = np.zeros((k, k + 1))
        a[np.arange(k), np.arange(k)] = self.lo
        a[np.arange(k), np.arange(1, k + 1)] = self.hi
        return a.T if self.transposed else a


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Symmetric tridiagonal matrix."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if len(self.offdiag) != max(len(self.diag) - 1, 0):
            raise ValueError("offdiag must have length dim - 1")

    @property
    def dim(self) -> int:
        return len(self.diag)

    def matvec(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise ValueError(f"matrix of dim {self.dim} cannot act on vector of length {v.shape}")
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def norm(self) -> float:
        """Infinity norm (= 1-norm by symmetry)."""
        row = np.abs(self.diag).copy()
        row[:-1] += np.abs(self.offdiag)
        row[1:] += np.abs(self.offdiag)
        return float(row.max())

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def shifted(self, values) -> "TridiagonalMatrix":
        return TridiagonalMatrix(self.diag + np.asarray(values, dtype=float), self.offdiag)


def apply_operator(op, vector) -> np.ndarray:
    """Matrix-vector product for the structured operators above."""
    return op.matvec(vector)


def ladder_matrices(
    family: PotentialFamily,
    mass: MassProfile,
    ordering: OrderingParams,
    grid: DiscretizationGrid,
) -> tuple[BidiagonalOperator, BidiagonalOperator]:
    """Discrete A- on the staggered grid and A+ as its exact transpose."""
    eps = ordering.epsilon
    h = grid.h
    m_nodes = mass_jet(mass, grid.nodes, 0).value
    mids = grid.midpoints
    m_mid = mass_jet(mass, mids, 0).value
    w_mid = superpotential_w(family, mass, ordering, mids).value

    f = m_nodes ** (-(eps + 1) / 2)
    g = m_mid ** (eps / 2) / (math.sqrt(2) * h)
    w = w_mid / np.sqrt(2 * m_mid)
    lo = -g * f[:-1] + 0.5 * w
    hi = g * f[1:] + 0.5 * w
    a_minus = BidiagonalOperator(lo, hi)
    return a_minus, a_minus.T


def hamiltonians_factorized(
    a_minus: BidiagonalOperator, a_plus: BidiagonalOperator
) -> tuple[TridiagonalMatrix, TridiagonalMatrix]:
    """H- = A+A- (n x n) and H+ = A-A+ ((n-1) x (n-1))."""
    same = np.array_equal(a_plus.lo, a_minus.lo) and np.array_equal(a_plus.hi, a_minus.hi)
    if a_minus.transposed or not a_plus.transposed or not same:
        raise ValueError("a_plus must be the transpose of a_minus")
    lo, hi = a_minus.lo, a_minus.hi
    d_minus = np.zeros(len(lo) + 1)
    d_minus[:-1] += lo * lo
    d_minus[1:] += hi * hi
    h_minus = TridiagonalMatrix(d_minus, lo * hi)
    h_plus = TridiagonalMatrix(lo * lo + hi * hi, hi[:-1] * lo[1:])
    return h_minus, h_plus


def sandwich_kinetic(outer: np.ndarray, inner_links: np.ndarray, h: float) -> TridiagonalMatrix:
    """½ F Dᵀ G D F for diagonal F (nodes) and G (all n+1 link midpoints), Dirichlet ends."""
    n = len(outer)
    g = inner_links / (h * h)
    diag = 0.5 * outer * outer * (g[:-1] + g[1:])
    off = -0.5 * outer[:-1] * outer[1:] * g[1:n]
    return TridiagonalMatrix(diag, off)


def hamiltonian_direct(
    mass: MassProfile,
    ordering: OrderingParams,
    potential,
    grid: DiscretizationGrid,
) -> TridiagonalMatrix:
    """-½ f d/dx(g d/dx(f psi)) + V psi with f = m^-(eps+1)/2, g = m^eps.

    eps = -1 gives ½ p (1/m) p; eps = 0 gives ½ m^-½ p² m^-½.
    """
    eps = ordering.epsilon
    f = mass_jet(mass, grid.nodes, 0).value ** (-(eps + 1) / 2)
    g = mass_jet(mass, grid.link_midpoints, 0).value ** eps
    return sandwich_kinetic(f, g, grid.h).shifted(np.asarray(potential, dtype=float))


def hamiltonian_direct_plus(
    mass: MassProfile,
    ordering: OrderingParams,
    potential,
    grid: DiscretizationGrid,
) -> TridiagonalMatrix:
    """-½ m^(eps/2) d/dx(m^-(eps+1) d/dx(m^(eps/2) psi)) + V psi, the kinetic form of A-A+."""
    eps = ordering.epsilon
    f = mass_jet(mass, grid.nodes, 0).value ** (eps / 2)
    g = mass_jet(mass, grid.link_midpoints, 0).value ** (-(eps + 1))
    return sandwich_kinetic(f, g, grid.h).shifted(np.asarray(potential, dtype=float))


def symmetrized_inverse_mass_operator(
    mass: MassProfile, ordering: OrderingParams, potential, grid: DiscretizationGrid
) -> TridiagonalMatrix:
    """¼[(1/m) p² + p² (1/m)] + (eps-1)²m'²/(8m³) + eps m''/(4m²) + V with 3-point p².

    Algebraically identical to :func:`hamiltonian_direct` in the continuum; the
    two discretisations differ at O(h²).
    """
    eps = ordering.epsilon
    m = mass_jet(mass, grid.nodes, 2)
    m0, m1, m2 = m.value, m.d1, m.d2
    inv = 1.0 / m0
    h2 = grid.h**2
    # (1/m) L + L (1/m), L = -d²/dx²; the sum is symmetric
    diag = 0.25 * (2.0 * inv / h2 + 2.0 * inv / h2)
    off = 0.25 * (-inv[:-1] / h2 - inv[1:] / h2)
    extra = (eps - 1) ** 2 / 8.0 * m1**2 / m0**3 + eps * m2 / (4.0 * m0**2)
    return TridiagonalMatrix(diag + extra + np.asarray(potential, dtype=float), off)
