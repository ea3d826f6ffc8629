"""Staggered finite-difference discretisation and the tridiagonal eigensolver."""

from __future__ import annotations

from dataclasses import dataclass

from ..mass import MassProfile
from ..susy import OrderingParams, PotentialFamily
from .eigen import EigenSolution, lowest_eigenpairs, lowest_eigenvalues, sturm_count
from .grid import DiscretizationGrid, build_grid
from .operators import (
    BidiagonalOperator,
    TridiagonalMatrix,
    apply_operator,
    hamiltonian_direct,
    hamiltonian_direct_plus,
    hamiltonians_factorized,
    ladder_matrices,
    symmetrized_inverse_mass_operator,
)


@dataclass(frozen=True)
class DiscreteSystem:
    """Grid, ladder operators and factorised partner Hamiltonians for one configuration."""

    family: PotentialFamily
    mass: MassProfile
    ordering: OrderingParams
    grid: DiscretizationGrid
    a_minus: BidiagonalOperator
    a_plus: BidiagonalOperator
    h_minus: TridiagonalMatrix
    h_plus: TridiagonalMatrix

    def spectrum(self, k: int) -> EigenSolution:
        return lowest_eigenpairs(self.h_minus, k, self.grid.h)

    def partner_spectrum(self, k: int) -> EigenSolution:
        return lowest_eigenpairs(self.h_plus, k, self.grid.h)


def build_system(
    family: PotentialFamily,
    mass: MassProfile,
    ordering: OrderingParams,
    grid: DiscretizationGrid,
) -> DiscreteSystem:
    a_minus, a_plus = ladder_matrices(family, mass, ordering, grid)
    h_minus, h_plus = hamiltonians_factorized(a_minus, a_plus)
    return DiscreteSystem(family, mass, ordering, grid, a_minus, a_plus, h_minus, h_plus)


__all__ = [
    "BidiagonalOperator",
    "DiscreteSystem",
    "DiscretizationGrid",
    "EigenSolution",
    "TridiagonalMatrix",
    "apply_operator",
    "build_grid",
    "build_system",
    "hamiltonian_direct",
    "hamiltonian_direct_plus",
    "hamiltonians_factorized",
    "ladder_matrices",
    "lowest_eigenpairs",
    "lowest_eigenvalues",
    "sturm_count",
    "symmetrized_inverse_mass_operator",
]
