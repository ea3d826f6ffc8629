"""Supersymmetric factorisation of position-dependent-mass Schrödinger operators.

Submodules: :mod:`~pdmsusy.mass` (mass profiles and the u-map),
:mod:`~pdmsusy.susy` (superpotentials, partner potentials, spectra),
:mod:`~pdmsusy.numerics` (staggered discretisation and eigensolver),
:mod:`~pdmsusy.verify` (named checks) and :mod:`~pdmsusy.cli`.
"""

from .errors import (
    ConfigError,
    DomainError,
    IntegrationError,
    NoBoundStateError,
    NumericalFailure,
    PDMError,
    SingularityError,
)
from .jets import Jet, Jet2
from .mass import ConstantMass, CustomMass, RationalDelta, mass_eval, u_of_x
from .susy import Coulomb, HarmonicOscillator, Morse, OrderingParams

__version__ = "0.1.0"
