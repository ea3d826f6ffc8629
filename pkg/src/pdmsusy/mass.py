"""Position-dependent mass profiles and the coordinate map u(x) = ∫ sqrt(m) dx."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import jets
from .errors import DomainError
from .jets import Jet
from .quadrature import adaptive_simpson

#: Highest derivative order the superpotential code asks a profile for.
MASS_ORDER = 3


@dataclass(frozen=True)
class RationalDelta:
    """m(x) = ((delta + x²)/(1 + x²))², which tends to 1 far away and equals delta² at 0."""

    delta: float

    def __post_init__(self):
        if not (self.delta > 0 and np.isfinite(self.delta)):
            raise DomainError(f"delta must be positive and finite, got {self.delta}")

    def sqrt_jet(self, x, order: int = 2) -> Jet:
        t = Jet.variable(x, order)
        t2 = t * t
        return (self.delta + t2) / (1.0 + t2)

    def jet(self, x, order: int = 2) -> Jet:
        s = self.sqrt_jet(x, order)
        return s * s

    def u(self, x):
        x = np.asarray(x, dtype=float)
        return x + (self.delta - 1.0) * np.arctan(x)


@dataclass(frozen=True)
class ConstantMass:
    m0: float = 1.0

    def __post_init__(self):
        if not (self.m0 > 0 and np.isfinite(self.m0)):
            raise DomainError(f"constant mass must be positive, got {self.m0}")

    def sqrt_jet(self, x, order: int = 2) -> Jet:
        return Jet.constant(np.full(np.shape(x), np.sqrt(self.m0)), order)

    def jet(self, x, order: int = 2) -> Jet:
        return Jet.constant(np.full(np.shape(x), self.m0), order)

    def u(self, x):
        return np.sqrt(self.m0) * np.asarray(x, dtype=float)


@dataclass(frozen=True)
class CustomMass:
    """User-supplied profile.

    ``func`` receives the expansion point as a :class:`~pdmsusy.jets.Jet`
    variable and must return a Jet for m, built with jet arithmetic so that the
    derivatives are exact.  It must be strictly positive.
    """

    func: Callable[[Jet], Jet]
    name: str = "custom"

    def jet(self, x, order: int = 2) -> Jet:
        out = self.func(Jet.variable(x, order))
        if not isinstance(out, Jet):
            raise DomainError("custom mass callable must return a Jet carrying derivatives")
        return out

    def sqrt_jet(self, x, order: int = 2) -> Jet:
        return jets.sqrt(_checked(self, self.jet(x, order)))

    def u(self, x):
        x = np.asarray(x, dtype=float)
        return np.vectorize(lambda t: u_quadrature(self, float(t)), otypes=[float])(x)


MassProfile = Union[RationalDelta, ConstantMass, CustomMass]


def _checked(profile, m: Jet) -> Jet:
    if not np.all(m.value > 0):
        raise DomainError(f"{profile!r} produced a non-positive mass")
    return m


def mass_jet(profile: MassProfile, x, order: int = 2) -> Jet:
    """m, m', m'', ... at ``x`` as a jet of the given order."""
    return _checked(profile, profile.jet(x, order))


def mass_eval(profile: MassProfile, x) -> Jet:
    """(m, m', m'') at ``x``."""
    return mass_jet(profile, x, 2)


def sqrt_mass_jet(profile: MassProfile, x, order: int = 2) -> Jet:
    return profile.sqrt_jet(x, order)


def u_of_x(profile: MassProfile, x):
    """The monotone coordinate u(x) = ∫_0^x sqrt(m(t)) dt."""
    return profile.u(x)


def u_quadrature(profile: MassProfile, x: float, tol: float = 1e-12) -> float:
    """u(x) by adaptive Simpson integration of sqrt(m) from 0."""
    def integrand(t: float) -> float:
        return float(sqrt_mass_jet(profile, t, 0).value)

    value, _ = adaptive_simpson(integrand, 0.0, float(x), tol=tol, max_depth=60)
    return value


def u_jet(profile: MassProfile, x, order: int = 2) -> Jet:
    """u(x) with derivatives; u' = sqrt(m)."""
    return sqrt_mass_jet(profile, x, order - 1).integral(u_of_x(profile, x))


def inverse_u(profile: MassProfile, u_target: float, x_guess: float = 1.0) -> float:
    """Solve u(x) = u_target for x (u is strictly increasing)."""
    from scipy.optimize import brentq

    lo, hi = -abs(x_guess) - 1.0, abs(x_guess) + 1.0
    while float(u_of_x(profile, lo)) > u_target:
        lo *= 2.0
    while float(u_of_x(profile, hi)) < u_target:
        hi *= 2.0
    return brentq(lambda t: float(u_of_x(profile, t)) - u_target, lo, hi, xtol=1e-14, rtol=1e-14)
