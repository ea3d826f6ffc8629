"""Superpotentials, partner potentials and spectra for shape-invariant families.

Everything here is a pointwise formula evaluated with :mod:`pdmsusy.jets`, so
derivatives of m and W are exact.  ``x`` may be a scalar or an array.

The position-dependent-mass superpotential of each family has the form

    W(x) = sqrt(m) * Phi(u(x)) + (2 eps + 1) m' / (4 m)

where ``Phi`` is the constant-mass superpotential written in the variable
``u = ∫ sqrt(m) dx``.  The ladder operators

    A- = (1/√2) m^(eps/2) d/dx m^(-(eps+1)/2) + W/√(2m),   A+ = (A-)^T

are then unitarily equivalent to the constant-mass pair (d/du ± Phi)/√2, which
is why the spectra do not depend on the mass profile or on ``eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, ClassVar, Union

import numpy as np

from . import jets
from .errors import DomainError, NoBoundStateError, SingularityError
from .jets import Jet
from .mass import MASS_ORDER, MassProfile, RationalDelta, mass_jet, sqrt_mass_jet, u_jet, u_of_x


@dataclass(frozen=True)
class OrderingParams:
    """von Roos exponents restricted to eta = rho = -(1 + epsilon)/2."""

    epsilon: float = 0.0
    eta: float = field(default=None)
    rho: float = field(default=None)

    def __post_init__(self):
        default = -(1.0 + self.epsilon) / 2.0
        if self.eta is None:
            object.__setattr__(self, "eta", default)
        if self.rho is None:
            object.__setattr__(self, "rho", default)
        if abs(self.eta + self.epsilon + self.rho + 1.0) > 1e-12:
            raise DomainError("ordering exponents must satisfy eta + epsilon + rho = -1")
        if abs(self.eta - self.rho) > 1e-12:
            raise DomainError("ordering requires eta == rho; use ordering_term_u for general exponents")


@dataclass(frozen=True)
class FamilyConstruction:
    """Data (q0, q1, q2, lambda1, lambda2, r(u)) generating a family superpotential.

    ``r`` maps a u-jet to a jet; the x-derivatives follow from the chain rule.
    """

    q0: float
    q1: float
    q2: float
    lambda1: float
    lambda2: float
    r: Callable[[Jet], Jet]


@dataclass(frozen=True)
class HarmonicOscillator:
    omega: float
    ell: int = 0

    name: ClassVar[str] = "ho"
    half_line: ClassVar[bool] = True

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError("omega must be positive")
        if int(self.ell) != self.ell or self.ell < 0:
            raise DomainError("ell must be a non-negative integer")

    def successor(self):
        return replace(self, ell=self.ell + 1)

    def phi(self, u):
        return self.omega * u - (self.ell + 1) / u

    def log_ground(self, u):
        return (self.ell + 1) * jets.log(u) - 0.5 * self.omega * u * u

    def energy(self, n: int) -> float:
        return 2.0 * n * self.omega

    def closed_form_v_minus(self, u):
        l, w = self.ell, self.omega
        return l * (l + 1) / (2.0 * u * u) + 0.5 * w * w * u * u - 0.5 * (2 * l + 3) * w

    def construction(self) -> FamilyConstruction:
        return FamilyConstruction(
            q0=0.0, q1=1.0, q2=0.0,
            lambda1=2.0 * self.omega, lambda2=-self.ell / 2.0 - 0.75,
            r=lambda u: 0.25 * u * u,
        )


@dataclass(frozen=True)
class Coulomb:
    q: float
    ell: int = 0

    name: ClassVar[str] = "coulomb"
    half_line: ClassVar[bool] = True

    def __post_init__(self):
        if not self.q > 0:
            raise DomainError("q must be positive")
        if int(self.ell) != self.ell or self.ell < 0:
            raise DomainError("ell must be a non-negative integer")

    def successor(self):
        return replace(self, ell=self.ell + 1)

    def phi(self, u):
        return self.q / (self.ell + 1) - (self.ell + 1) / u

    def log_ground(self, u):
        return (self.ell + 1) * jets.log(u) - self.q * u / (self.ell + 1)

    def energy(self, n: int, offset: int = 1) -> float:
        l = self.ell
        return 0.5 * self.q**2 * (1.0 / (l + 1) ** 2 - 1.0 / (l + n + offset) ** 2)

    def closed_form_v_minus(self, u):
        l, q = self.ell, self.q
        return l * (l + 1) / (2.0 * u * u) - q / u + q * q / (2.0 * (l + 1) ** 2)

    def construction(self) -> FamilyConstruction:
        return FamilyConstruction(
            q0=1.0, q1=0.0, q2=0.0,
            lambda1=self.q / (self.ell + 1), lambda2=-(self.ell + 1.0),
            r=lambda u: u,
        )


@dataclass(frozen=True)
class Morse:
    a: float
    b: float
    alpha: float

    name: ClassVar[str] = "morse"
    half_line: ClassVar[bool] = False

    def __post_init__(self):
        if not self.a < 0:
            raise DomainError("a must be negative")
        if not self.b > 0:
            raise DomainError("b must be positive")
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")

    @property
    def bound_state_count(self) -> int:
        # levels n with n < -a/alpha
        return int(math.ceil(-self.a / self.alpha))

    def successor(self):
        if self.a + self.alpha >= 0:
            raise NoBoundStateError(f"{self!r} has no successor with a bound ground state")
        return replace(self, a=self.a + self.alpha)

    def phi(self, u):
        return self.a + self.b * jets.exp(self.alpha * u)

    def log_ground(self, u):
        return -(self.a * u + (self.b / self.alpha) * jets.exp(self.alpha * u))

    def energy(self, n: int) -> float:
        if n >= self.bound_state_count:
            raise NoBoundStateError(
                f"Morse level {n} does not exist: need n < -a/alpha = {-self.a / self.alpha:g}"
            )
        return 0.5 * (self.a**2 - (self.a + n * self.alpha) ** 2)

    def closed_form_v_minus(self, u):
        a, b, al = self.a, self.b, self.alpha
        e = jets.exp(al * u)
        return 0.5 * b * (2 * a - al) * e + 0.5 * b * b * e * e + 0.5 * a * a

    def construction(self) -> FamilyConstruction:
        al = self.alpha
        return FamilyConstruction(
            q0=0.0, q1=0.0, q2=1.0 / al**2,
            lambda1=self.b / al, lambda2=self.a / al - 0.5,
            r=lambda u: jets.exp(al * u),
        )


PotentialFamily = Union[HarmonicOscillator, Coulomb, Morse]


@dataclass(frozen=True)
class PartnerPotentials:
    v_minus: np.ndarray
    v_plus: np.ndarray
    w: np.ndarray
    w_prime: np.ndarray
    v_m: np.ndarray


@dataclass(frozen=True)
class ShapeInvarianceResult:
    mean: float
    stdev: float
    residuals: np.ndarray


# --------------------------------------------------------------------------
# helpers


def _check_domain(family, x) -> None:
    if not family.half_line:
        return
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise SingularityError(f"{family.name} superpotential is singular at x = 0 (u = 0)")
    if np.any(x < 0):
        raise DomainError(f"{family.name} family lives on x > 0")


def _tail(mass: MassProfile, ordering: OrderingParams, x, order: int) -> Jet:
    m = mass_jet(mass, x, order)
    return (2.0 * ordering.epsilon + 1.0) / 4.0 * m.diff() / m.truncate(order - 1)


# --------------------------------------------------------------------------
# superpotentials


def superpotential_w(family: PotentialFamily, mass: MassProfile, ordering: OrderingParams, x) -> Jet:
    """Family superpotential W with exact derivatives (value, W', W'')."""
    _check_domain(family, x)
    s = sqrt_mass_jet(mass, x, MASS_ORDER)
    u = u_jet(mass, x, MASS_ORDER)
    return s * family.phi(u) + _tail(mass, ordering, x, MASS_ORDER)


def superpotential_from_construction(
    constr: FamilyConstruction, mass: MassProfile, ordering: OrderingParams, x
) -> Jet:
    """W = lambda1 r' + lambda2 r'/r + r''/(2 r') + eps m'/(2m), r taken as a function of x."""
    u = u_jet(mass, x, MASS_ORDER + 1)
    r0 = constr.r(u)
    r1 = r0.diff()
    if np.any(r1.value == 0):
        raise SingularityError("construction is singular where r'(x) = 0")
    m = mass_jet(mass, x, MASS_ORDER)
    return (
        constr.lambda1 * r1
        + constr.lambda2 * r1 / r0
        + r1.diff() / (2.0 * r1)
        + ordering.epsilon * m.diff() / (2.0 * m)
    )


def construction_residual(constr: FamilyConstruction, mass: MassProfile, x) -> np.ndarray:
    """|(q0 + q1/r + q2/r²) r'² - m| at each point."""
    r = constr.r(u_jet(mass, x, 1))
    r0, r1 = r.value, r.d1
    m = mass_jet(mass, x, 0).value
    lhs = (constr.q0 + constr.q1 / r0 + constr.q2 / r0**2) * r1**2
    return np.abs(lhs - m)


def constant_mass_phi(family: PotentialFamily, x) -> Jet:
    """Constant-mass superpotential Phi(x) with derivatives."""
    _check_domain(family, x)
    return family.phi(Jet.variable(x, 2))


def constant_mass_partners(family: PotentialFamily, x) -> tuple[np.ndarray, np.ndarray]:
    """(V-, V+) = (Phi² ∓ Phi')/2 for unit constant mass."""
    phi = constant_mass_phi(family, x)
    return 0.5 * (phi.value**2 - phi.d1), 0.5 * (phi.value**2 + phi.d1)


# --------------------------------------------------------------------------
# potentials


def mass_correction_vm(mass: MassProfile, ordering: OrderingParams, x) -> tuple[np.ndarray, np.ndarray]:
    """Mass-induced potential correction from the general and the rational-profile formulas.

    Returns ``(general, rational)``.  The general formula is exact; the
    rational-profile formula carries the opposite overall sign and is returned
    as printed for diagnostics only (``nan`` for non-rational profiles).
    """
    eps = ordering.epsilon
    m = mass_jet(mass, x, 2)
    m0, m1, m2 = m.value, m.d1, m.d2
    general = (eps * (2 - eps) + 1.25) * m1**2 / (8 * m0**3) - (eps + 0.5) * m2 / (4 * m0**2)
    x = np.asarray(x, dtype=float)
    if isinstance(mass, RationalDelta):
        d = mass.delta
        x2 = x * x
        rational = (
            (d - 1) * (2 * eps + 1) * (-d + (2 - 2 * eps + 2 * eps * d) * x2 + 3 * x2 * x2)
            / (2 * (d + x2) ** 4)
        )
    else:
        rational = np.full(np.shape(general), np.nan)
    return general, rational


def plus_offset_term(mass: MassProfile, ordering: OrderingParams, x) -> np.ndarray:
    """The additive term (2eps+1)(3m'² - 2 m m'')/(16 m³).

    It is often quoted as part of V+, but A-A+ has no such term when its
    kinetic part is written m^(eps/2) d/dx m^-(eps+1) d/dx m^(eps/2).  Exposed so
    verification can show the difference.
    """
    m = mass_jet(mass, x, 2)
    m0, m1, m2 = m.value, m.d1, m.d2
    return (2 * ordering.epsilon + 1) / (2 * m0) * (0.375 * m1**2 / m0**2 - 0.25 * m2 / m0)


def partner_potentials(
    family: PotentialFamily, mass: MassProfile, ordering: OrderingParams, x
) -> PartnerPotentials:
    """V- and V+ of H- = A+A- and H+ = A-A+.

    V- pairs with the kinetic operator -½ m^-(eps+1)/2 d/dx m^eps d/dx m^-(eps+1)/2,
    V+ with -½ m^(eps/2) d/dx m^-(eps+1) d/dx m^(eps/2).
    """
    eps = ordering.epsilon
    w = superpotential_w(family, mass, ordering, x)
    m = mass_jet(mass, x, 2)
    W, W1 = w.value, w.d1
    m0, lm = m.value, m.d1 / m.value
    v_minus = (W * W - W1 - eps * lm * W) / (2 * m0)
    v_plus = (W * W + W1 - (eps + 1) * lm * W) / (2 * m0)
    vm, _ = mass_correction_vm(mass, ordering, x)
    return PartnerPotentials(v_minus=v_minus, v_plus=v_plus, w=W, w_prime=W1, v_m=vm)


def closed_form_v_minus(family: PotentialFamily, mass: MassProfile, x, v_m) -> np.ndarray:
    """Closed-form V- in the u variable plus a supplied mass correction."""
    return family.closed_form_v_minus(u_of_x(mass, x)) + v_m


def ordering_term_u(mass: MassProfile, eta: float, epsilon: float, x) -> np.ndarray:
    """Multiplicative remainder U(x) of the general von Roos kinetic operator.

    With p = -i d/dx the von Roos operator equals
    -ψ''/(2m) + m'ψ'/(2m²) + U ψ (hbar = 1).
    """
    m = mass_jet(mass, x, 2)
    m0, m1, m2 = m.value, m.d1, m.d2
    c = epsilon + eta + epsilon * eta + eta * eta + 1.0
    return -(2.0 * c * m1**2 - (epsilon + 1.0) * m0 * m2) / (4.0 * m0**3)


# --------------------------------------------------------------------------
# shape invariance and spectra


def shape_invariance_residual(
    family: PotentialFamily,
    mass: MassProfile,
    ordering: OrderingParams,
    nodes,
    successor: PotentialFamily | None = None,
) -> ShapeInvarianceResult:
    """Evaluate A-(a0)A+(a0) - A+(a1)A-(a1), which is a pure function of x.

    For a shape-invariant family the values are constant and equal R(a0).
    """
    succ = family.successor() if successor is None else successor
    eps = ordering.epsilon
    nodes = np.asarray(nodes, dtype=float)
    w0 = superpotential_w(family, mass, ordering, nodes)
    w1 = superpotential_w(succ, mass, ordering, nodes)
    m = mass_jet(mass, nodes, 2)
    m0, m1, m2 = m.value, m.d1, m.d2
    res = (
        (w0.value**2 - w1.value**2 + w0.d1 + w1.d1) / (2 * m0)
        - m1 / (2 * m0**2) * ((1 + eps) * w0.value - eps * w1.value)
        + (1 + 2 * eps) / (8 * m0**3) * (3 * m1**2 - 2 * m0 * m2)
    )
    return ShapeInvarianceResult(mean=float(np.mean(res)), stdev=float(np.std(res)), residuals=res)


def analytic_spectrum(family: PotentialFamily, n: int, coulomb_offset: int = 1) -> float:
    """Closed-form level E_n; E_0 = 0 for every family.

    ``coulomb_offset`` is the K in 1/(ell + n + K)²; K = 1 is the value that
    makes E_0 vanish and the one the diagonalisation confirms.
    """
    if n < 0:
        raise DomainError("level index must be non-negative")
    if isinstance(family, Coulomb):
        return family.energy(n, coulomb_offset)
    return family.energy(n)


def log_ground_state(family: PotentialFamily, mass: MassProfile, ordering: OrderingParams, x):
    """log of the unnormalised ground state (see :func:`ground_state`)."""
    _check_domain(family, x)
    eps = ordering.epsilon
    logm = np.log(mass_jet(mass, x, 0).value)
    # m^((eps+1)/2) * exp(-∫W): the eps-dependent powers combine to m^(1/4)
    return (eps + 1) / 2 * logm - (2 * eps + 1) / 4 * logm + family.log_ground(u_of_x(mass, x))


def ground_state(family: PotentialFamily, mass: MassProfile, ordering: OrderingParams, x):
    """Unnormalised zero mode psi0 = m^((eps+1)/2) exp(-∫W dx)."""
    return np.exp(log_ground_state(family, mass, ordering, x))


def ground_state_jet(family: PotentialFamily, mass: MassProfile, ordering: OrderingParams, x) -> Jet:
    _check_domain(family, x)
    eps = ordering.epsilon
    m = mass_jet(mass, x, 2)
    u = u_jet(mass, x, 2)
    return m ** ((eps + 1) / 2) * m ** (-(2 * eps + 1) / 4) * jets.exp(family.log_ground(u))


def annihilation_residual(
    family: PotentialFamily, mass: MassProfile, ordering: OrderingParams, x
) -> tuple[np.ndarray, np.ndarray]:
    """(A- psi0, psi0) evaluated pointwise with jet derivatives."""
    eps = ordering.epsilon
    psi = ground_state_jet(family, mass, ordering, x)
    m = mass_jet(mass, x, 2)
    w = superpotential_w(family, mass, ordering, x)
    inner = (m ** (-(eps + 1) / 2) * psi).diff()
    m_v = m.value
    out = m_v ** (eps / 2) * inner.value / math.sqrt(2) + w.value / np.sqrt(2 * m_v) * psi.value
    return out, psi.value
