import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdmsusy import ConstantMass, CustomMass, DomainError, IntegrationError, RationalDelta, mass_eval, u_of_x
from pdmsusy import jets
from pdmsusy.mass import inverse_u, mass_jet, sqrt_mass_jet, u_jet, u_quadrature
from pdmsusy.quadrature import adaptive_simpson

deltas = st.floats(min_value=0.1, max_value=10.0)
xs = st.floats(min_value=-20.0, max_value=20.0)


# -- quadrature -------------------------------------------------------------

def test_simpson_exact_on_cubics():
    value, err = adaptive_simpson(lambda t: 3 * t**3 - t + 2, -1.0, 2.0)
    assert value == pytest.approx(3 * (16 - 1) / 4 - (4 - 1) / 2 + 6, abs=1e-13)
    assert err >= 0


def test_simpson_reversed_and_empty_interval():
    f = math.cos
    assert adaptive_simpson(f, 1.0, 0.0)[0] == pytest.approx(-math.sin(1.0), abs=1e-12)
    assert adaptive_simpson(f, 0.5, 0.5)[0] == 0.0


def test_simpson_raises_when_depth_exhausted():
    with pytest.raises(IntegrationError):
        adaptive_simpson(lambda t: math.sqrt(abs(t - 0.3)) * math.sin(1 / (abs(t - 0.3) + 1e-9)),
                         0.0, 1.0, tol=1e-15, max_depth=8)


# -- RationalDelta ------------------------------------------------------------

def test_mass_examples():
    np.testing.assert_allclose(
        [mass_eval(RationalDelta(1.0), 7.3).c[k] for k in range(3)], [1.0, 0.0, 0.0], atol=1e-15)
    m = mass_eval(RationalDelta(2.0), 0.0)
    assert (m.value, m.d1, m.d2) == pytest.approx((4.0, 0.0, -8.0), abs=1e-14)
    m = mass_eval(RationalDelta(2.0), 1.0)
    assert (m.value, m.d1, m.d2) == pytest.approx((2.25, -1.5, 2.0), abs=1e-14)


def test_mass_second_derivative_against_finite_differences():
    prof, x, h = RationalDelta(2.0), 1.0, 1e-4
    f = lambda t: mass_jet(prof, t, 0).value  # noqa: E731
    fd = (f(x + h) - 2 * f(x) + f(x - h)) / h**2
    assert mass_eval(prof, x).d2 == pytest.approx(fd, rel=1e-6)


def test_u_examples():
    assert u_of_x(RationalDelta(1.0), 3.7) == pytest.approx(3.7)
    assert u_of_x(RationalDelta(3.0), 0.0) == 0.0
    assert u_of_x(RationalDelta(2.0), 1.0) == pytest.approx(1 + math.pi / 4, abs=1e-14)
    assert u_quadrature(RationalDelta(2.0), 1.0) == pytest.approx(1 + math.pi / 4, abs=1e-11)


def test_invalid_delta():
    for bad in (0.0, -1.0, math.nan, math.inf):
        with pytest.raises(DomainError):
            RationalDelta(bad)


@settings(max_examples=60, deadline=None)
@given(d=deltas, x=xs)
def test_u_closed_form_matches_quadrature(d, x):
    prof = RationalDelta(d)
    assert u_of_x(prof, x) == pytest.approx(u_quadrature(prof, x), rel=1e-10, abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(d=deltas, x1=xs, x2=xs)
def test_u_is_monotone(d, x1, x2):
    if x1 == x2:
        return
    lo, hi = sorted((x1, x2))
    assert u_of_x(RationalDelta(d), lo) < u_of_x(RationalDelta(d), hi)


@settings(max_examples=40, deadline=None)
@given(d=deltas, x=xs)
def test_sqrt_mass_squares_to_mass(d, x):
    prof = RationalDelta(d)
    s = sqrt_mass_jet(prof, x, 3)
    np.testing.assert_allclose((s * s).c, mass_jet(prof, x, 3).c, rtol=1e-12, atol=1e-12)


def test_u_jet_derivative_is_sqrt_mass():
    prof = RationalDelta(5.0)
    x = np.linspace(-3, 3, 11)
    uj = u_jet(prof, x, 3)
    np.testing.assert_allclose(uj.value, u_of_x(prof, x))
    np.testing.assert_allclose(uj.d1, sqrt_mass_jet(prof, x, 2).value)


def test_inverse_u_roundtrip():
    prof = RationalDelta(2.0)
    for x in (-4.0, 0.3, 7.5):
        assert inverse_u(prof, float(u_of_x(prof, x))) == pytest.approx(x, abs=1e-10)


# -- other profiles ---------------------------------------------------------

def test_constant_mass():
    prof = ConstantMass(3.0)
    m = mass_eval(prof, 2.0)
    assert (m.value, m.d1, m.d2) == (3.0, 0.0, 0.0)
    assert u_of_x(prof, 2.0) == pytest.approx(2 * math.sqrt(3.0))


def test_custom_mass_uses_quadrature():
    prof = CustomMass(lambda x: 1.0 + jets.exp(-(x * x)), "gauss")
    m = mass_eval(prof, 0.5)
    assert m.value == pytest.approx(1 + math.exp(-0.25))
    assert m.d1 == pytest.approx(-2 * 0.5 * math.exp(-0.25))
    expected, _ = adaptive_simpson(lambda t: math.sqrt(1 + math.exp(-t * t)), 0.0, 0.5)
    assert u_of_x(prof, 0.5) == pytest.approx(expected, rel=1e-10)


def test_custom_mass_must_stay_positive():
    prof = CustomMass(lambda x: x * x - 1.0, "bad")
    with pytest.raises(DomainError):
        mass_eval(prof, 0.0)


def test_custom_mass_must_return_jet():
    prof = CustomMass(lambda x: 2.0, "scalar")
    with pytest.raises((DomainError, TypeError)):
        mass_eval(prof, 0.0)
