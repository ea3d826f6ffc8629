import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdmsusy import jets
from pdmsusy.jets import Jet, Jet2

finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
positive = st.floats(min_value=0.2, max_value=4.0)


def test_variable_and_constant():
    x = Jet.variable(1.5, order=3)
    assert x.c.tolist() == [1.5, 1.0, 0.0, 0.0]
    c = Jet.constant(2.0)
    assert (c.value, c.d1, c.d2) == (2.0, 0.0, 0.0)


def test_from_derivatives_stores_taylor_coefficients():
    j = Jet.from_derivatives(1.0, 2.0, 6.0, 24.0)
    assert j.c.tolist() == [1.0, 2.0, 3.0, 4.0]
    assert j.derivative(3) == pytest.approx(24.0)


def test_jet2_product_rule():
    a, b = Jet2(2.0, 3.0, 4.0), Jet2(5.0, -1.0, 0.5)
    p = a * b
    assert p.value == 10.0
    assert p.d1 == pytest.approx(3 * 5 + 2 * -1)
    assert p.d2 == pytest.approx(4 * 5 + 2 * 3 * -1 + 2 * 0.5)


def test_quotient_rule():
    x = Jet.variable(0.7, 2)
    q = 1.0 / (1.0 + x * x)
    assert q.d1 == pytest.approx(-2 * 0.7 / (1 + 0.49) ** 2)
    assert q.d2 == pytest.approx((6 * 0.49 - 2) / (1 + 0.49) ** 3)


def test_mixed_order_truncates():
    a = Jet.variable(1.0, 4)
    b = Jet.variable(1.0, 2)
    assert (a * b).order == 2
    assert (a + 1.0).order == 4


def test_diff_and_integral_roundtrip():
    x = Jet.variable(0.3, 4)
    f = jets.exp(x) * x
    g = f.diff().integral(f.value)
    np.testing.assert_allclose(g.c, f.c, rtol=1e-14)


def test_batch_axis():
    xs = np.linspace(-1, 1, 7)
    s = jets.arctan(Jet.variable(xs, 3))
    np.testing.assert_allclose(s.value, np.arctan(xs))
    np.testing.assert_allclose(s.d1, 1 / (1 + xs**2))
    np.testing.assert_allclose(s.d2, -2 * xs / (1 + xs**2) ** 2)
    np.testing.assert_allclose(s.derivative(3), (6 * xs**2 - 2) / (1 + xs**2) ** 3)


def test_numpy_scalars_defer_to_jet():
    x = Jet.variable(2.0)
    out = np.float64(3.0) * x
    assert isinstance(out, Jet)
    assert out.d1 == 3.0


def test_integer_power_at_zero_is_finite():
    x = Jet.variable(0.0, 3)
    p = x**2
    assert p.c.tolist() == [0.0, 0.0, 1.0, 0.0]


def test_functions_pass_plain_arrays_through():
    assert jets.exp(0.0) == 1.0
    assert jets.sqrt(4.0) == 2.0
    assert jets.arctan(1.0) == pytest.approx(math.pi / 4)


def _central(f, x, h=1e-4):
    return (f(x + h) - f(x - h)) / (2 * h), (f(x + h) - 2 * f(x) + f(x - h)) / h**2


@settings(max_examples=60, deadline=None)
@given(x=positive, p=st.floats(min_value=-2.5, max_value=2.5))
def test_power_matches_finite_differences(x, p):
    j = Jet.variable(x, 2) ** p
    d1, d2 = _central(lambda t: t**p, x)
    assert j.value == pytest.approx(x**p, rel=1e-13)
    assert j.d1 == pytest.approx(d1, rel=1e-6, abs=1e-6)
    assert j.d2 == pytest.approx(d2, rel=1e-4, abs=1e-4)


@settings(max_examples=60, deadline=None)
@given(x=finite)
def test_composite_matches_finite_differences(x):
    def f(t):
        return np.exp(t) * np.arctan(t) / (2.0 + t * t)

    j = jets.exp(Jet.variable(x, 2)) * jets.arctan(Jet.variable(x, 2)) / (2.0 + Jet.variable(x, 2) ** 2)
    d1, d2 = _central(f, x)
    assert j.value == pytest.approx(f(x), rel=1e-13, abs=1e-15)
    assert j.d1 == pytest.approx(d1, rel=1e-6, abs=1e-7)
    assert j.d2 == pytest.approx(d2, rel=1e-4, abs=1e-5)


@settings(max_examples=50, deadline=None)
@given(x=positive)
def test_log_inverts_exp(x):
    j = Jet.variable(x, 4)
    np.testing.assert_allclose(jets.log(jets.exp(j)).c, j.c, atol=1e-12)
    np.testing.assert_allclose((jets.sqrt(j) * jets.sqrt(j)).c, j.c, atol=1e-12)
