import numpy as np
import pytest

from pdmsusy import Coulomb, HarmonicOscillator, Morse, OrderingParams, RationalDelta

EPSILONS = (-1.0, -0.5, 0.0)
DELTAS = (1.0, 2.0, 5.0)


@pytest.fixture
def ho():
    return HarmonicOscillator(omega=1.0, ell=1)


@pytest.fixture
def coulomb():
    return Coulomb(q=1.0, ell=0)


@pytest.fixture
def morse():
    return Morse(a=-3.0, b=1.0, alpha=1.0)


@pytest.fixture
def mass2():
    return RationalDelta(2.0)


@pytest.fixture
def eps0():
    return OrderingParams(0.0)


def all_families():
    return [HarmonicOscillator(1.0, 1), Coulomb(1.0, 0), Morse(-3.0, 1.0, 1.0)]


def sample_nodes(family, count=60, seed=7):
    lo, hi = (0.1, 5.0) if family.half_line else (-4.0, 2.5)
    return np.sort(np.random.default_rng(seed).uniform(lo, hi, count))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
