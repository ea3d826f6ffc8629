import json

import numpy as np
import pytest

from pdmsusy import ConfigError, Coulomb, HarmonicOscillator, Morse, OrderingParams, RationalDelta
from pdmsusy.config import auto_box, parse_config
from pdmsusy.susy import ground_state


def test_minimal_config_defaults():
    c = parse_config('{"family": "ho", "omega": 1, "ell": 1, "delta": 2}')
    assert c.family == HarmonicOscillator(1.0, 1)
    assert (c.delta, c.epsilon, c.k, c.grid.n, c.format) == (2.0, 0.0, 5, 4000, "csv")
    assert c.grid.x_min is None and c.grid.x_max is None
    grid = c.grid_for()
    assert grid.x_min == 0.0 and grid.n == 4000


def test_coulomb_config_passthrough():
    c = parse_config('{"family": "coulomb", "q": 1, "ell": 0, "delta": 2,'
                     ' "grid": {"x_min": 0, "x_max": 400, "n": 8000}}')
    g = c.grid_for()
    assert (g.x_min, g.x_max, g.n) == (0.0, 400.0, 8000)
    assert c.family == Coulomb(1.0, 0)


@pytest.mark.parametrize("text,message", [
    ('{"family": "quartic"}', "unknown family quartic"),
    ('{"family": "morse", "a": 3, "b": 1, "alpha": 1}', "a must be negative"),
    ('{"family": "ho", "omega": 1, "mass_exponent": 3}', "unknown key 'mass_exponent'"),
    ('{"family": "ho", "omega": 1, "grid": {"dx": 0.1}}', "unknown key 'dx' in grid"),
    ('{"family": "ho", "omega": 1, "tolerances": {"spectra": 1}}', "in tolerances"),
    ('{"family": "ho"}', "missing required key 'omega'"),
    ('{"family": "ho", "omega": 1, "k": 0}', "k must be at least 1"),
    ('{"family": "ho", "omega": 1, "delta": -2}', "delta must be positive"),
    ('{"family": "ho", "omega": 1, "tolerances": {"spectrum": 0}}', "must be positive"),
    ('{"family": "ho", "omega": 1, "grid": {"x_min": -1}}', "x_min must be >= 0"),
    ('{"family": "ho", "omega": 1, "grid": {"x_min": 3, "x_max": 1}}', "x_min must be below"),
    ('{"family": "ho", "omega": "one"}', "finite number"),
    ('{"family": "ho", "omega": 1, "format": "xml"}', "format"),
    ('{"family": "ho", "omega": 1, "sweep": []}', "sweep"),
    ('[1, 2]', "JSON object"),
])
def test_config_errors(text, message):
    with pytest.raises(ConfigError, match=message):
        parse_config(text)


def test_malformed_json_reports_location():
    with pytest.raises(ConfigError, match=r"malformed JSON at line 2 column \d+"):
        parse_config('{"family": "ho",\n  "omega": }')


def test_echo_roundtrips():
    text = '{"family": "morse", "a": -3, "b": 1, "alpha": 1, "delta": 2, "sweep": [1, 3], "k": 3}'
    c = parse_config(text)
    echoed = c.echo()
    echoed["grid"] = {k: v for k, v in echoed["grid"].items() if v is not None}
    assert parse_config(json.dumps(echoed)) == c


@pytest.mark.parametrize("fam", [HarmonicOscillator(1.0, 1), Coulomb(1.0, 0), Morse(-3.0, 1.0, 1.0)],
                         ids=lambda f: f.name)
@pytest.mark.parametrize("delta", [1.0, 2.0, 5.0])
def test_auto_box_puts_psi0_below_threshold(fam, delta):
    mass, o = RationalDelta(delta), OrderingParams()
    lo, hi = auto_box(fam, mass, o, k=1)
    inside = np.linspace(lo if not fam.half_line else 1e-3, hi, 20001)[1:-1]
    peak = ground_state(fam, mass, o, inside).max()
    assert ground_state(fam, mass, o, hi) <= 1.01e-12 * peak
    if not fam.half_line:
        assert ground_state(fam, mass, o, lo) <= 1.01e-12 * peak
    else:
        assert lo == 0.0


def test_auto_box_grows_with_level_count():
    fam, mass, o = HarmonicOscillator(1.0, 1), RationalDelta(2.0), OrderingParams()
    _, hi1 = auto_box(fam, mass, o, k=1)
    _, hi5 = auto_box(fam, mass, o, k=5)
    assert hi5 > hi1
