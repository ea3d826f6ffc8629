"""Run configuration: strict JSON parsing, defaults and automatic box sizing."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .errors import ConfigError, DomainError, NoBoundStateError
from .mass import RationalDelta, inverse_u, u_of_x
from .numerics import DiscretizationGrid, build_grid
from .susy import (
    Coulomb,
    HarmonicOscillator,
    Morse,
    OrderingParams,
    PotentialFamily,
    analytic_spectrum,
    log_ground_state,
)

DEFAULT_N = 4000
DEFAULT_K = 5
DEFAULT_SWEEP = (1.0, 2.0, 5.0)
BOX_THRESHOLD = 1e-12

_FAMILY_KEYS = {
    "ho": {"omega": None, "ell": 0},
    "coulomb": {"q": None, "ell": 0},
    "morse": {"a": None, "b": None, "alpha": None},
}
_COMMON_KEYS = {"family", "delta", "epsilon", "grid", "k", "tolerances", "sweep", "format"}
_GRID_KEYS = {"x_min", "x_max", "n"}
_TOL_KEYS = {"spectrum": 5e-3, "degeneracy": 1e-9, "sweep": 1e-2}


@dataclass(frozen=True)
class GridSpec:
    x_min: float | None = None
    x_max: float | None = None
    n: int = DEFAULT_N


@dataclass(frozen=True)
class Tolerances:
    spectrum: float = 5e-3
    degeneracy: float = 1e-9
    sweep: float = 1e-2


@dataclass(frozen=True)
class RunConfig:
    family: PotentialFamily
    delta: float = 1.0
    epsilon: float = 0.0
    grid: GridSpec = field(default_factory=GridSpec)
    k: int = DEFAULT_K
    tolerances: Tolerances = field(default_factory=Tolerances)
    sweep: tuple[float, ...] | None = None
    format: str = "csv"

    @property
    def mass(self) -> RationalDelta:
        return RationalDelta(self.delta)

    @property
    def ordering(self) -> OrderingParams:
        return OrderingParams(self.epsilon)

    def grid_for(self, delta: float | None = None, epsilon: float | None = None) -> DiscretizationGrid:
        """The configured grid, with missing bounds filled by :func:`auto_box`."""
        delta = self.delta if delta is None else delta
        epsilon = self.epsilon if epsilon is None else epsilon
        lo, hi = self.grid.x_min, self.grid.x_max
        if lo is None or hi is None:
            auto_lo, auto_hi = auto_box(self.family, RationalDelta(delta), OrderingParams(epsilon), self.k)
            lo = auto_lo if lo is None else lo
            hi = auto_hi if hi is None else hi
        return build_grid(lo, hi, self.grid.n)

    def echo(self) -> dict[str, Any]:
        fam = {"family": self.family.name}
        fam.update({k: getattr(self.family, k) for k in _FAMILY_KEYS[self.family.name]})
        out = dict(fam)
        out.update(
            delta=self.delta,
            epsilon=self.epsilon,
            grid=asdict(self.grid),
            k=self.k,
            tolerances=asdict(self.tolerances),
            sweep=list(self.sweep) if self.sweep is not None else None,
            format=self.format,
        )
        return out


def _number(obj: dict, key: str, where: str) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{where}{key} must be a finite number, got {value!r}")
    return float(value)


def _integer(obj: dict, key: str, where: str = "") -> int:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise ConfigError(f"{where}{key} must be an integer, got {value!r}")
    return value


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"unknown key{'s' if len(unknown) > 1 else ''} {', '.join(map(repr, unknown))}{where}")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    if "family" not in raw:
        raise ConfigError("missing required key 'family'")
    name = raw["family"]
    if not isinstance(name, str) or name.lower() not in _FAMILY_KEYS:
        raise ConfigError(f"unknown family {name}")
    name = name.lower()
    fam_keys = _FAMILY_KEYS[name]
    _reject_unknown(raw, _COMMON_KEYS | set(fam_keys), "")

    params = {}
    for key, default in fam_keys.items():
        if key in raw:
            params[key] = _integer(raw, key) if key == "ell" else _number(raw, key, "")
        elif default is None:
            raise ConfigError(f"missing required key {key!r} for family {name}")
        else:
            params[key] = default
    try:
        family = {"ho": HarmonicOscillator, "coulomb": Coulomb, "morse": Morse}[name](**params)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None

    delta = _number(raw, "delta", "") if "delta" in raw else 1.0
    if not delta > 0:
        raise ConfigError("delta must be positive")
    epsilon = _number(raw, "epsilon", "") if "epsilon" in raw else 0.0

    grid = GridSpec()
    if "grid" in raw:
        g = raw["grid"]
        if not isinstance(g, dict):
            raise ConfigError("grid must be an object")
        _reject_unknown(g, _GRID_KEYS, " in grid")
        x_min = _number(g, "x_min", "grid.") if "x_min" in g else None
        x_max = _number(g, "x_max", "grid.") if "x_max" in g else None
        n = _integer(g, "n", "grid.") if "n" in g else DEFAULT_N
        if n < 3:
            raise ConfigError("grid.n must be at least 3")
        if x_min is not None and x_max is not None and not x_min < x_max:
            raise ConfigError("grid.x_min must be below grid.x_max")
        if family.half_line and x_min is not None and x_min < 0:
            raise ConfigError(f"grid.x_min must be >= 0 for family {name}")
        grid = GridSpec(x_min, x_max, n)

    k = _integer(raw, "k") if "k" in raw else DEFAULT_K
    if k < 1:
        raise ConfigError("k must be at least 1")

    tolerances = Tolerances()
    if "tolerances" in raw:
        t = raw["tolerances"]
        if not isinstance(t, dict):
            raise ConfigError("tolerances must be an object")
        _reject_unknown(t, set(_TOL_KEYS), " in tolerances")
        vals = {key: _number(t, key, "tolerances.") if key in t else d for key, d in _TOL_KEYS.items()}
        for key, v in vals.items():
            if not v > 0:
                raise ConfigError(f"tolerances.{key} must be positive")
        tolerances = Tolerances(**vals)

    sweep = None
    if "sweep" in raw:
        s = raw["sweep"]
        if not isinstance(s, list) or not s:
            raise ConfigError("sweep must be a non-empty list of delta values")
        sweep = tuple(_number({"sweep": v}, "sweep", "") for v in s)
        if any(not v > 0 for v in sweep):
            raise ConfigError("sweep values must be positive")

    fmt = raw.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be 'csv' or 'json', got {fmt!r}")

    return RunConfig(family, delta, epsilon, grid, k, tolerances, sweep, fmt)


# --------------------------------------------------------------------------
# automatic box sizing


def _psi0_edge(family, mass, ordering, direction: int, threshold: float) -> tuple[float, float]:
    """(edge, peak): first x past the maximum of psi0 where it is below threshold * max."""
    start = 1e-6 if family.half_line else 0.0
    reach = 1.0
    log_thr = math.log(threshold)
    for _ in range(200):
        xs = start + direction * np.linspace(0.0, reach, 4001)[1:]
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            lp = log_ground_state(family, mass, ordering, xs)
        lp = np.where(np.isfinite(lp), lp, -np.inf)
        peak = int(np.argmax(lp))
        if peak < len(xs) - 1 and lp[-1] - lp[peak] < log_thr:
            # first point beyond the peak below threshold
            below = np.nonzero(lp[peak:] - lp[peak] < log_thr)[0][0] + peak
            return float(xs[below]), float(xs[peak])
        reach *= 1.5
    raise DomainError("could not locate the decay of the ground state")


def _wkb_edge(family, k: int, u_start: float, direction: int, threshold: float) -> float | None:
    """u beyond the outer turning point of level k-1 where the WKB tail drops below threshold."""
    try:
        energy = analytic_spectrum(family, k - 1)
    except NoBoundStateError:
        return None
    target = -math.log(threshold)

    def potential(u):
        phi = family.phi(u)
        dphi = (family.phi(u + 1e-6) - family.phi(u - 1e-6)) / 2e-6
        return 0.5 * (phi * phi - dphi)

    u = u_start
    step = 1e-3
    action = 0.0
    for _ in range(5_000_000):
        gap = potential(u) - energy
        if gap > 0 and action >= target:
            return u
        action = action + math.sqrt(2.0 * gap) * step if gap > 0 else 0.0
        u += direction * step
        if direction > 0 and u > 1e7 or direction < 0 and u < -1e7:
            break
        step = min(step * 1.001, 0.05)
    return None


def auto_box(family: PotentialFamily, mass, ordering: OrderingParams, k: int = 1,
             threshold: float = BOX_THRESHOLD) -> tuple[float, float]:
    """Box ends where psi0 and the WKB tail of level k-1 are below ``threshold``."""
    edges = []
    for direction in ((1,) if family.half_line else (-1, 1)):
        x, peak = _psi0_edge(family, mass, ordering, direction, threshold)
        u = _wkb_edge(family, k, float(u_of_x(mass, peak)), direction, threshold)
        if u is not None:
            xw = inverse_u(mass, u, x_guess=abs(x) + 1.0)
            x = max(x, xw) if direction > 0 else min(x, xw)
        edges.append(float(np.round(x, 6)))
    if family.half_line:
        return 0.0, edges[0]
    return edges[0], edges[1]
