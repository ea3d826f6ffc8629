"""Named verification checks and the aggregated report."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import PDMError
from .mass import ConstantMass, MassProfile, RationalDelta, u_of_x
from .numerics import (
    DiscreteSystem,
    build_system,
    hamiltonian_direct,
    hamiltonian_direct_plus,
    lowest_eigenvalues,
)
from .susy import (
    Coulomb,
    Morse,
    OrderingParams,
    PotentialFamily,
    analytic_spectrum,
    constant_mass_partners,
    construction_residual,
    ground_state,
    mass_correction_vm,
    partner_potentials,
    plus_offset_term,
    shape_invariance_residual,
    superpotential_from_construction,
    superpotential_w,
)

ORDERING_SWEEP = (-1.0, -0.5, 0.0)
CONSTRUCTION_DELTAS = (1.0, 2.0, 5.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""
    gating: bool = True
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "measured": _finite_or_none(self.measured),
            "tolerance": self.tolerance,
            "detail": self.detail,
            "gating": self.gating,
            "data": self.data,
        }


@dataclass(frozen=True)
class CheckReport:
    config: dict
    results: list[CheckResult]

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.results if r.gating)

    @property
    def resolved(self) -> dict:
        out = {}
        for r in self.results:
            out.update(r.data)
        return out

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "overall": self.overall,
            "resolved": self.resolved,
            "results": [r.to_dict() for r in self.results],
        }


def _finite_or_none(v):
    return float(v) if v is not None and math.isfinite(v) else None


def _leq(name, measured, tolerance, detail="", **kw) -> CheckResult:
    measured = float(measured)
    return CheckResult(name, bool(measured <= tolerance), measured, tolerance, detail, **kw)


def bulk_nodes(family: PotentialFamily, count: int) -> np.ndarray:
    """Nodes well inside the classically relevant region and away from singular points."""
    if family.half_line:
        return np.linspace(0.5, 4.0, count)
    return np.linspace(-3.0, 2.0, count)


def random_nodes(family: PotentialFamily, count: int, seed: int = 2024) -> np.ndarray:
    lo, hi = (0.05, 6.0) if family.half_line else (-5.0, 3.0)
    return np.random.default_rng(seed).uniform(lo, hi, count)


# --------------------------------------------------------------------------
# spectral checks


def check_partner_degeneracy(system: DiscreteSystem, tolerance: float = 1e-9, pairs: int = 6) -> CheckResult:
    """Compare eig(H+) with the nonzero eigenvalues of eig(H-)."""
    pairs = min(pairs, system.h_plus.dim)
    e_minus = lowest_eigenvalues(system.h_minus, pairs + 1)[1:]
    e_plus = lowest_eigenvalues(system.h_plus, pairs)
    rel = np.abs(e_plus - e_minus) / np.maximum(np.abs(e_minus), np.finfo(float).tiny)
    return _leq("partner_degeneracy", rel.max(), tolerance, f"compared {pairs} pairs")


def resolve_coulomb_index(system: DiscreteSystem, k: int = 3) -> tuple[int, dict[int, float]]:
    """Pick K in 1/(ell+n+K)² that matches the numerical levels n = 1..k-1."""
    family = system.family
    numeric = lowest_eigenvalues(system.h_minus, k)
    errors = {}
    for offset in (1, 2):
        analytic = np.array([analytic_spectrum(family, n, offset) for n in range(1, k)])
        errors[offset] = float(np.max(np.abs(numeric[1:] - analytic) / np.abs(analytic)))
    return min(errors, key=errors.get), errors


def check_spectrum_vs_analytic(
    system: DiscreteSystem,
    family: PotentialFamily,
    k: int,
    tolerance: float = 5e-3,
    analytic: Sequence[float] | None = None,
) -> CheckResult:
    offset = 1
    if analytic is None:
        if isinstance(family, Coulomb) and k > 1:
            offset, _ = resolve_coulomb_index(system, max(k, 3))
        analytic = [analytic_spectrum(family, n, offset) for n in range(k)]
    analytic = np.asarray(analytic, dtype=float)
    numeric = lowest_eigenvalues(system.h_minus, k)
    err = np.abs(numeric - analytic)
    detail = "numeric=" + ",".join(f"{v:.9g}" for v in numeric)
    return _leq("spectrum", err.max(), tolerance, detail)


def check_coulomb_index(system: DiscreteSystem, ground_tol: float = 1e-4, rel_tol: float = 1e-3) -> CheckResult:
    offset, errors = resolve_coulomb_index(system, 3)
    e0 = float(lowest_eigenvalues(system.h_minus, 1)[0])
    passed = abs(e0) <= ground_tol and errors[offset] <= rel_tol
    detail = f"K={offset}; E0={e0:.3e}; rel err K=1: {errors[1]:.3e}, K=2: {errors[2]:.3e}"
    return CheckResult("coulomb_index", passed, errors[offset], rel_tol, detail, data={"coulomb_index": offset})


def level_spread(spectra: Iterable[np.ndarray]) -> tuple[float, int]:
    """Largest (max - min) across runs of any single level, and that level."""
    table = np.array(list(spectra))
    spread = table.max(axis=0) - table.min(axis=0)
    level = int(np.argmax(spread))
    return float(spread[level]), level


def check_isospectral_sweep(
    family: PotentialFamily,
    ordering: OrderingParams,
    deltas: Sequence[float],
    k: int,
    grid_for: Callable[[float], object],
    tolerance: float = 1e-2,
) -> CheckResult:
    spectra = [
        lowest_eigenvalues(build_system(family, RationalDelta(d), ordering, grid_for(d)).h_minus, k)
        for d in deltas
    ]
    spread, level = level_spread(spectra)
    return _leq("isospectral_sweep", spread, tolerance, f"deltas={list(deltas)}; worst level {level}")


def check_ordering_independence(
    family: PotentialFamily,
    mass: MassProfile,
    epsilons: Sequence[float],
    k: int,
    grid_for: Callable[[float], object],
    tolerance: float = 1e-2,
) -> CheckResult:
    spectra = [
        lowest_eigenvalues(build_system(family, mass, OrderingParams(e), grid_for(e)).h_minus, k)
        for e in epsilons
    ]
    spread, level = level_spread(spectra)
    return _leq("ordering_independence", spread, tolerance, f"epsilons={list(epsilons)}; worst level {level}")


def check_ladder_mapping(
    system_a0: DiscreteSystem, system_a1: DiscreteSystem, level: int = 1, tolerance: float = 1e-3
) -> CheckResult:
    """psi_n(a0) against A+(a0) psi_{n-1}(a1), compared by angle."""
    if level < 1:
        raise ValueError("ladder mapping needs level >= 1")
    lower = system_a1.spectrum(level).eigenvectors[level - 1]
    target = system_a0.spectrum(level + 1).eigenvectors[level]
    at_mid = 0.5 * (lower[:-1] + lower[1:])
    mapped = system_a0.a_plus.matvec(at_mid)
    cos = abs(np.dot(mapped, target)) / (np.linalg.norm(mapped) * np.linalg.norm(target))
    return _leq("ladder_mapping", 1.0 - cos, tolerance, f"level {level}")


def check_zero_mode(
    system: DiscreteSystem, spectral_tol: float = 1e-5, applied_tol: float = 1e-3, trim: int = 5
) -> list[CheckResult]:
    e0 = float(lowest_eigenvalues(system.h_minus, 1)[0])
    psi0 = ground_state(system.family, system.mass, system.ordering, system.grid.nodes)
    psi0 = psi0 / np.max(np.abs(psi0))
    applied = system.a_minus.matvec(psi0)[trim:-trim]
    ratio = np.linalg.norm(applied) / np.linalg.norm(psi0)
    return [
        _leq("zero_mode_spectral", e0, spectral_tol, f"smallest eigenvalue of H- = {e0:.3e}"),
        _leq("zero_mode_applied", ratio, applied_tol, f"|A- psi0| / |psi0| excluding {trim} end nodes"),
    ]


def check_factorized_vs_direct(system: DiscreteSystem, k: int, tolerance: float = 5e-3) -> CheckResult:
    """Factorised H- against the direct sandwich discretisation with node-sampled V-."""
    v = partner_potentials(system.family, system.mass, system.ordering, system.grid.nodes).v_minus
    direct = hamiltonian_direct(system.mass, system.ordering, v, system.grid)
    diff = np.abs(lowest_eigenvalues(direct, k) - lowest_eigenvalues(system.h_minus, k))
    return _leq("factorized_vs_direct", diff.max(), tolerance, f"lowest {k} levels")


def check_partner_plus_kinetic(system: DiscreteSystem, k: int, tolerance: float = 5e-3) -> CheckResult:
    """Factorised H+ against a direct discretisation of its kinetic form plus V+.

    The detail also reports the deviation obtained when the offset term of
    :func:`pdmsusy.susy.plus_offset_term` is added to V+.
    """
    fam, mass, ordering = system.family, system.mass, system.ordering
    mid_grid = system.grid.midpoint_grid()
    x = mid_grid.nodes
    v_plus = partner_potentials(fam, mass, ordering, x).v_plus
    k = min(k, mid_grid.n)
    reference = lowest_eigenvalues(system.h_plus, k)
    direct = lowest_eigenvalues(hamiltonian_direct_plus(mass, ordering, v_plus, mid_grid), k)
    with_offset = lowest_eigenvalues(
        hamiltonian_direct_plus(mass, ordering, v_plus + plus_offset_term(mass, ordering, x), mid_grid), k
    )
    diff = np.abs(direct - reference).max()
    diff_offset = float(np.abs(with_offset - reference).max())
    return _leq(
        "partner_plus_kinetic", diff, tolerance,
        f"with the additive offset term the deviation would be {diff_offset:.3e}",
    )


# --------------------------------------------------------------------------
# pointwise identity checks


def check_shape_invariance(
    family: PotentialFamily,
    mass: MassProfile,
    ordering: OrderingParams,
    nodes,
    tolerance: float = 1e-8,
) -> CheckResult:
    res = shape_invariance_residual(family, mass, ordering, nodes)
    expected = analytic_spectrum(family, 1) - analytic_spectrum(family, 0)
    measured = max(res.stdev, abs(res.mean - expected))
    return _leq(
        "shape_invariance", measured, tolerance,
        f"mean R={res.mean:.12g} (expected {expected:.12g}), stdev={res.stdev:.3e} over {len(res.residuals)} nodes",
    )


def check_construction(
    family: PotentialFamily,
    ordering: OrderingParams,
    deltas: Sequence[float],
    nodes,
    tolerance: float = 1e-10,
    agreement_tol: float = 1e-12,
) -> CheckResult:
    """Constraint (q0 + q1/r + q2/r²) r'² = m and W(family) == W(construction)."""
    constr = family.construction()
    worst_constraint = worst_agreement = 0.0
    for d in deltas:
        mass = RationalDelta(d)
        worst_constraint = max(worst_constraint, float(construction_residual(constr, mass, nodes).max()))
        a = superpotential_w(family, mass, ordering, nodes)
        b = superpotential_from_construction(constr, mass, ordering, nodes)
        worst_agreement = max(worst_agreement, float(np.max(np.abs(a.value - b.value))))
    passed = worst_constraint <= tolerance and worst_agreement <= agreement_tol
    return CheckResult(
        "construction_constraint", passed, worst_constraint, tolerance,
        f"max |W_family - W_construction| = {worst_agreement:.3e} (tol {agreement_tol:g})",
    )


def check_constant_mass_reduction(
    family: PotentialFamily, ordering: OrderingParams, nodes, tolerance: float = 1e-12
) -> CheckResult:
    """At delta = 1 the partner potentials equal the constant-mass ones built from Phi."""
    p = partner_potentials(family, RationalDelta(1.0), ordering, nodes)
    vm, vp = constant_mass_partners(family, nodes)
    diff = max(np.max(np.abs(p.v_minus - vm)), np.max(np.abs(p.v_plus - vp)))
    return _leq("constant_mass_reduction", diff, tolerance, f"{len(nodes)} nodes")


def vm_sign_resolution(
    family: PotentialFamily, mass: MassProfile, ordering: OrderingParams, nodes
) -> dict:
    """Which sign of each mass-correction formula makes V- minus the closed form constant."""
    canonical = partner_potentials(family, mass, ordering, nodes).v_minus
    base = family.closed_form_v_minus(u_of_x(mass, nodes))
    general, rational = mass_correction_vm(mass, ordering, nodes)
    out = {}
    for label, vm in (("general", general), ("rational", rational)):
        spreads = {s: float(np.std(canonical - base - s * vm)) for s in (1, -1)}
        sign = min(spreads, key=lambda s: (spreads[s], -s))
        offset = float(np.mean(canonical - base - sign * vm))
        out[label] = {"sign": sign, "stdev": spreads[sign], "stdev_other_sign": spreads[-sign], "offset": offset}
    at_zero = mass_correction_vm(mass, ordering, 0.0)
    out["abs_at_zero"] = [abs(float(at_zero[0])), abs(float(at_zero[1]))]
    return out


def check_vm_diagnostic(
    family: PotentialFamily, mass: MassProfile, ordering: OrderingParams, nodes, tolerance: float = 1e-9
) -> CheckResult:
    info = vm_sign_resolution(family, mass, ordering, nodes)
    g, r = info["general"], info["rational"]
    detail = (
        f"general formula sign {g['sign']:+d} (stdev {g['stdev']:.3e}, offset {g['offset']:.3e}); "
        f"rational-profile formula sign {r['sign']:+d} (stdev {r['stdev']:.3e}); "
        f"|Vm(0)| = {info['abs_at_zero'][0]:.12g}, {info['abs_at_zero'][1]:.12g}"
    )
    return _leq("vm_sign_diagnostic", g["stdev"], tolerance, detail, gating=False, data={"vm_sign": info})


# --------------------------------------------------------------------------
# aggregate


def _checks(config) -> dict[str, Callable[[], list[CheckResult]]]:
    fam, mass, ordering, k, tol = config.family, config.mass, config.ordering, config.k, config.tolerances

    def system(f=fam, m=mass, o=ordering):
        return build_system(f, m, o, config.grid_for(getattr(m, "delta", config.delta), o.epsilon))

    def ladder():
        grid = config.grid_for()
        return [check_ladder_mapping(build_system(fam, mass, ordering, grid),
                                     build_system(fam.successor(), mass, ordering, grid))]

    checks = {
        "zero_mode": lambda: check_zero_mode(system()),
        "partner_degeneracy": lambda: [check_partner_degeneracy(system(), tol.degeneracy)],
        "spectrum": lambda: [check_spectrum_vs_analytic(system(), fam, k, tol.spectrum)],
        "isospectral_sweep": lambda: [check_isospectral_sweep(
            fam, ordering, config.sweep or (1.0, 2.0, 5.0), k, lambda d: config.grid_for(d), tol.sweep)],
        "ordering_independence": lambda: [check_ordering_independence(
            fam, mass, ORDERING_SWEEP, k, lambda e: config.grid_for(epsilon=e), tol.sweep)],
        "ladder_mapping": ladder,
        "shape_invariance": lambda: [check_shape_invariance(fam, mass, ordering, bulk_nodes(fam, 200))],
        "construction_constraint": lambda: [check_construction(
            fam, ordering, sorted(set(CONSTRUCTION_DELTAS) | {config.delta}), random_nodes(fam, 100))],
        "constant_mass_reduction": lambda: [check_constant_mass_reduction(fam, ordering, config.grid_for().nodes)],
        "factorized_vs_direct": lambda: [check_factorized_vs_direct(system(), k, tol.spectrum)],
        "partner_plus_kinetic": lambda: [check_partner_plus_kinetic(system(), max(k - 1, 1), tol.spectrum)],
        "vm_sign_diagnostic": lambda: [check_vm_diagnostic(fam, mass, ordering, bulk_nodes(fam, 200))],
    }
    if isinstance(fam, Coulomb):
        checks["coulomb_index"] = lambda: [check_coulomb_index(system())]
    return checks


CHECK_NAMES = (
    "constant_mass_reduction", "construction_constraint", "coulomb_index", "factorized_vs_direct",
    "isospectral_sweep", "ladder_mapping", "ordering_independence", "partner_degeneracy",
    "partner_plus_kinetic", "shape_invariance", "spectrum", "vm_sign_diagnostic", "zero_mode",
)


def run_all(config, checks: Sequence[str] | None = None) -> CheckReport:
    """Run the named checks (all applicable ones by default) and collect a report.

    A check that raises is recorded as failed and the run continues.
    """
    available = _checks(config)
    names = sorted(available) if checks is None else list(checks)
    results: list[CheckResult] = []
    for name in names:
        if name not in available:
            if name in CHECK_NAMES:
                continue  # not applicable to this family
            raise ValueError(f"unknown check {name!r}")
        try:
            results.extend(available[name]())
        except (PDMError, ArithmeticError, ValueError) as exc:
            results.append(CheckResult(name, False, math.nan, math.nan, f"{type(exc).__name__}: {exc}"))
    results.sort(key=lambda r: r.name)
    return CheckReport(config.echo(), results)
