"""Scenario runners that assemble ScenarioReports for the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import cheshire, pigeonhole, pointer_sim
from .expected import expected_for
from .hilbert import Ket
from .report import ScenarioReport
from .weak_measure import weak_value

SCENARIOS = (
    "pigeonhole-weak-values",
    "pigeonhole-hom",
    "pigeonhole-pointer",
    "cheshire-weak-values",
    "cheshire-filters",
)

POSTSELECTION_PHASE = (
    "coefficients are <post|path><path|pre> with <+i| = (<L| - i<R|)/sqrt2; "
    "this is the complex conjugate of the other common convention, ratios are unaffected"
)
NORMALIZATION_NOTE = (
    "Cheshire postselection stored normalized in the one-photon-per-arm subspace; "
    "overlaps and probabilities are reported with the written 1/4 prefactor "
    f"(scale {cheshire.POST_SCALE!r})"
)


@dataclass
class PointerParams:
    sigma: float = 1.0
    deltas: tuple[float, float, float] = (1e-3, 1e-3, 1e-3)
    scan: tuple[float, float, int] = (1e-3, 1e-1, 10)

    @property
    def pattern(self) -> tuple[float, float, float]:
        """Relative kick sizes used by the scan; the largest is 1."""
        m = max(abs(d) for d in self.deltas)
        return (1.0, 1.0, 1.0) if m == 0 else tuple(d / m for d in self.deltas)

    @property
    def ratios(self) -> list[float]:
        lo, hi, n = self.scan
        return pointer_sim.default_ratios(lo, hi, int(n))


@dataclass
class Params:
    pointer: PointerParams = field(default_factory=PointerParams)
    t_list: tuple[float, ...] = (0.01, 0.1, 1.0, 10.0)
    t_small: float = 1e-4


class _Filler:
    """Attach checked-in expected values to entries by name."""

    def __init__(self, rep: ScenarioReport):
        self.rep = rep
        self.exp = expected_for(rep.scenario)

    def __call__(self, name, value, tolerance=None):
        e = self.exp.get(name)
        if e is None:
            return self.rep.add(name, value)
        val, prov, tol = e
        return self.rep.add(name, value, val, prov, tol if tol is not None else tolerance)


def pigeonhole_weak_values(params: Params) -> ScenarioReport:
    rep = ScenarioReport("pigeonhole-weak-values")
    add = _Filler(rep)
    s = pigeonhole.build_scenario()
    for (i, j), v in pigeonhole.same_box_weak_values(s).items():
        add(f"same_{i}{j}", v)
    add("overlap", s.pair.overlap)
    add("postselection_probability", abs(s.pair.overlap) ** 2)
    add("same_12_post_equals_pre", weak_value(s.pair_projectors[(1, 2)], s.pair.with_post(s.pair.pre)))
    total = sum(weak_value(pigeonhole.pair_projector(1, 2, k), s.pair) for k in ("same", "LR", "RL"))
    add("sum_rule_12", total)
    return rep


def pigeonhole_hom(params: Params) -> ScenarioReport:
    rep = ScenarioReport("pigeonhole-hom")
    add = _Filler(rep)
    e = pigeonhole.PBSExperiment(pigeonhole.diagonal_input())
    coinc = pigeonhole.coincidence_probability(e)
    p3 = pigeonhole.detection_probability(pigeonhole.diagonal_pol(), pigeonhole.circular_pol())
    add("coincidence", coinc)
    add("photon3_probability", p3)
    add("triple_coincidence", pigeonhole.triple_coincidence_probability(e))
    add("coincidence_oracle", coinc)
    add("photon3_probability_oracle", p3)
    h = pigeonhole.pol_ket(1.0, 0.0)
    ehh = pigeonhole.PBSExperiment(pigeonhole.diagonal_input(), h, h)
    add("coincidence_HH", pigeonhole.coincidence_probability(ehh))
    add("triple_coincidence_HH", pigeonhole.triple_coincidence_probability(ehh))
    out = pigeonhole.pbs_transform(pigeonhole.diagonal_input())
    add("post_pbs_distance", float(np.max(np.abs(out.amplitudes - pigeonhole.post_pbs_reference().amplitudes))))
    d = pigeonhole.circular_pol()
    me = pigeonhole.same_box_matrix_element(pigeonhole.diagonal_pol(), pigeonhole.diagonal_pol(), d, d)
    add("matrix_element_route", abs(me) ** 2)
    rep.metadata["conventions"] = {"pbs": pigeonhole.PBS_CONVENTION}
    rep.metadata["route_proportionality"] = pigeonhole.ROUTE_PROPORTIONALITY
    return rep


def pigeonhole_pointer(params: Params) -> ScenarioReport:
    rep = ScenarioReport("pigeonhole-pointer")
    add = _Filler(rep)
    pp = params.pointer
    s = pigeonhole.build_scenario()
    post = s.pair.post

    here = pointer_sim.postselect_branches(pointer_sim.build_branch_state(pp.deltas, pp.sigma), post)
    for (k, (i, j)), v in pointer_sim.first_order_sums(here).items():
        add(f"first_order_sum_p{k}_d{i}{j}", v)
    for i, m in enumerate(pointer_sim.mean_momenta(here), 1):
        add(f"point:mean_p{i}", m)
    for (i, j), m in pointer_sim.relative_momenta(here).items():
        add(f"point:rel_p{i}{j}", m)
    add("point:fidelity_deficit", pointer_sim.fidelity_deficit(here))

    tiny = tuple(1e-6 * pp.sigma * d for d in pp.pattern)
    st = pointer_sim.postselect_branches(pointer_sim.build_branch_state(tiny, pp.sigma), post)
    add("norm_ratio_small_delta", pointer_sim.norm_sq(st))
    st0 = pointer_sim.postselect_branches(pointer_sim.build_branch_state((0, 0, 0), pp.sigma), post)
    add("fidelity_zero_delta", pointer_sim.fidelity_to_unperturbed(st0))

    lll = Ket.basis(pigeonhole.three_box_space(), "L", "L", "L")
    for label, p in (("interference", post), ("baseline_LLL", lll)):
        scan = pointer_sim.delta_scan(pp.sigma, pp.ratios, p, pp.pattern)
        for row in scan.rows:
            tag = f"{label}@{row.ratio!r}"
            for i, m in enumerate(row.mean_momenta, 1):
                add(f"{tag}:mean_p{i}", m)
            for (i, j), m in row.relative_momenta.items():
                add(f"{tag}:rel_p{i}{j}", m)
            add(f"{tag}:fidelity_deficit", row.fidelity_deficit)
        add(f"{label}:momentum_slope", scan.momentum_slope)
        add(f"{label}:momentum_prefactor", scan.momentum_prefactor)
        add(f"{label}:deficit_slope", scan.deficit_slope)
        add(f"{label}:deficit_prefactor", scan.deficit_prefactor)

    rep.metadata["conventions"] = {
        "postselection_phase": POSTSELECTION_PHASE,
        "shifts": "displacement of each electron's momentum mean; one transverse axis; common width",
    }
    rep.metadata["parameters"] = {
        "sigma": pp.sigma,
        "deltas": list(pp.deltas),
        "scan_pattern": list(pp.pattern),
        "ratios": pp.ratios,
    }
    return rep


def cheshire_weak_values(params: Params) -> ScenarioReport:
    rep = ScenarioReport("cheshire-weak-values")
    add = _Filler(rep)
    s = cheshire.build_scenario()
    for name, v in cheshire.weak_value_table(s).items():
        add(name, v)
    rep.metadata["conventions"] = {"normalization": NORMALIZATION_NOTE}
    return rep


def cheshire_filters(params: Params) -> ScenarioReport:
    s = cheshire.build_scenario()
    exp = expected_for("cheshire-filters")
    rep = cheshire.grin_exchange_report(s, params.t_small, exp)
    add = _Filler(rep)
    for loc in cheshire.LOCATIONS:
        for sensitive in (False, True):
            kind = "down_pi" if sensitive else "pi"
            for t in (0.0,) + tuple(params.t_list):
                add(f"P_{kind}_{loc}@t={t:g}", cheshire.filter_experiment(s, loc, sensitive, t))
    rep.metadata["conventions"] = {"normalization": NORMALIZATION_NOTE}
    rep.metadata["parameters"] = {"t_list": list(params.t_list), "t_small": params.t_small}
    return rep


RUNNERS = {
    "pigeonhole-weak-values": pigeonhole_weak_values,
    "pigeonhole-hom": pigeonhole_hom,
    "pigeonhole-pointer": pigeonhole_pointer,
    "cheshire-weak-values": cheshire_weak_values,
    "cheshire-filters": cheshire_filters,
}


def run_scenarios(names, params: Params, tolerance: float) -> list[ScenarioReport]:
    reports = [RUNNERS[n](params) for n in sorted(names)]
    for r in reports:
        r.metadata.setdefault("tolerance", tolerance)
        r.finalize(tolerance)
    return reports
