"""Exchange of polarization between two photons, read as two-photon interference.

Space: pol_A (x) pol_B (x) path_A (x) path_B, each two-level. Polarization
levels are ``up`` (horizontal) and ``down`` (vertical); path levels ``u``/``d``.

The coincidence postselection is the product of the detector polarizer
states and the detector path projections. In the one-photon-per-interferometer
subspace used here only the ``|u,d>`` and ``|d,u>`` path terms survive, so the
written 1/4 prefactor leaves the ket with norm 1/sqrt(2). The pair stores the
normalized ket; ``post_scale`` converts normalized amplitudes back to the
written convention (overlap -1/4, coincidence probability 1/16).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .hilbert import Ket, Operator, Space, lift, matrix_element, projector
from .report import ScenarioReport
from .weak_measure import (
    DEFAULT_T_SMALL,
    FilterSpec,
    PrePostPair,
    filtered_probability,
    sigma_from_components,
    weak_value,
    weak_value_via_filter,
)

POL = ("up", "down")
PATH = ("u", "d")
PHOTONS = ("A", "B")
LOCATIONS = tuple(f"{mu}_{nu}" for nu in PHOTONS for mu in PATH)  # u_A, d_A, u_B, d_B

POST_SCALE = np.sqrt(0.5)


def space() -> Space:
    return Space.of(pol_A=POL, pol_B=POL, path_A=PATH, path_B=PATH)


def pre_state() -> Ket:
    sp = space()
    h = 0.5
    return Ket.from_dict(
        sp,
        {
            ("up", "up", "u", "d"): -h,
            ("down", "down", "u", "d"): +h,
            ("up", "up", "d", "u"): +h,
            ("down", "down", "d", "u"): +h,
        },
    )


def post_state() -> Ket:
    """Normalized coincidence postselection ket."""
    amps = {}
    for pa in POL:
        for pb in POL:
            amps[(pa, pb, "u", "d")] = 1.0
            amps[(pa, pb, "d", "u")] = -1.0
    return Ket.from_dict(space(), amps).normalized()


def _single(levels, keep: str) -> Operator:
    name = "x"
    sp = Space.of(**{name: levels})
    return projector([Ket.basis(sp, keep)])


def _local(pol_op: np.ndarray, path_level: str, nu: str) -> Operator:
    """pol_op on pol_nu times |path_level><path_level| on path_nu, lifted to the full space."""
    sub = Space.of(**{f"pol_{nu}": POL, f"path_{nu}": PATH})
    path_proj = _single(PATH, path_level).matrix
    op = Operator(sub, np.kron(pol_op, path_proj), hermitian=True)
    return lift(op, (f"pol_{nu}", f"path_{nu}"), space())


SIGMA_Z = np.diag([1.0, -1.0])
DOWN = np.diag([0.0, 1.0])


def observables() -> dict[str, Operator]:
    """pi_<mu>_<nu>, sz_pi_<mu>_<nu> and the filter helpers down_pi_<mu>_<nu>."""
    obs = {}
    for loc in LOCATIONS:
        mu, nu = loc.split("_")
        obs[f"pi_{loc}"] = _local(np.eye(2), mu, nu)
    for loc in LOCATIONS:
        mu, nu = loc.split("_")
        obs[f"sz_pi_{loc}"] = _local(SIGMA_Z, mu, nu)
    for loc in LOCATIONS:
        mu, nu = loc.split("_")
        obs[f"down_pi_{loc}"] = _local(DOWN, mu, nu)
    return obs


TABLE_NAMES = tuple(f"{kind}_{loc}" for loc in LOCATIONS for kind in ("pi", "sz_pi"))
HELPER_NAMES = tuple(f"down_pi_{loc}" for loc in LOCATIONS)

# weak values as published; the helpers are filled in by the oracle, not by hand
PUBLISHED_TABLE = {
    "pi_u_A": 0.0,
    "sz_pi_u_A": 1.0,
    "pi_d_A": 1.0,
    "sz_pi_d_A": 0.0,
    "pi_u_B": 1.0,
    "sz_pi_u_B": 0.0,
    "pi_d_B": 0.0,
    "sz_pi_d_B": 1.0,
}


@dataclass(frozen=True, eq=False)
class CheshireScenario:
    pair: PrePostPair
    observables: dict = field(repr=False)
    post_scale: float = POST_SCALE

    @property
    def overlap(self) -> complex:
        """<post|pre> in the written-prefactor convention."""
        return self.post_scale * self.pair.overlap

    @property
    def postselection_probability(self) -> float:
        return abs(self.overlap) ** 2


def build_scenario() -> CheshireScenario:
    return CheshireScenario(PrePostPair(pre_state(), post_state()), observables())


def weak_value_table(s: CheshireScenario) -> dict[str, complex]:
    return {name: weak_value(s.observables[name], s.pair) for name in TABLE_NAMES}


def helper_weak_values(s: CheshireScenario) -> dict[str, complex]:
    return {name: weak_value(s.observables[name], s.pair) for name in HELPER_NAMES}


def reduction_amplitude(s: CheshireScenario, op: Operator | str) -> complex:
    """<post| O |pre> in the written-prefactor convention."""
    if isinstance(op, str):
        op = s.observables[op]
    return s.post_scale * matrix_element(s.pair.post, op, s.pair.pre)


def filter_generator(s: CheshireScenario, location: str, polarization_sensitive: bool) -> Operator:
    if location not in LOCATIONS:
        raise KeyError(f"unknown filter location {location!r}; choose from {LOCATIONS}")
    return s.observables[("down_pi_" if polarization_sensitive else "pi_") + location]


def filter_experiment(
    s: CheshireScenario, location: str, polarization_sensitive: bool, t: float
) -> float:
    """Coincidence probability with one filter exp(-O t) inserted at ``location``."""
    op = filter_generator(s, location, polarization_sensitive)
    return s.post_scale**2 * filtered_probability(FilterSpec(op, t), s.pair)


def filter_estimates(s: CheshireScenario, t_small: float = DEFAULT_T_SMALL) -> dict[str, float]:
    """Re of every table and helper weak value, as recovered from filter runs.

    Pi and |down><down| (x) Pi come straight from the filter estimator;
    sigma_z (x) Pi is assembled from those two.
    """
    est = {}
    for loc in LOCATIONS:
        pi = weak_value_via_filter(s.observables[f"pi_{loc}"], s.pair, t_small)
        down = weak_value_via_filter(s.observables[f"down_pi_{loc}"], s.pair, t_small)
        est[f"pi_{loc}"] = pi
        est[f"down_pi_{loc}"] = down
        est[f"sz_pi_{loc}"] = sigma_from_components(pi, down).real
    return est


def swap_labels(name: str) -> str:
    """Image of an observable name under A <-> B together with u <-> d."""
    head, mu, nu = name.rsplit("_", 2)
    return f"{head}_{'d' if mu == 'u' else 'u'}_{'B' if nu == 'A' else 'A'}"


def grin_exchange_report(
    s: CheshireScenario,
    t_small: float = DEFAULT_T_SMALL,
    expected: dict | None = None,
) -> ScenarioReport:
    """Weak values, reduction amplitudes and their filter reconstructions in one report.

    ``expected`` maps entry names to ``(value, provenance, tolerance)``.
    """
    expected = expected or {}
    rep = ScenarioReport("cheshire-filters")

    def add(name, value, default_tol=None):
        exp = expected.get(name)
        if exp is None:
            rep.add(name, value)
        else:
            val, prov, tol = exp
            rep.add(name, value, val, prov, tol if tol is not None else default_tol)

    add("overlap", s.overlap)
    add("overlap_normalized", s.pair.overlap)
    add("postselection_probability", s.postselection_probability)
    wv = {**weak_value_table(s), **helper_weak_values(s)}
    for name, v in wv.items():
        add(f"wv_{name}", v)
    for name in ("pi_u_A", "down_pi_u_A") + tuple(n for n in s.observables if n not in ("pi_u_A", "down_pi_u_A")):
        add(f"reduction_{name}", reduction_amplitude(s, name))
    add("reduction_identity", reduction_amplitude(s, Operator.identity(s.pair.pre.space)))
    est = filter_estimates(s, t_small)
    for name, v in est.items():
        add(f"filter_est_{name}", v, default_tol=1e-3)
        rep.add(f"filter_est_error_{name}", v - wv[name].real)
    return rep


def with_post_equal_pre(s: CheshireScenario) -> CheshireScenario:
    return replace(s, pair=s.pair.with_post(s.pair.pre), post_scale=1.0)
