"""Three particles in two boxes, and its two-photon PBS realization.

Box states are ``L``/``R`` on subsystems ``p1``, ``p2``, ``p3``. The optical
version maps ``L -> H`` and ``R -> V`` (polarization as the box).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .hilbert import (
    Ket,
    Operator,
    Space,
    inner_product,
    lift,
    matrix_element,
    projector,
    tensor,
    tensor_all,
)
from .weak_measure import PrePostPair, weak_value

BOX = ("L", "R")
PARTICLES = ("p1", "p2", "p3")
PAIRS = tuple(combinations((1, 2, 3), 2))

S2 = np.sqrt(0.5)


def plus(name: str) -> Ket:
    return Ket(Space.of(**{name: BOX}), [S2, S2])


def plus_i(name: str) -> Ket:
    return Ket(Space.of(**{name: BOX}), [S2, 1j * S2])


def three_box_space() -> Space:
    return Space.of(**{p: BOX for p in PARTICLES})


def pair_projector(i: int, j: int, kind: str = "same") -> Operator:
    """Projector on particles i, j in the three-particle space.

    ``kind`` is ``same`` (LL + RR), or one of ``LL``, ``RR``, ``LR``, ``RL``.
    """
    a, b = f"p{i}", f"p{j}"
    pair_space = Space.of(**{a: BOX, b: BOX})
    occupations = {"same": [("L", "L"), ("R", "R")]}.get(kind)
    if occupations is None:
        if len(kind) != 2 or set(kind) - set(BOX):
            raise ValueError(f"unknown pair projector kind {kind!r}")
        occupations = [tuple(kind)]
    pair_op = projector([Ket.basis(pair_space, *occ) for occ in occupations])
    return lift(pair_op, (a, b), three_box_space())


@dataclass(frozen=True, eq=False)
class PigeonholeScenario:
    pair: PrePostPair
    pair_projectors: dict = field(repr=False)


def build_scenario() -> PigeonholeScenario:
    pre = tensor_all(plus(p) for p in PARTICLES)
    post = tensor_all(plus_i(p) for p in PARTICLES)
    projs = {ij: pair_projector(*ij) for ij in PAIRS}
    return PigeonholeScenario(PrePostPair(pre, post), projs)


def same_box_weak_values(s: PigeonholeScenario) -> dict:
    return {ij: weak_value(op, s.pair) for ij, op in s.pair_projectors.items()}


# -- two-photon polarizing beam splitter ------------------------------------

POL = ("H", "V")
MODE = ("a", "b")


def photon_space(n: int) -> Space:
    return Space.of(**{f"ph{n}_pol": POL, f"ph{n}_mode": MODE})


def two_photon_space() -> Space:
    return photon_space(1) * photon_space(2)


def pol_ket(h: complex, v: complex, name: str = "pol") -> Ket:
    return Ket(Space.of(**{name: POL}), [h, v])


def diagonal_pol(name: str = "pol") -> Ket:
    """(|H> + |V>)/sqrt2, the preparation state."""
    return pol_ket(S2, S2, name)


def circular_pol(name: str = "pol") -> Ket:
    """(|H> + i|V>)/sqrt2, the detector polarizer state."""
    return pol_ket(S2, 1j * S2, name)


def photon(n: int, pol: Ket, mode: str) -> Ket:
    """Single photon ``n`` in ``mode`` with polarization amplitudes taken from ``pol``."""
    sp = photon_space(n)
    h, v = pol.amplitudes
    return Ket.from_dict(sp, {("H", mode): h, ("V", mode): v})


def diagonal_input() -> Ket:
    """Photon 1 in port a, photon 2 in port b, both diagonally polarized."""
    return tensor(photon(1, diagonal_pol(), "a"), photon(2, diagonal_pol(), "b"))


def _single_photon_pbs() -> np.ndarray:
    # basis (H,a), (H,b), (V,a), (V,b): H keeps its mode, V swaps, no phase
    u = np.zeros((4, 4))
    u[0, 0] = u[1, 1] = 1.0
    u[3, 2] = u[2, 3] = 1.0
    return u


def pbs_transform(state: Ket) -> Ket:
    if state.space != two_photon_space():
        raise ValueError(f"PBS acts on {two_photon_space().names}, got {state.space.names}")
    u1 = _single_photon_pbs()
    return Ket(state.space, np.kron(u1, u1) @ state.amplitudes)


def post_pbs_reference() -> Ket:
    """(1/2)[H_a H_b + V_a V_b + H_a V_a + H_b V_b], written with photon labels.

    Photon 1 entered at a, photon 2 at b; V swaps modes, which fixes which
    labeled photon occupies which output in each term.
    """
    sp = two_photon_space()
    return Ket.from_dict(
        sp,
        {
            ("H", "a", "H", "b"): 0.5,  # H_a H_b
            ("V", "b", "V", "a"): 0.5,  # V_a V_b
            ("H", "a", "V", "a"): 0.5,  # H_a V_a
            ("V", "b", "H", "b"): 0.5,  # H_b V_b
        },
    )


@dataclass(frozen=True, eq=False)
class PBSExperiment:
    input: Ket
    detector_a: Ket = field(default_factory=circular_pol)
    detector_b: Ket = field(default_factory=circular_pol)

    def __post_init__(self):
        if self.input.space != two_photon_space():
            raise ValueError("PBS experiment input must be a two-photon state")
        for d in (self.detector_a, self.detector_b):
            if d.space.dim != 2:
                raise ValueError("detector projections are single-photon polarization kets")


def coincidence_amplitude(e: PBSExperiment) -> complex:
    """Amplitude for one photon at each detector, both passing their polarizers.

    The photons are indistinguishable at detection, so the two ways of
    assigning labeled photons to detectors add coherently. Events with both
    photons in one mode have no overlap with either assignment.
    """
    out = pbs_transform(e.input)
    one_at_a = tensor(photon(1, e.detector_a, "a"), photon(2, e.detector_b, "b"))
    one_at_b = tensor(photon(1, e.detector_b, "b"), photon(2, e.detector_a, "a"))
    return inner_product(one_at_a, out) + inner_product(one_at_b, out)


def coincidence_probability(e: PBSExperiment) -> float:
    return abs(coincidence_amplitude(e)) ** 2


def detection_probability(state: Ket, detector: Ket) -> float:
    """Single photon through a polarizer."""
    return abs(np.vdot(detector.amplitudes, state.amplitudes)) ** 2


def triple_coincidence_probability(
    e: PBSExperiment,
    photon3: Ket | None = None,
    detector_c: Ket | None = None,
) -> float:
    photon3 = diagonal_pol() if photon3 is None else photon3
    detector_c = circular_pol() if detector_c is None else detector_c
    return detection_probability(photon3, detector_c) * coincidence_probability(e)


def same_box_matrix_element(pol1: Ket, pol2: Ket, det_a: Ket, det_b: Ket) -> complex:
    """<det_a det_b| Pi_same |pol1 pol2> on two polarization qubits (H -> L, V -> R).

    Under the PBS conventions used here this equals the coincidence amplitude
    exactly, so the proportionality constant between the two routes is 1.
    """
    sp = Space.of(q1=POL, q2=POL)
    proj = projector([Ket.basis(sp, "H", "H"), Ket.basis(sp, "V", "V")])
    ket = Ket(sp, np.kron(pol1.amplitudes, pol2.amplitudes))
    bra = Ket(sp, np.kron(det_a.amplitudes, det_b.amplitudes))
    return matrix_element(bra, proj, ket)


ROUTE_PROPORTIONALITY = 1.0
PBS_CONVENTION = "H transmitted (mode kept), V reflected (mode swapped), no reflection phase"
