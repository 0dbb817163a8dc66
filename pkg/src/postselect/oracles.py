"""Brute-force reference computations, kept independent of the main code paths.

Nothing here touches ``hilbert``; states are dicts from basis-label tuples to
amplitudes, and operators act label by label. Gaussian integrals go through
trapezoid quadrature on a fixed grid. Used by the test-suite and by
``scripts/regenerate_expected.py``.
"""
from __future__ import annotations

import cmath
import math
from itertools import product

import numpy as np

R2 = math.sqrt(0.5)


def braket(bra: dict, ket: dict) -> complex:
    return sum(complex(bra.get(k, 0)).conjugate() * v for k, v in ket.items())


def act(rule, ket: dict) -> dict:
    """Apply an operator given as ``rule(label) -> list of (label', amp)``."""
    out: dict = {}
    for lab, amp in ket.items():
        for new, c in rule(lab):
            out[new] = out.get(new, 0) + c * amp
    return out


# -- three boxes -------------------------------------------------------------

def boxes_pre() -> dict:
    return {lab: R2**3 for lab in product("LR", repeat=3)}


def boxes_post() -> dict:
    single = {"L": R2, "R": 1j * R2}
    return {lab: single[lab[0]] * single[lab[1]] * single[lab[2]] for lab in product("LR", repeat=3)}


def same_box_rule(i: int, j: int):
    return lambda lab: [(lab, 1.0)] if lab[i - 1] == lab[j - 1] else []


def boxes_weak_value(i: int, j: int, post: dict | None = None) -> complex:
    post = boxes_post() if post is None else post
    pre = boxes_pre()
    return braket(post, act(same_box_rule(i, j), pre)) / braket(post, pre)


# -- Cheshire ----------------------------------------------------------------
# labels: (pol_A, pol_B, path_A, path_B)

def cheshire_pre() -> dict:
    return {
        ("up", "up", "u", "d"): -0.5,
        ("down", "down", "u", "d"): 0.5,
        ("up", "up", "d", "u"): 0.5,
        ("down", "down", "d", "u"): 0.5,
    }


def cheshire_post_written() -> dict:
    """The written postselection with its 1/4 prefactor, kept in the labeled subspace."""
    out = {}
    for pa, pb in product(("up", "down"), repeat=2):
        out[(pa, pb, "u", "d")] = 0.25
        out[(pa, pb, "d", "u")] = -0.25
    return out


def cheshire_rule(kind: str, mu: str, nu: str):
    pol_i = 0 if nu == "A" else 1
    path_i = 2 if nu == "A" else 3

    def rule(lab):
        if lab[path_i] != mu:
            return []
        if kind == "pi":
            return [(lab, 1.0)]
        if kind == "sz_pi":
            return [(lab, 1.0 if lab[pol_i] == "up" else -1.0)]
        if kind == "down_pi":
            return [(lab, 1.0)] if lab[pol_i] == "down" else []
        raise KeyError(kind)

    return rule


def cheshire_matrix_element(name: str) -> complex:
    """<post|O|pre> in the written convention, O named like ``down_pi_u_A``."""
    kind, mu, nu = name.rsplit("_", 2)
    return braket(cheshire_post_written(), act(cheshire_rule(kind, mu, nu), cheshire_pre()))


def cheshire_overlap() -> complex:
    return braket(cheshire_post_written(), cheshire_pre())


def cheshire_weak_value(name: str) -> complex:
    return cheshire_matrix_element(name) / cheshire_overlap()


def cheshire_projector_filter_probability(name: str, t: float) -> float:
    """|<post|pre> + (e^-t - 1) <post|O|pre>|^2 for a projector O, written convention."""
    a = cheshire_overlap()
    b = cheshire_matrix_element(name)
    return abs(a + math.expm1(-t) * b) ** 2


# -- PBS ---------------------------------------------------------------------

def pbs_coincidence(pol1, pol2, det_a, det_b) -> float:
    """Enumerate both photons' fates through the PBS, keep one photon per output."""
    out_mode = {("a", "H"): "a", ("a", "V"): "b", ("b", "H"): "b", ("b", "V"): "a"}
    pols = ("H", "V")
    amp = 0j
    for s1, s2 in product(range(2), repeat=2):
        m1 = out_mode[("a", pols[s1])]
        m2 = out_mode[("b", pols[s2])]
        if m1 == m2:
            continue
        d1 = det_a if m1 == "a" else det_b
        d2 = det_a if m2 == "a" else det_b
        amp += (
            complex(pol1[s1]) * complex(d1[s1]).conjugate()
            * complex(pol2[s2]) * complex(d2[s2]).conjugate()
        )
    return abs(amp) ** 2


# -- Gaussian pointer --------------------------------------------------------

GRID_HALF_WIDTH = 10.0
GRID_POINTS = 4001


def grid(sigma: float = 1.0, centers=(0.0,)) -> np.ndarray:
    """Uniform grid reaching GRID_HALF_WIDTH widths past the outermost center."""
    lo, hi = min(centers), max(centers)
    return np.linspace(lo - GRID_HALF_WIDTH * sigma, hi + GRID_HALF_WIDTH * sigma, GRID_POINTS)


def gaussian(p: np.ndarray, mu: float, sigma: float) -> np.ndarray:
    return (2 * math.pi * sigma**2) ** -0.25 * np.exp(-((p - mu) ** 2) / (4 * sigma**2))


def quad_overlap_1d(a: float, b: float, sigma: float) -> float:
    p = grid(sigma, (a, b))
    return float(np.trapezoid(gaussian(p, a, sigma) * gaussian(p, b, sigma), p))


def quad_moment_1d(a: float, b: float, sigma: float) -> float:
    p = grid(sigma, (a, b))
    return float(np.trapezoid(p * gaussian(p, a, sigma) * gaussian(p, b, sigma), p))


def quad_branch_overlap(c1, s1, c2, s2, sigma) -> complex:
    g = 1.0
    for a, b in zip(s1, s2):
        g *= quad_overlap_1d(a, b, sigma)
    return complex(c1).conjugate() * complex(c2) * g


def path_shifts(path: str, deltas) -> tuple[float, float, float]:
    """Mean displacement of each electron for one path configuration, by pair enumeration."""
    d = {(1, 2): deltas[0], (1, 3): deltas[1], (2, 3): deltas[2]}
    s = [0.0, 0.0, 0.0]
    for (i, j), dij in d.items():
        if path[i - 1] == path[j - 1]:
            s[i - 1] += dij
            s[j - 1] -= dij
    return tuple(s)


def postselected_terms(deltas, post: dict | None = None) -> list[tuple[complex, tuple]]:
    """One term per path (no grouping): coefficient <post|path><path|pre>, shifts."""
    post = boxes_post() if post is None else post
    pre = boxes_pre()
    terms = []
    for lab in product("LR", repeat=3):
        c = complex(post.get(lab, 0)).conjugate() * pre[lab]
        if c != 0:
            terms.append((c, path_shifts("".join(lab), deltas)))
    return terms


def quad_observables(terms, sigma: float = 1.0) -> dict:
    """Norm, mean momenta and fidelity with the undisplaced product, all by quadrature."""
    n = 0j
    moments = [0j, 0j, 0j]
    amp0 = 0j
    zero = (0.0, 0.0, 0.0)
    for c1, s1 in terms:
        amp0 += quad_branch_overlap(1.0, zero, c1, s1, sigma)
        for c2, s2 in terms:
            ov = [quad_overlap_1d(a, b, sigma) for a, b in zip(s1, s2)]
            w = c1.conjugate() * c2
            n += w * ov[0] * ov[1] * ov[2]
            for i in range(3):
                rest = math.prod(ov[k] for k in range(3) if k != i)
                moments[i] += w * quad_moment_1d(s1[i], s2[i], sigma) * rest
    n = n.real
    return {
        "norm_sq": n,
        "mean": tuple(m.real / n for m in moments),
        "fidelity": abs(amp0) ** 2 / n,
    }


def phase(x: float) -> complex:
    return cmath.exp(1j * x)


def central_difference(f, x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2 * h)
