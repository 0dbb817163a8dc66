"""Weak values, postselection probabilities and nonunitary filter evolution."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hilbert import ATOL, Ket, Operator, apply, inner_product, matrix_element

ORTHOGONALITY_FLOOR = 1e-10
DEFAULT_T_SMALL = 1e-4


class OrthogonalityError(ValueError):
    """Pre- and postselected states are (numerically) orthogonal."""

    def __init__(self, overlap_abs: float):
        self.overlap_abs = overlap_abs
        super().__init__(
            f"|<post|pre>| = {overlap_abs:.3e} is below {ORTHOGONALITY_FLOOR:g}; "
            "weak value undefined"
        )


class EstimatorError(ValueError):
    """The filter estimator has no signal to work with."""


@dataclass(frozen=True, eq=False)
class PrePostPair:
    pre: Ket
    post: Ket
    overlap: complex = field(init=False)

    def __post_init__(self):
        if self.pre.space != self.post.space:
            raise ValueError("pre and post live in different spaces")
        for name, k in (("pre", self.pre), ("post", self.post)):
            if not k.is_normalized():
                raise ValueError(f"{name} state is not normalized (norm^2={k.norm_sq!r})")
        object.__setattr__(self, "overlap", inner_product(self.post, self.pre))

    def with_post(self, post: Ket) -> "PrePostPair":
        return PrePostPair(self.pre, post)


@dataclass(frozen=True, eq=False)
class FilterSpec:
    generator: Operator
    strength: float

    def __post_init__(self):
        if not self.generator.is_hermitian():
            raise ValueError("filter generator must be Hermitian")
        if np.linalg.eigvalsh(self.generator.matrix).min() < -ATOL:
            raise ValueError("filter generator must be positive semidefinite")
        if not (self.strength >= 0 and np.isfinite(self.strength)):
            raise ValueError(f"filter strength must be finite and >= 0, got {self.strength}")


def weak_value(op: Operator, pair: PrePostPair) -> complex:
    """<post|op|pre> / <post|pre>."""
    if abs(pair.overlap) < ORTHOGONALITY_FLOOR:
        raise OrthogonalityError(abs(pair.overlap))
    return matrix_element(pair.post, op, pair.pre) / pair.overlap


def postselection_probability(pair: PrePostPair) -> float:
    return abs(pair.overlap) ** 2


def evolution_matrix(generator: Operator, t: float) -> np.ndarray:
    """exp(-generator * t) by spectral decomposition. Any real t, any Hermitian generator."""
    if not generator.is_hermitian():
        raise ValueError("generator must be Hermitian")
    w, v = np.linalg.eigh(generator.matrix)
    return (v * np.exp(-w * t)) @ v.conj().T


def projector_evolution_matrix(proj: Operator, t: float) -> np.ndarray:
    """Closed form I + (e^{-t} - 1) P, valid only for orthogonal projectors."""
    if not proj.is_projector():
        raise ValueError("closed form needs an orthogonal projector")
    return np.eye(proj.space.dim) + np.expm1(-t) * proj.matrix


def filter_evolve(spec: FilterSpec, ket: Ket) -> Ket:
    """Apply exp(-O t) to ``ket``; the result is left unnormalized."""
    u = evolution_matrix(spec.generator, spec.strength)
    out = Ket(ket.space, u @ ket.amplitudes)
    if spec.generator.is_projector():
        closed = projector_evolution_matrix(spec.generator, spec.strength) @ ket.amplitudes
        if not np.allclose(closed, out.amplitudes, rtol=0, atol=ATOL):
            raise ArithmeticError("spectral and closed-form filter evolution disagree")
        out = Ket(ket.space, closed)
    return out


def filtered_amplitude(spec: FilterSpec, pair: PrePostPair) -> complex:
    return inner_product(pair.post, filter_evolve(spec, pair.pre))


def filtered_probability(spec: FilterSpec, pair: PrePostPair) -> float:
    """|<post| exp(-O t) |pre>|^2, computed exactly."""
    return abs(filtered_amplitude(spec, pair)) ** 2


def weak_value_via_filter(
    op: Operator,
    pair: PrePostPair,
    t_small: float = DEFAULT_T_SMALL,
    richardson: bool = False,
) -> float:
    """Estimate Re<op>_w from the first-order drop of the filtered coincidence rate.

    Uses [P(0) - P(t)] / (2 t P(0)), which carries an O(t) bias. With
    ``richardson=True`` the steps t and t/2 are combined to cancel that bias.
    """
    if not 0 < t_small <= 1e-3:
        raise ValueError(f"t_small must lie in (0, 1e-3], got {t_small}")
    p0 = filtered_probability(FilterSpec(op, 0.0), pair)
    if p0 < 1e-12:
        raise EstimatorError(f"postselection probability {p0:.3e} too small for the estimator")

    def estimate(t: float) -> float:
        pt = filtered_probability(FilterSpec(op, t), pair)
        return (p0 - pt) / (2.0 * t * p0)

    if not richardson:
        return estimate(t_small)
    return 2.0 * estimate(t_small / 2) - estimate(t_small)


def sigma_from_components(pi_w: complex, down_pi_w: complex) -> complex:
    """Weak value of sigma_z (x) Pi from those of Pi and |down><down| (x) Pi."""
    return pi_w - 2 * down_pi_w


def unconditioned_norm(spec: FilterSpec, ket: Ket) -> float:
    """Squared norm after filtering, i.e. the survival probability without postselection."""
    return filter_evolve(spec, ket).norm_sq


def expectation(op: Operator, ket: Ket) -> complex:
    return inner_product(ket, apply(op, ket))
