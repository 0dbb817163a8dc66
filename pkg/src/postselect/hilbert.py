"""Labeled finite-dimensional Hilbert spaces: kets, operators, tensor products.

Every space is an ordered tuple of named subsystems, each with named levels.
Basis states are enumerated in row-major order over that tuple, so the first
subsystem is the most significant index. Factors are never reordered
implicitly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

ATOL = 1e-12


class CompositionError(ValueError):
    """Raised when two objects cannot be combined (overlapping or mismatched spaces)."""


class DimensionError(ValueError):
    """Raised when operands do not live in the same space."""


@dataclass(frozen=True)
class Subsystem:
    name: str
    levels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if len(set(self.levels)) != len(self.levels):
            raise ValueError(f"duplicate level names in subsystem {self.name!r}")
        if not self.levels:
            raise ValueError(f"subsystem {self.name!r} has no levels")

    @property
    def dim(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class Space:
    subsystems: tuple[Subsystem, ...]

    def __post_init__(self):
        object.__setattr__(self, "subsystems", tuple(self.subsystems))
        names = self.names
        if len(set(names)) != len(names):
            raise CompositionError(f"duplicate subsystem names: {names}")

    @classmethod
    def of(cls, **levels: Sequence[str]) -> "Space":
        """``Space.of(p1=("L", "R"), p2=("L", "R"))``."""
        return cls(tuple(Subsystem(n, tuple(lv)) for n, lv in levels.items()))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.subsystems)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims, dtype=int)) if self.subsystems else 1

    def subsystem(self, name: str) -> Subsystem:
        for s in self.subsystems:
            if s.name == name:
                return s
        raise KeyError(f"unknown subsystem {name!r}; space has {self.names}")

    def labels(self) -> list[tuple[tuple[str, str], ...]]:
        """All basis labels as tuples of (subsystem, level) pairs, in index order."""
        return [
            tuple(zip(self.names, combo))
            for combo in itertools.product(*(s.levels for s in self.subsystems))
        ]

    def index(self, *levels: str, **by_name: str) -> int:
        """Flat index of a basis state, given positionally or by subsystem name."""
        if levels and by_name:
            raise TypeError("give levels positionally or by name, not both")
        if by_name:
            if set(by_name) != set(self.names):
                raise KeyError(f"need a level for each of {self.names}")
            levels = tuple(by_name[n] for n in self.names)
        if len(levels) != len(self.subsystems):
            raise DimensionError(f"expected {len(self.subsystems)} levels, got {len(levels)}")
        idx = 0
        for sub, lv in zip(self.subsystems, levels):
            idx = idx * sub.dim + sub.levels.index(lv)
        return idx

    def __mul__(self, other: "Space") -> "Space":
        overlap = set(self.names) & set(other.names)
        if overlap:
            raise CompositionError(f"subsystems {sorted(overlap)} appear in both factors")
        return Space(self.subsystems + other.subsystems)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Ket:
    space: Space
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.space.dim:
            raise DimensionError(
                f"{amps.size} amplitudes for a space of dimension {self.space.dim}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("non-finite amplitude")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def basis(cls, space: Space, *levels: str, **by_name: str) -> "Ket":
        amps = np.zeros(space.dim, dtype=complex)
        amps[space.index(*levels, **by_name)] = 1.0
        return cls(space, amps)

    @classmethod
    def from_dict(cls, space: Space, coeffs: dict) -> "Ket":
        """Build from ``{("L", "R"): amp, ...}``; missing labels get amplitude zero."""
        amps = np.zeros(space.dim, dtype=complex)
        for levels, c in coeffs.items():
            if isinstance(levels, str):
                levels = (levels,)
            amps[space.index(*levels)] += c
        return cls(space, amps)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def is_normalized(self, atol: float = ATOL) -> bool:
        return abs(self.norm_sq - 1.0) <= atol

    def normalized(self) -> "Ket":
        n = self.norm
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return Ket(self.space, self.amplitudes / n)

    def amplitude(self, *levels: str, **by_name: str) -> complex:
        return complex(self.amplitudes[self.space.index(*levels, **by_name)])

    def __add__(self, other: "Ket") -> "Ket":
        _same_space(self.space, other.space)
        return Ket(self.space, self.amplitudes + other.amplitudes)

    def __sub__(self, other: "Ket") -> "Ket":
        _same_space(self.space, other.space)
        return Ket(self.space, self.amplitudes - other.amplitudes)

    def __mul__(self, c: complex) -> "Ket":
        return Ket(self.space, self.amplitudes * c)

    __rmul__ = __mul__

    def __truediv__(self, c: complex) -> "Ket":
        return Ket(self.space, self.amplitudes / c)

    def __neg__(self) -> "Ket":
        return Ket(self.space, -self.amplitudes)

    def allclose(self, other: "Ket", atol: float = ATOL) -> bool:
        return self.space == other.space and np.allclose(
            self.amplitudes, other.amplitudes, rtol=0, atol=atol
        )

    def __repr__(self) -> str:
        terms = [
            f"{a:.4g}|{','.join(lv for _, lv in lab)}>"
            for a, lab in zip(self.amplitudes, self.space.labels())
            if abs(a) > ATOL
        ]
        return f"Ket({' + '.join(terms) or '0'})"


@dataclass(frozen=True, eq=False)
class Operator:
    space: Space
    matrix: np.ndarray = field(repr=False)
    hermitian: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.space.dim
        if m.shape != (d, d):
            raise DimensionError(f"matrix shape {m.shape} for a space of dimension {d}")
        if self.hermitian and not np.allclose(m, m.conj().T, rtol=0, atol=ATOL):
            raise ValueError("operator flagged Hermitian but M != M^dagger")
        object.__setattr__(self, "matrix", _frozen(m))

    @classmethod
    def identity(cls, space: Space) -> "Operator":
        return cls(space, np.eye(space.dim), hermitian=True)

    @property
    def dagger(self) -> "Operator":
        return Operator(self.space, self.matrix.conj().T, hermitian=self.hermitian)

    def is_hermitian(self, atol: float = ATOL) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, rtol=0, atol=atol))

    def is_projector(self, atol: float = ATOL) -> bool:
        m = self.matrix
        return self.is_hermitian(atol) and bool(np.allclose(m @ m, m, rtol=0, atol=atol))

    def __matmul__(self, other):
        if isinstance(other, Ket):
            return apply(self, other)
        _same_space(self.space, other.space)
        return Operator(self.space, self.matrix @ other.matrix)

    def __add__(self, other: "Operator") -> "Operator":
        _same_space(self.space, other.space)
        return Operator(
            self.space, self.matrix + other.matrix, hermitian=self.hermitian and other.hermitian
        )

    def __sub__(self, other: "Operator") -> "Operator":
        _same_space(self.space, other.space)
        return Operator(
            self.space, self.matrix - other.matrix, hermitian=self.hermitian and other.hermitian
        )

    def __mul__(self, c: complex) -> "Operator":
        real = complex(c).imag == 0
        return Operator(self.space, self.matrix * c, hermitian=self.hermitian and real)

    __rmul__ = __mul__

    def allclose(self, other: "Operator", atol: float = ATOL) -> bool:
        return self.space == other.space and np.allclose(
            self.matrix, other.matrix, rtol=0, atol=atol
        )


def _same_space(a: Space, b: Space) -> None:
    if a != b:
        raise DimensionError(f"space mismatch: {a.names} vs {b.names}")


def tensor(a, b):
    """Kronecker product, factor order a then b. Works for two kets or two operators."""
    space = a.space * b.space
    if isinstance(a, Ket) and isinstance(b, Ket):
        return Ket(space, np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, Operator) and isinstance(b, Operator):
        return Operator(
            space, np.kron(a.matrix, b.matrix), hermitian=a.hermitian and b.hermitian
        )
    raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def tensor_all(items: Iterable):
    items = list(items)
    if not items:
        raise ValueError("nothing to tensor")
    out = items[0]
    for it in items[1:]:
        out = tensor(out, it)
    return out


def inner_product(bra: Ket, ket: Ket) -> complex:
    """<bra|ket>, conjugating the left argument."""
    if bra.space.dim != ket.space.dim:
        raise DimensionError(f"dimension mismatch: {bra.space.dim} vs {ket.space.dim}")
    _same_space(bra.space, ket.space)
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def apply(op: Operator, ket: Ket) -> Ket:
    if op.space.dim != ket.space.dim:
        raise DimensionError(f"dimension mismatch: {op.space.dim} vs {ket.space.dim}")
    _same_space(op.space, ket.space)
    return Ket(ket.space, op.matrix @ ket.amplitudes)


def matrix_element(bra: Ket, op: Operator, ket: Ket) -> complex:
    return inner_product(bra, apply(op, ket))


def outer(ket: Ket, bra: Ket | None = None) -> Operator:
    bra = ket if bra is None else bra
    _same_space(ket.space, bra.space)
    return Operator(ket.space, np.outer(ket.amplitudes, bra.amplitudes.conj()))


def projector(kets: Sequence[Ket], atol: float = ATOL) -> Operator:
    """Sum of |k><k| over orthonormal kets."""
    kets = list(kets)
    if not kets:
        raise ValueError("projector needs at least one ket")
    space = kets[0].space
    for k in kets:
        _same_space(space, k.space)
        if not k.is_normalized(atol):
            raise ValueError(f"ket not normalized (norm^2={k.norm_sq!r})")
    vecs = np.stack([k.amplitudes for k in kets], axis=1)
    gram = vecs.conj().T @ vecs
    if not np.allclose(gram, np.eye(len(kets)), rtol=0, atol=atol):
        raise ValueError("projector inputs are not mutually orthogonal")
    m = vecs @ vecs.conj().T
    # exact Hermitian symmetrization removes rounding asymmetry
    return Operator(space, (m + m.conj().T) / 2, hermitian=True)


def lift(op: Operator, targets: Sequence[str], space: Space) -> Operator:
    """Embed ``op`` (acting on ``targets`` in its own order) into ``space``.

    Identity is padded on all other subsystems. ``op.space`` must consist of
    exactly the target subsystems with matching levels.
    """
    targets = tuple(targets)
    for t in targets:
        try:
            sub = space.subsystem(t)
        except KeyError as exc:
            raise CompositionError(str(exc)) from None
        if sub != op.space.subsystem(t):
            raise CompositionError(f"subsystem {t!r} has different levels in op and space")
    if set(op.space.names) != set(targets) or len(targets) != len(op.space.names):
        raise CompositionError(f"op acts on {op.space.names}, targets are {targets}")

    n = len(space.subsystems)
    dims = space.dims
    pos = [space.names.index(name) for name in op.space.names]
    rest = [i for i in range(n) if i not in pos]

    # permute full-space axes so targets lead, in op's factor order
    perm = pos + rest
    d_r = int(np.prod([dims[i] for i in rest])) if rest else 1
    big = np.kron(op.matrix, np.eye(d_r))
    shape = [dims[i] for i in perm]
    big = big.reshape(shape + shape)
    inv = np.argsort(perm)
    big = big.transpose(list(inv) + [n + i for i in inv])
    return Operator(space, big.reshape(space.dim, space.dim), hermitian=op.hermitian)
