"""Momentum pointer for three electrons in a Mach-Zehnder interferometer.

Each path configuration carries a product of displaced Gaussians in the
transverse momenta of the three electrons. Pairs that share an arm repel:
the lower-indexed electron of the pair is displaced by +delta_ij and the
higher-indexed one by -delta_ij. Displacements are momentum-mean shifts in
units of the common width ``sigma``.

Everything here is analytic. Each factor is

    G_mu(p) = (2 pi sigma^2)^(-1/4) exp(-(p - mu)^2 / (4 sigma^2))

so that  <G_a|G_b> = exp(-(a - b)^2 / (8 sigma^2))  and
integral p G_a G_b dp = (a + b)/2 * <G_a|G_b>.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product

import numpy as np

from .hilbert import Ket
from .pigeonhole import BOX, PAIRS, build_scenario, three_box_space

PRUNE = 1e-14
MIN_NORM_SQ = 1e-14


@dataclass(frozen=True)
class GaussianBranch:
    """One group of interferometer paths sharing a displacement pattern.

    ``pattern[i][k]`` is the signed multiplicity of the k-th pair kick
    (ordered 12, 13, 23) in electron i's shift. ``paths`` holds
    ``(label, amplitude)`` for the path kets still attached to the branch;
    it is empty once the paths have been projected out.
    """

    coefficient: complex
    shifts: tuple[float, float, float]
    paths: tuple[tuple[str, complex], ...] = ()
    pattern: tuple[tuple[int, int, int], ...] | None = None

    def __post_init__(self):
        s = tuple(float(x) for x in self.shifts)
        if len(s) != 3 or not all(np.isfinite(s)):
            raise ValueError(f"need three finite shifts, got {self.shifts}")
        object.__setattr__(self, "shifts", s)


@dataclass(frozen=True)
class BranchState:
    sigma: float
    branches: tuple[GaussianBranch, ...]
    deltas: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        object.__setattr__(self, "branches", tuple(self.branches))

    @property
    def postselected(self) -> bool:
        return all(not b.paths for b in self.branches)

    def coefficients(self) -> np.ndarray:
        return np.array([b.coefficient for b in self.branches], dtype=complex)

    def shift_matrix(self) -> np.ndarray:
        return np.array([b.shifts for b in self.branches], dtype=float).reshape(-1, 3)


def shift_pattern(path: str) -> tuple[tuple[int, int, int], ...]:
    """Signed multiplicities of (d12, d13, d23) in each electron's shift for a path like 'LLR'."""
    m = np.zeros((3, 3), dtype=int)
    for k, (i, j) in enumerate(PAIRS):
        if path[i - 1] == path[j - 1]:
            m[i - 1, k] += 1
            m[j - 1, k] -= 1
    return tuple(tuple(int(x) for x in row) for row in m)


def _mirror(path: str) -> str:
    return path.translate(str.maketrans("LR", "RL"))


def build_branch_state(deltas, sigma: float = 1.0, pre: Ket | None = None) -> BranchState:
    """State just before the second beam splitter, grouped into L<->R mirror pairs."""
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    deltas = tuple(float(d) for d in deltas)
    if len(deltas) != 3:
        raise ValueError("deltas are (d12, d13, d23)")
    pre = build_scenario().pair.pre if pre is None else pre
    if pre.space != three_box_space():
        raise ValueError("pre-selected state must live on the three-box space")

    branches, seen = [], set()
    for combo in product(BOX, repeat=3):
        path = "".join(combo)
        if path in seen:
            continue
        group = (path, _mirror(path))
        seen.update(group)
        pattern = shift_pattern(path)
        assert pattern == shift_pattern(group[1])
        shifts = tuple(np.array(pattern, dtype=float) @ np.array(deltas))
        branches.append(
            GaussianBranch(
                coefficient=1.0,
                shifts=shifts,
                paths=tuple((p, pre.amplitude(*p)) for p in group),
                pattern=pattern,
            )
        )
    return BranchState(sigma, tuple(branches), deltas)


def postselect_branches(state: BranchState, post: Ket) -> BranchState:
    """Project the path degree of freedom onto ``post``; drop branches that vanish."""
    if post.space != three_box_space():
        raise ValueError(f"postselection ket must live on {three_box_space().names}")
    out = []
    for b in state.branches:
        if not b.paths:
            raise ValueError("state is already postselected")
        amp = sum(a * np.conj(post.amplitude(*p)) for p, a in b.paths)
        c = b.coefficient * amp
        if abs(c) >= PRUNE:
            out.append(replace(b, coefficient=complex(c), paths=()))
    return replace(state, branches=tuple(out))


def _path_overlap(b1: GaussianBranch, b2: GaussianBranch) -> complex:
    if not b1.paths and not b2.paths:
        return 1.0
    if not b1.paths or not b2.paths:
        raise ValueError("cannot overlap a postselected branch with one that carries paths")
    amps2 = dict(b2.paths)
    return sum(np.conj(a) * amps2.get(p, 0.0) for p, a in b1.paths)


def branch_overlap(b1: GaussianBranch, b2: GaussianBranch, sigma: float) -> complex:
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    d = np.subtract(b1.shifts, b2.shifts)
    g = np.exp(-np.dot(d, d) / (8 * sigma**2))
    return np.conj(b1.coefficient) * b2.coefficient * _path_overlap(b1, b2) * g


def _weights(state: BranchState) -> np.ndarray:
    """Hermitian matrix conj(c_k) c_l <paths_k|paths_l>."""
    bs = state.branches
    return np.array(
        [
            [np.conj(a.coefficient) * b.coefficient * _path_overlap(a, b) for b in bs]
            for a in bs
        ],
        dtype=complex,
    ).reshape(len(bs), len(bs))


def _gauss_overlaps(mu: np.ndarray, sigma: float) -> np.ndarray:
    diff = mu[:, None, :] - mu[None, :, :]
    return np.exp(-np.sum(diff**2, axis=-1) / (8 * sigma**2))


def norm_sq(state: BranchState) -> float:
    return float(np.sum(_weights(state) * _gauss_overlaps(state.shift_matrix(), state.sigma)).real)


def _checked_norm(state: BranchState) -> float:
    n = norm_sq(state)
    if n < MIN_NORM_SQ:
        raise ValueError(f"state norm^2 {n:.3e} is too small to normalize")
    return n


def mean_momenta(state: BranchState) -> tuple[float, float, float]:
    """<p_i> for the normalized state."""
    n = _checked_norm(state)
    w = _weights(state) * _gauss_overlaps(state.shift_matrix(), state.sigma)
    mu = state.shift_matrix()
    out = []
    for i in range(3):
        mid = (mu[:, None, i] + mu[None, :, i]) / 2
        out.append(float(np.sum(w * mid).real / n))
    return tuple(out)


def relative_momenta(state: BranchState) -> dict[tuple[int, int], float]:
    p = mean_momenta(state)
    return {(i, j): p[i - 1] - p[j - 1] for i, j in PAIRS}


def fidelity_deficit(state: BranchState) -> float:
    """1 - |<Psi_0|Psi>|^2 / ||Psi||^2, with Psi_0 the undisplaced product.

    Written through <G_a|G_b> = o_a o_b exp(a.b / 4 sigma^2), which turns the
    difference into an expm1 sum and keeps tiny deficits accurate.
    """
    if not state.postselected:
        raise ValueError("fidelity is defined for postselected states")
    n = _checked_norm(state)
    mu = state.shift_matrix()
    s2 = state.sigma**2
    o = np.exp(-np.sum(mu**2, axis=1) / (8 * s2))
    c = state.coefficients() * o
    num = np.conj(c) @ np.expm1(mu @ mu.T / (4 * s2)) @ c
    return float(num.real / n)


def fidelity_to_unperturbed(state: BranchState) -> float:
    return 1.0 - fidelity_deficit(state)


def first_order_sums(state: BranchState) -> dict[tuple[int, tuple[int, int]], complex]:
    """sum_b c_b * (signed multiplicity of d_ij in electron k's shift), per (k, ij).

    All entries vanish exactly when the linear term of the Taylor expansion of
    the postselected state cancels.
    """
    if not state.postselected:
        raise ValueError("first-order sums need a postselected state")
    out = {}
    for k in range(3):
        for q, ij in enumerate(PAIRS):
            out[(k + 1, ij)] = complex(
                sum(b.coefficient * b.pattern[k][q] for b in state.branches if b.pattern)
            )
    return out


@dataclass
class ScanRow:
    ratio: float
    mean_momenta: tuple[float, float, float]
    relative_momenta: dict
    fidelity_deficit: float
    norm_sq: float

    @property
    def max_abs_momentum(self) -> float:
        return max(abs(p) for p in self.mean_momenta)


@dataclass
class ScanResult:
    sigma: float
    rows: list[ScanRow] = field(default_factory=list)
    momentum_slope: float = float("nan")
    momentum_prefactor: float = float("nan")
    deficit_slope: float = float("nan")
    deficit_prefactor: float = float("nan")


def _loglog_fit(x, y) -> tuple[float, float]:
    x, y = np.asarray(x, float), np.asarray(y, float)
    keep = (x > 0) & (y > 0)
    if keep.sum() < 2:
        return float("nan"), float("nan")
    slope, icpt = np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)
    return float(slope), float(np.exp(icpt))


def delta_scan(
    sigma: float = 1.0,
    ratios=None,
    post: Ket | None = None,
    pattern=(1.0, 1.0, 1.0),
) -> ScanResult:
    """Sweep delta/sigma and fit log-log slopes of max|<p_i>| and of 1 - F.

    Each pair kick is ``ratio * sigma * pattern[k]``. A zero ratio gives a
    degenerate row that is kept in the table but left out of the fits.
    """
    ratios = default_ratios() if ratios is None else [float(r) for r in ratios]
    if not ratios:
        raise ValueError("delta_scan needs at least one ratio")
    if any(r < 0 or r > 0.5 for r in ratios):
        raise ValueError("ratios must lie in [0, 0.5]")
    post = build_scenario().pair.post if post is None else post

    res = ScanResult(sigma=sigma)
    for r in ratios:
        deltas = tuple(r * sigma * p for p in pattern)
        st = postselect_branches(build_branch_state(deltas, sigma), post)
        res.rows.append(
            ScanRow(
                ratio=r,
                mean_momenta=mean_momenta(st),
                relative_momenta=relative_momenta(st),
                fidelity_deficit=fidelity_deficit(st),
                norm_sq=norm_sq(st),
            )
        )
    xs = [row.ratio for row in res.rows]
    res.momentum_slope, res.momentum_prefactor = _loglog_fit(
        xs, [row.max_abs_momentum / sigma for row in res.rows]
    )
    res.deficit_slope, res.deficit_prefactor = _loglog_fit(
        xs, [row.fidelity_deficit for row in res.rows]
    )
    return res


def default_ratios(lo: float = 1e-3, hi: float = 1e-1, n: int = 10) -> list[float]:
    return [float(x) for x in np.logspace(np.log10(lo), np.log10(hi), n)]
