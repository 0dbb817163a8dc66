"""Acceptance checks, one test per criterion.

Each test records a single PASS/FAIL line; the lines are printed in the
terminal summary (see conftest.py) and when this file is run as a script.
Tolerances are the target ones and are not loosened when a check fails.
"""
import numpy as np
import pytest

from postselect import cheshire, oracles, pigeonhole, pointer_sim
from postselect.hilbert import Ket, Operator, Space, projector
from postselect.weak_measure import (
    FilterSpec,
    PrePostPair,
    filter_evolve,
    weak_value,
    weak_value_via_filter,
)

RESULTS: dict[int, str] = {}
N_RANDOM = 100


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"{'PASS' if ok else 'FAIL'} criterion {n:>2}: {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def test_criterion_01_same_box_weak_values():
    wv = pigeonhole.same_box_weak_values(pigeonhole.build_scenario())
    worst = max(abs(v) for v in wv.values())
    record(1, len(wv) == 3 and worst <= 1e-12, f"pigeonhole same-box weak values, max |w| = {worst:.2e} (tol 1e-12)")


def test_criterion_02_cheshire_table():
    s = cheshire.build_scenario()
    table = cheshire.weak_value_table(s)
    table_err = max(abs(table[n] - cheshire.PUBLISHED_TABLE[n]) for n in cheshire.TABLE_NAMES)
    helpers = cheshire.helper_weak_values(s)
    helper_err = max(abs(helpers[n] - oracles.cheshire_weak_value(n)) for n in cheshire.HELPER_NAMES)
    ok = len(table) == 8 and len(helpers) == 4 and table_err <= 1e-12 and helper_err <= 1e-12
    record(2, ok, f"Cheshire table err {table_err:.2e}, helper-vs-oracle err {helper_err:.2e} (tol 1e-12)")


def test_criterion_03_overlap_probability():
    s = cheshire.build_scenario()
    e1 = abs(s.overlap - (-0.25))
    e2 = abs(s.postselection_probability - 1 / 16)
    record(3, e1 <= 1e-12 and e2 <= 1e-12, f"overlap err {e1:.2e}, probability err {e2:.2e} (tol 1e-12)")


def test_criterion_04_pbs_coincidences():
    e = pigeonhole.PBSExperiment(pigeonhole.diagonal_input())
    pc = pigeonhole.coincidence_probability(e)
    p3 = pigeonhole.detection_probability(pigeonhole.diagonal_pol(), pigeonhole.circular_pol())
    triple = pigeonhole.triple_coincidence_probability(e)
    ok = pc <= 1e-12 and triple <= 1e-12 and abs(p3 - 0.5) <= 1e-12
    record(4, ok, f"coincidence {pc:.2e}, triple {triple:.2e}, photon-3 branch {float(p3)!r} (tol 1e-12)")


def test_criterion_05_reduction_amplitudes():
    s = cheshire.build_scenario()
    a = cheshire.reduction_amplitude(s, "pi_u_A")
    b = cheshire.reduction_amplitude(s, "down_pi_u_A")
    ok = abs(a) <= 1e-12 and abs(b - 1 / 8) <= 1e-12
    record(5, ok, f"<post|Pi_u_A|pre> = {a.real:+.2e}, <post|down Pi_u_A|pre> err {abs(b - 0.125):.2e} (tol 1e-12)")


def test_criterion_06_filter_estimator():
    s = cheshire.build_scenario()
    errs = {}
    for loc in cheshire.LOCATIONS:
        pi = weak_value_via_filter(s.observables[f"pi_{loc}"], s.pair, 1e-4)
        down = weak_value_via_filter(s.observables[f"down_pi_{loc}"], s.pair, 1e-4)
        for name, est in ((f"pi_{loc}", pi), (f"down_pi_{loc}", down), (f"sz_pi_{loc}", pi - 2 * down)):
            errs[name] = abs(est - weak_value(s.observables[name], s.pair).real)
    flat = [abs(cheshire.filter_experiment(s, "u_A", False, t) - 1 / 16) for t in (0.01, 0.1, 1.0, 10.0)]
    ok = len(errs) == 12 and max(errs.values()) <= 1e-3 and max(flat) <= 1e-12
    record(6, ok, f"12 filter estimates, max err {max(errs.values()):.2e} (tol 1e-3); "
                  f"P(Pi_u_A,t) - 1/16 max {max(flat):.2e} (tol 1e-12)")


def test_criterion_07_pointer_null_force():
    post = pigeonhole.build_scenario().pair.post
    ratios = pointer_sim.default_ratios(1e-3, 1e-1, 10)
    scan = pointer_sim.delta_scan(1.0, ratios, post)
    lll = Ket.basis(pigeonhole.three_box_space(), "L", "L", "L")
    base = pointer_sim.delta_scan(1.0, ratios, lll)
    deficit_ok = abs(scan.deficit_slope - 2.0) <= 0.1
    momentum_ok = scan.momentum_slope >= 1.9
    base_ok = abs(base.momentum_slope - 1.0) <= 0.05
    record(
        7,
        deficit_ok and momentum_ok and base_ok,
        f"1-F slope {scan.deficit_slope:.4f} (target 2.0 +- 0.1), "
        f"max|<p>| slope {scan.momentum_slope:.4f} (target >= 1.9), "
        f"|LLL> momentum slope {base.momentum_slope:.4f} (target 1.0 +- 0.05)",
    )


def test_criterion_08_first_order_cancellation():
    post = pigeonhole.build_scenario().pair.post
    rng = np.random.default_rng(8)
    worst = 0.0
    for deltas in [(1e-3,) * 3, (0.1, 0.2, 0.3)] + [tuple(rng.uniform(-1, 1, 3)) for _ in range(N_RANDOM)]:
        st = pointer_sim.postselect_branches(pointer_sim.build_branch_state(deltas), post)
        sums = pointer_sim.first_order_sums(st)
        assert len(sums) == 9
        worst = max(worst, max(abs(v) for v in sums.values()))
    record(8, worst <= 1e-12, f"max |sum_k c_k m_k(ij)| over {N_RANDOM + 2} kick sets = {worst:.2e} (tol 1e-12)")


def test_criterion_09_gaussian_oracle():
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(N_RANDOM):
        s1, s2 = rng.uniform(-3, 3, 3), rng.uniform(-3, 3, 3)
        c1, c2 = rng.normal(size=2) + 1j * rng.normal(size=2)
        sigma = rng.uniform(0.5, 2.0)
        closed = np.conj(c1) * c2 * pointer_sim.branch_overlap(
            pointer_sim.GaussianBranch(1.0, tuple(s1)), pointer_sim.GaussianBranch(1.0, tuple(s2)), sigma
        )
        worst = max(worst, abs(closed - oracles.quad_branch_overlap(c1, s1, c2, s2, sigma)))
        for a, b in zip(s1, s2):
            m = (a + b) / 2 * np.exp(-(a - b) ** 2 / (8 * sigma**2))
            worst = max(worst, abs(m - oracles.quad_moment_1d(a, b, sigma)))
    record(9, worst <= 1e-8, f"closed form vs quadrature on {N_RANDOM} branch pairs, max err {worst:.2e} (tol 1e-8)")


def _random_ket(rng, sp):
    v = rng.normal(size=sp.dim) + 1j * rng.normal(size=sp.dim)
    return Ket(sp, v / np.linalg.norm(v))


def _random_psd(rng, sp):
    a = rng.normal(size=(sp.dim, sp.dim)) + 1j * rng.normal(size=(sp.dim, sp.dim))
    h = a @ a.conj().T
    return Operator(sp, (h + h.conj().T) / 2, hermitian=True)


def test_criterion_10_property_suites():
    rng = np.random.default_rng(10)
    sp = Space.of(a=("0", "1"), b=("0", "1", "2"))
    fails = []

    worst = 0.0
    for _ in range(N_RANDOM):
        pair = PrePostPair(_random_ket(rng, sp), _random_ket(rng, sp))
        A = Operator(sp, rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
        B = Operator(sp, rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        lhs = weak_value(a * A + b * B, pair)
        rhs = a * weak_value(A, pair) + b * weak_value(B, pair)
        worst = max(worst, abs(lhs - rhs) * abs(pair.overlap) / max(1.0, abs(lhs)))
    if worst > 1e-12:
        fails.append(f"linearity {worst:.1e}")

    worst = 0.0
    for _ in range(N_RANDOM):
        q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
        p = projector([Ket(sp, q[:, k]) for k in range(rng.integers(1, 7))]).matrix
        worst = max(worst, np.max(np.abs(p @ p - p)), np.max(np.abs(p - p.conj().T)))
    if worst > 1e-12:
        fails.append(f"idempotence {worst:.1e}")

    worst = 0.0
    sp2 = pigeonhole.two_photon_space()
    for _ in range(N_RANDOM):
        x, y = _random_ket(rng, sp2), _random_ket(rng, sp2)
        ux, uy = pigeonhole.pbs_transform(x), pigeonhole.pbs_transform(y)
        worst = max(worst, abs(np.vdot(ux.amplitudes, uy.amplitudes) - np.vdot(x.amplitudes, y.amplitudes)))
    if worst > 1e-12:
        fails.append(f"PBS unitarity {worst:.1e}")

    worst = 0.0
    for _ in range(N_RANDOM):
        h, k = _random_psd(rng, sp), _random_ket(rng, sp)
        t1, t2 = rng.uniform(0, 3, 2)
        two = filter_evolve(FilterSpec(h, t2), filter_evolve(FilterSpec(h, t1), k))
        one = filter_evolve(FilterSpec(h, t1 + t2), k)
        worst = max(worst, np.max(np.abs(two.amplitudes - one.amplitudes)))
    if worst > 1e-12:
        fails.append(f"semigroup {worst:.1e}")

    worst = 0.0
    c = cheshire.build_scenario()
    post = pigeonhole.build_scenario().pair.post
    for _ in range(N_RANDOM):
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
        for op in c.observables.values():
            w0 = weak_value(op, c.pair)
            w1 = weak_value(op, PrePostPair(c.pair.pre * phase, c.pair.post * np.conj(phase) ** 2))
            worst = max(worst, abs(w0 - w1))
        deltas = tuple(rng.uniform(-0.5, 0.5, 3))
        s0 = pointer_sim.postselect_branches(pointer_sim.build_branch_state(deltas), post)
        s1 = pointer_sim.postselect_branches(pointer_sim.build_branch_state(deltas), post * phase)
        worst = max(worst, max(abs(a - b) for a, b in zip(pointer_sim.mean_momenta(s0), pointer_sim.mean_momenta(s1))))
    if worst > 1e-12:
        fails.append(f"global phase {worst:.1e}")

    record(10, not fails, f"5 property suites x {N_RANDOM} seeded instances" + (f"; failing: {', '.join(fails)}" if fails else ""))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
