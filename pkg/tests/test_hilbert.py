import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import complex_vectors, finite, random_ket
from postselect import cheshire
from postselect.hilbert import (
    CompositionError,
    DimensionError,
    Ket,
    Operator,
    Space,
    apply,
    inner_product,
    lift,
    matrix_element,
    projector,
    tensor,
)
from postselect.pigeonhole import pair_projector, plus, plus_i, three_box_space

S2 = np.sqrt(0.5)


def box(name):
    return Space.of(**{name: ("L", "R")})


def test_tensor_basis_states():
    ll = tensor(Ket.basis(box("a"), "L"), Ket.basis(box("b"), "L"))
    assert ll.amplitude("L", "L") == 1
    assert ll.norm_sq == 1
    assert ll.space.names == ("a", "b")


def test_tensor_plus_plus():
    out = tensor(plus("a"), plus("b"))
    np.testing.assert_allclose(out.amplitudes, [0.5] * 4, atol=1e-15)


def test_tensor_identity():
    i4 = tensor(Operator.identity(box("a")), Operator.identity(box("b")))
    np.testing.assert_array_equal(i4.matrix, np.eye(4))


def test_tensor_rejects_shared_subsystem():
    with pytest.raises(CompositionError):
        tensor(plus("a"), plus("a"))


def test_inner_products():
    assert inner_product(plus_i("q"), plus("q")) == pytest.approx((1 - 1j) / 2, abs=1e-15)
    assert inner_product(Ket.basis(box("q"), "L"), Ket.basis(box("q"), "R")) == 0
    s = cheshire.build_scenario()
    assert s.overlap == pytest.approx(-0.25, abs=1e-12)


def test_inner_product_dimension_mismatch():
    with pytest.raises(DimensionError):
        inner_product(plus("a"), tensor(plus("a"), plus("b")))


def test_apply_projector_on_cheshire_state():
    s = cheshire.build_scenario()
    out = apply(s.observables["pi_u_A"], s.pair.pre)
    sp = cheshire.space()
    ref = Ket.from_dict(
        sp, {("up", "up", "u", "d"): -0.5, ("down", "down", "u", "d"): 0.5}
    )
    assert out.allclose(ref)


def test_apply_identity(rng):
    k = random_ket(rng, three_box_space())
    assert apply(Operator.identity(k.space), k).allclose(k)


def test_projector_same_box_from_kets():
    sp = Space.of(p1=("L", "R"), p2=("L", "R"))
    p = projector([Ket.basis(sp, "L", "L"), Ket.basis(sp, "R", "R")])
    np.testing.assert_array_equal(p.matrix, np.diag([1, 0, 0, 1]))
    assert p.is_projector()


def test_projector_single_and_complete():
    sp = box("q")
    np.testing.assert_array_equal(projector([Ket.basis(sp, "L")]).matrix, np.diag([1, 0]))
    full = projector([Ket.basis(three_box_space(), *lab) for lab in
                      [("L", "L", "L"), ("L", "L", "R"), ("L", "R", "L"), ("L", "R", "R"),
                       ("R", "L", "L"), ("R", "L", "R"), ("R", "R", "L"), ("R", "R", "R")]])
    assert full.allclose(Operator.identity(three_box_space()))


def test_projector_rejects_non_orthogonal():
    with pytest.raises(ValueError, match="orthogonal"):
        projector([plus("q"), Ket.basis(box("q"), "L")])


def test_lift_sigma_z_eigenaction():
    s = cheshire.build_scenario()
    sp = cheshire.space()
    sub = Space.of(pol_A=cheshire.POL)
    sz = lift(Operator(sub, np.diag([1, -1]), hermitian=True), ["pol_A"], sp)
    up = Ket.basis(sp, "up", "down", "u", "d")
    assert apply(sz, up).allclose(up)
    assert apply(sz, Ket.basis(sp, "down", "up", "d", "u")).allclose(-Ket.basis(sp, "down", "up", "d", "u"))
    assert s.pair.pre.space == sp


def test_lifted_projectors_commute():
    obs = cheshire.observables()
    a, b = obs["pi_u_A"], obs["pi_d_B"]
    assert (a @ b).allclose(b @ a)


def test_lift_non_contiguous_targets_match_manual_kron():
    # particles 1 and 3 of three: compare with an explicit index loop
    op = pair_projector(1, 3)
    m = np.zeros((8, 8))
    for idx in range(8):
        bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1]
        if bits[0] == bits[2]:
            m[idx, idx] = 1
    np.testing.assert_array_equal(op.matrix.real, m)


def test_lift_same_box_factorizes_off_particle_three():
    from postselect.pigeonhole import build_scenario

    s = build_scenario()
    full = matrix_element(s.pair.post, s.pair_projectors[(1, 2)], s.pair.pre)
    sp2 = Space.of(p1=("L", "R"), p2=("L", "R"))
    p2 = projector([Ket.basis(sp2, "L", "L"), Ket.basis(sp2, "R", "R")])
    pair_amp = matrix_element(tensor(plus_i("p1"), plus_i("p2")), p2, tensor(plus("p1"), plus("p2")))
    assert full == pytest.approx(pair_amp * inner_product(plus_i("p3"), plus("p3")), abs=1e-15)


def test_lift_unknown_subsystem():
    op = Operator.identity(box("zz"))
    with pytest.raises(CompositionError):
        lift(op, ["zz"], three_box_space())


def test_ket_rejects_wrong_size():
    with pytest.raises(DimensionError):
        Ket(box("q"), [1, 0, 0])


def test_values_are_immutable():
    k = plus("q")
    with pytest.raises(ValueError):
        k.amplitudes[0] = 0


# -- properties ---------------------------------------------------------------

SP = Space.of(a=("0", "1"), b=("0", "1", "2"))


@given(complex_vectors(6), complex_vectors(6), finite, finite, st.integers(0, 2**32 - 1))
def test_apply_is_linear(x, y, a, b, seed):
    m = np.random.default_rng(seed).normal(size=(6, 6)) + 0j
    op = Operator(SP, m)
    lhs = apply(op, Ket(SP, a * x + b * y))
    rhs = a * apply(op, Ket(SP, x)) + b * apply(op, Ket(SP, y))
    assert lhs.allclose(rhs, atol=1e-12)


@given(complex_vectors(2), complex_vectors(3), complex_vectors(2))
def test_tensor_associative(x, y, z):
    kx = Ket(Space.of(a=("0", "1")), x)
    ky = Ket(Space.of(b=("0", "1", "2")), y)
    kz = Ket(Space.of(c=("0", "1")), z)
    left = tensor(tensor(kx, ky), kz)
    right = tensor(kx, tensor(ky, kz))
    np.testing.assert_allclose(left.amplitudes, right.amplitudes, rtol=0, atol=1e-14)
    assert left.space == right.space


@given(complex_vectors(6), complex_vectors(6))
def test_inner_product_symmetries(x, y):
    kx, ky = Ket(SP, x), Ket(SP, y)
    xx = inner_product(kx, kx)
    assert xx.imag == 0 and xx.real >= 0
    assert inner_product(kx, ky) == pytest.approx(inner_product(ky, kx).conjugate(), abs=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_projector_idempotent_hermitian(seed, rank):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    p = projector([Ket(SP, q[:, k]) for k in range(rank)])
    np.testing.assert_allclose(p.matrix @ p.matrix, p.matrix, rtol=0, atol=1e-12)
    np.testing.assert_allclose(p.matrix, p.matrix.conj().T, rtol=0, atol=1e-12)
