import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from supersym.errors import DegenerateInterpolation, InvalidSpec
from supersym.linear import FiniteGroup, GradedMap, Slot
from supersym.qmatrix import QMatrix
from supersym.semiabelian import (
    GaloisData,
    GroupSchemeSpec,
    betti_of_space,
    cohomology,
    coordinate_projection,
    curve_shadow,
    det_motive,
    expected_weight_dims,
    h1,
    is_signed_permutation,
    kunneth_projector,
    multiplication_by_n,
    one_motive,
    pairing_symmetry,
    poincare_pairing,
    primitives_match_h1,
    product,
    weight_filtration,
)

specs = st.builds(
    GroupSchemeSpec,
    g=st.integers(0, 2),
    r=st.integers(0, 2),
    u=st.integers(0, 1),
    d=st.integers(0, 1),
    pi0=st.sampled_from([FiniteGroup.trivial(), FiniteGroup.cyclic(2), FiniteGroup.cyclic(3)]),
)


def diag_of(f):
    m = f.to_dense().to_fractions()
    return [m[k][k] for k in range(len(m))]


def test_h1_slots():
    H = h1(GroupSchemeSpec(g=1, r=2, u=3, d=1))
    assert H.slots == {Slot(1, 0): 1, Slot(1, 1): 2, Slot(1, 2): 2}


def test_elliptic_curve_betti(derived):
    assert cohomology(GroupSchemeSpec(g=1)).betti == derived["betti_g1_r0"] == [1, 2, 1]


def test_semiabelian_betti(derived):
    M = cohomology(GroupSchemeSpec(g=1, r=1))
    assert M.betti == derived["betti_g1_r1"]
    assert sum(M.betti) == 2 ** 3


@pytest.mark.parametrize("c", [1, 2, 3])
def test_finite_group_scheme(c, derived):
    assert cohomology(GroupSchemeSpec(pi0=FiniteGroup.cyclic(c))).betti == derived["pi0_betti"][str(c)]


@given(specs)
def test_betti_numbers_are_binomial(spec):
    N = spec.h1_dim
    c = spec.pi0.order
    M = cohomology(spec)
    assert M.betti == [math.comb(N, i) * c for i in range(N + 1)]
    assert M.betti == oracles.betti_by_census([(1, 0)] * N, c)
    assert sum(M.betti) == 2**N * c
    if N:
        assert M.euler_characteristic == 0


def test_full_model_is_hopf():
    from supersym.hopf import check_hopf_axioms

    M = cohomology(GroupSchemeSpec(g=1, pi0=FiniteGroup.cyclic(2)))
    assert M.full.dims() == [2, 4, 2]
    assert check_hopf_axioms(M.full).passed


def test_mult_by_2_diagonal(derived):
    f = multiplication_by_n(GroupSchemeSpec(g=1), 2, check=True)
    assert diag_of(f) == derived["mult_by_2_g1_r0"]


def test_mult_by_minus_one_is_antipode():
    spec = GroupSchemeSpec(g=1, r=1)
    M = cohomology(spec)
    assert multiplication_by_n(spec, -1).equals(M.hopf.total_antipode())


@settings(max_examples=20)
@given(specs.filter(lambda s: s.h1_dim <= 4), st.integers(-3, 3), st.integers(-3, 3))
def test_mult_by_n_composes(spec, a, b):
    M = cohomology(spec)
    assert (multiplication_by_n(M, a) @ multiplication_by_n(M, b)).equals(multiplication_by_n(M, a * b))


def test_lagrange_projector_middle(derived):
    p1 = kunneth_projector(GroupSchemeSpec(g=1), 1, 2)
    want = [Fraction(x) for x in derived["lagrange_p1_g1_r0_n2"]]
    m = p1.to_dense().to_fractions()
    assert m == [[want[k] if k == j else 0 for j in range(4)] for k in range(4)]
    assert p1.equals(coordinate_projection(GroupSchemeSpec(g=1), 1))


def test_projectors_sum_to_identity(derived):
    spec = GroupSchemeSpec(g=1, r=1)
    total = None
    for i in range(4):
        p = kunneth_projector(spec, i, 3)
        total = p if total is None else total + p
    assert diag_of(total) == [Fraction(x) for x in derived["lagrange_sum_g1_r1_n3"]]
    assert total.equals(GradedMap.identity(total.source))


@settings(max_examples=15)
@given(specs.filter(lambda s: s.h1_dim <= 4), st.sampled_from([2, 3, -2, 5]))
def test_projectors_idempotent_orthogonal(spec, n):
    N = spec.h1_dim
    ps = [kunneth_projector(spec, i, n) for i in range(N + 1)]
    for i, p in enumerate(ps):
        assert (p @ p).equals(p)
        assert p.equals(coordinate_projection(spec, i))
        for j, q in enumerate(ps):
            if i != j:
                assert (p @ q).is_zero()


@pytest.mark.parametrize("n", [-1, 0, 1])
def test_degenerate_interpolation(n):
    with pytest.raises(DegenerateInterpolation):
        kunneth_projector(GroupSchemeSpec(g=1), 0, n)


def test_projector_degree_out_of_range():
    with pytest.raises(InvalidSpec):
        kunneth_projector(GroupSchemeSpec(g=1), 5, 2)


def test_weights_g1_r1(derived):
    steps = weight_filtration(GroupSchemeSpec(g=1, r=1), 2)
    got = {str(s.weight): s.graded_dim for s in steps}
    assert got == derived["weights_g1_r1_h2"]
    assert expected_weight_dims(1, 1, 2) == {2: 1, 3: 2}
    assert [s.space.total_dim for s in steps] == [1, 3]


@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_weight_census_matches(g, r, data):
    N = 2 * g + r
    i = data.draw(st.integers(0, N))
    spec = GroupSchemeSpec(g=g, r=r)
    steps = weight_filtration(spec, i)
    basis = [(1, 1)] * (2 * g) + [(1, 2)] * r
    assert {s.weight: s.graded_dim for s in steps} == oracles.weight_census(basis, i) == expected_weight_dims(g, r, i)
    assert sum(s.graded_dim for s in steps) == math.comb(N, i)
    assert all(i <= s.weight <= 2 * i for s in steps)
    dims = [s.space.total_dim for s in steps]
    assert dims == sorted(dims)


def test_weight_filtration_needs_no_lattice():
    with pytest.raises(InvalidSpec):
        weight_filtration(GroupSchemeSpec(d=1), 1)


def test_det_split_and_nonsplit():
    split = det_motive(GroupSchemeSpec(g=1, r=2))
    assert split.slot == Slot(4, 6) and split.dim == 1 and split.order == 1
    G = FiniteGroup.cyclic(2)
    non = det_motive(GroupSchemeSpec(r=1, galois=GaloisData(G, {1: [[-1]]})))
    assert non.character == (1, -1) and non.order == 2
    assert non.via_determinants == non.character


def test_det_orders_for_signed_permutations(derived):
    orders = set()
    for n in range(1, 4):
        for m in oracles.signed_permutation_matrices(n):
            k = oracles.matrix_order(m)
            G = FiniteGroup.cyclic(k)
            D = det_motive(GroupSchemeSpec(r=n, galois=GaloisData(G, {1: m} if k > 1 else {})))
            assert D.order == oracles.matrix_order([[oracles.det(m)]])
            orders.add(D.order)
    assert sorted(orders) == derived["det_orders_signed_permutations"]


def test_signed_permutation_predicate():
    assert is_signed_permutation([[0, -1], [1, 0]])
    assert not is_signed_permutation([[1, 1], [0, 1]])
    assert not is_signed_permutation([[2, 0], [0, 1]])


def test_pairing_elliptic(derived):
    P = poincare_pairing(GroupSchemeSpec(g=1), 1)
    want = derived["pairing_g1_r0_h1"]
    assert P.nondegenerate
    # same matrix as the wedge pairing up to the coSym scale C(2,1)
    assert P.matrix == QMatrix.from_rows(want["matrix"]).scale(2)
    assert P.determinant == 4 * want["det"]


@pytest.mark.parametrize("g,r", [(g, r) for g in range(3) for r in range(6) if 2 * g + r <= 5])
def test_pairings_nondegenerate_and_symmetric(g, r, derived):
    spec = GroupSchemeSpec(g=g, r=r)
    N = spec.h1_dim
    for i in range(N + 1):
        assert poincare_pairing(spec, i).nondegenerate
        assert pairing_symmetry(spec, i)
    if N:
        assert derived["pairing_symmetry_signs"][str(N)]


def test_product_elliptic_times_gm(derived):
    res = product(GroupSchemeSpec(g=1), GroupSchemeSpec(r=1))
    assert res.certificate["passed"]
    assert (res.spec.g, res.spec.r) == (1, 1)
    assert cohomology(res.spec).betti == derived["product_e_x_gm_betti"]


def test_product_of_component_groups():
    res = product(GroupSchemeSpec(pi0=FiniteGroup.cyclic(2)), GroupSchemeSpec(g=1, pi0=FiniteGroup.cyclic(3)))
    assert res.spec.pi0.order == 6 and res.certificate["passed"]
    assert cohomology(res.spec).betti == [6, 12, 6]


def test_product_with_galois_merges_reps():
    G = FiniteGroup.cyclic(2)
    a = GroupSchemeSpec(r=1, galois=GaloisData(G, {1: [[-1]]}))
    res = product(a, GroupSchemeSpec(r=1))
    assert det_motive(res.spec).order == 2
    assert res.certificate["passed"]


def test_one_motive(derived):
    rep = one_motive(GroupSchemeSpec(d=1, r=1))
    assert rep.h1_dim == 2
    assert {str(k): v for k, v in rep.weights.items()} == derived["one_motive_d1_r1_weights"]
    assert rep.kimura_bound


def test_curve_shadow():
    assert betti_of_space(curve_shadow(1)) == [1, 2, 1]
    assert betti_of_space(curve_shadow(2)) == [1, 4, 1]


@given(specs.filter(lambda s: s.h1_dim <= 4))
def test_primitives_are_h1(spec):
    assert primitives_match_h1(spec)


def test_invalid_specs():
    with pytest.raises(InvalidSpec):
        GroupSchemeSpec(g=-1)
    with pytest.raises(InvalidSpec):
        GroupSchemeSpec(r=1, galois=GaloisData(FiniteGroup.cyclic(2), {1: [[1, 0], [0, 1]]}))
    with pytest.raises(InvalidSpec):
        GroupSchemeSpec(r=1, galois=GaloisData(FiniteGroup.cyclic(2), {1: [[0]]}))
    with pytest.raises(InvalidSpec):
        h1(GroupSchemeSpec(r=1, galois=GaloisData(FiniteGroup.cyclic(2), {1: [[2]]})))


def test_galois_equivariant_structure():
    G = FiniteGroup.cyclic(4)
    m = [[0, -1, 0], [1, 0, 0], [0, 0, -1]]
    spec = GroupSchemeSpec(r=3, galois=GaloisData(G, {1: m}))
    H = h1(spec)
    assert H.check_action()
    D = det_motive(spec)
    assert D.order == 2 and D.character == (1, -1, 1, -1)
