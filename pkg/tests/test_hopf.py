import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supersym.errors import DegreeZeroContent, NotCocommutative, NotCommutative, NotConnected, ShapeError
from supersym.hopf import (
    canonical_iso_sym_cosym,
    check_bialgebra_morphism,
    check_hopf_axioms,
    cosym_algebra,
    dual_hopf,
    function_hopf,
    group_algebra,
    is_cocommutative,
    is_commutative,
    perturb_antipode,
    perturb_binomial,
    primitives,
    sum_decomposition_iso,
    sym_algebra,
    tensor_hopf,
    universal_algebra_map,
    universal_coalgebra_map,
)
from supersym.linear import FiniteGroup, GradedMap, GradedSuperSpace, Slot, random_map
from supersym.sympowers import sym_power

ODD, EVEN = Slot(1, 0), Slot(2, 0)
AXIOMS = {"associativity", "coassociativity", "unit_counit", "bialgebra", "antipode"}


def space(o, e=0):
    return GradedSuperSpace({ODD: o, EVEN: e})


odd_or_mixed = st.tuples(st.integers(0, 3), st.integers(0, 1)).filter(lambda t: sum(t) > 0)


@settings(max_examples=15)
@given(odd_or_mixed, st.booleans())
def test_sym_and_cosym_are_hopf(dims, co):
    V = space(*dims)
    H = (cosym_algebra if co else sym_algebra)(V, cap=4)
    rep = check_hopf_axioms(H)
    assert set(rep.results) == AXIOMS
    assert rep.passed, rep.failures()
    assert all(r.checked > 0 for r in rep.results.values())


def test_truncation_flags():
    assert sym_algebra(space(3)).complete
    assert sym_algebra(space(3)).top == 3
    mixed = sym_algebra(space(1, 1), cap=3)
    assert not mixed.complete and mixed.top == 3


def test_degree_zero_content_rejected():
    with pytest.raises(DegreeZeroContent):
        sym_algebra(GradedSuperSpace({Slot(0, 0): 1}))


@pytest.mark.parametrize("o", range(1, 5))
def test_primitives_of_cosym_are_generators(o, derived):
    P, inc, per = primitives(cosym_algebra(space(o)))
    dims = [0] + [per[n][0].total_dim for n in range(1, o + 1)]
    assert dims == derived["primitive_dims_odd"][str(o)]
    assert per[1][0].same_shape(space(o))


def test_primitives_need_connected():
    with pytest.raises(NotConnected):
        primitives(group_algebra(FiniteGroup.cyclic(2)))


def test_top_comul_components_nonzero(derived):
    C = cosym_algebra(space(3))
    for a in range(4):
        assert C.comul_component(a, 3 - a).rank() == derived["cosym_top_split_ranks_odd3"][f"{a},{3 - a}"]


@pytest.mark.parametrize("dims", [(1, 0), (2, 0), (3, 0), (1, 1), (2, 1)])
def test_binomial_factors(dims):
    V = space(*dims)
    for H in (sym_algebra(V, 4), cosym_algebra(V, 4)):
        for a in range(H.top + 1):
            for b in range(H.top + 1 - a):
                lhs = H.mul_component(a, b) @ H.comul_component(a, b)
                assert lhs.equals(GradedMap.scalar(H.piece(a + b), math.comb(a + b, a)))


@pytest.mark.parametrize("dims", [(3, 0), (2, 1)])
def test_factorial_iso_is_bialgebra_map(dims):
    V = space(*dims)
    cap = None if dims[1] == 0 else 4
    f = canonical_iso_sym_cosym(V, cap)
    assert check_bialgebra_morphism(f, sym_algebra(V, cap), cosym_algebra(V, cap)).passed
    # identity is not, once degree 2 is present
    ident = tuple(GradedMap.identity(P) for P in sym_algebra(V, cap).pieces)
    assert not check_bialgebra_morphism(ident, sym_algebra(V, cap), cosym_algebra(V, cap)).passed


def test_antipode_is_sign():
    H = cosym_algebra(space(3))
    for n, S in enumerate(H.antipode):
        assert S.equals(GradedMap.scalar(H.pieces[n], (-1) ** n))


def test_commutative_and_cocommutative():
    H = cosym_algebra(space(2, 1), cap=3)
    assert is_commutative(H) and is_cocommutative(H)
    F = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))
    assert is_commutative(group_algebra(F))


def _s3():
    import itertools

    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    return FiniteGroup(table, identity=idx[(0, 1, 2)])


def test_group_ring_of_s3():
    A = group_algebra(_s3())
    assert check_hopf_axioms(A).passed
    assert not is_commutative(A)
    assert is_cocommutative(A)
    assert not is_cocommutative(function_hopf(_s3()))
    with pytest.raises(NotCommutative):
        universal_algebra_map(GradedMap.zero(space(1), A.piece(1)), A)
    with pytest.raises(NotCocommutative):
        universal_coalgebra_map(GradedMap.zero(function_hopf(_s3()).piece(1), space(1)), function_hopf(_s3()))


def test_dual_of_group_ring_z2(derived):
    F = FiniteGroup.cyclic(2)
    D = dual_hopf(group_algebra(F))
    comul = D.comul[(0, 0)].to_dense().to_fractions()
    assert comul == derived["dual_group_ring_z2_comul"]
    assert all(D.mul[k] == function_hopf(F).mul[k] for k in D.mul)
    assert check_hopf_axioms(D).passed


def test_dual_requires_even_single_slot():
    with pytest.raises(ShapeError):
        dual_hopf(cosym_algebra(space(1)))


def test_sum_decomposition_two_odd_lines(derived):
    U, W = space(1), GradedSuperSpace({Slot(1, 2): 1})
    fwd, inv, src, tgt = sum_decomposition_iso(U, W)
    got = [tgt.piece(2).total_dim, src.pieces[2].total_dim]
    assert got == derived["sym2_of_two_odd_lines_vs_product"]
    assert check_bialgebra_morphism(fwd, src, tgt).passed
    for n in range(len(fwd)):
        assert (inv[n] @ fwd[n]).equals(GradedMap.identity(src.pieces[n]))
        assert (fwd[n] @ inv[n]).equals(GradedMap.identity(tgt.piece(n)))


def test_sum_decomposition_round_trip_dims_1_2():
    U, W = space(1), GradedSuperSpace({Slot(1, 2): 2})
    fwd, inv, src, tgt = sum_decomposition_iso(U, W)
    assert all((inv[n] @ fwd[n]).equals(GradedMap.identity(src.pieces[n])) for n in range(len(fwd)))
    P, _, per = primitives(tgt)
    assert per[1][0].same_shape(GradedSuperSpace({ODD: 1, Slot(1, 2): 2}))
    assert P.total_dim == 3
    Ps, _, _ = primitives(src)
    assert Ps.total_dim == 3


def test_tensor_hopf_axioms_and_koszul_matters():
    H = cosym_algebra(space(1))
    K = cosym_algebra(GradedSuperSpace({Slot(1, 2): 1}))
    assert check_hopf_axioms(tensor_hopf(H, K)).passed
    plain = tensor_hopf(H, K, koszul=False)
    assert not check_hopf_axioms(plain).passed


def test_universal_extensions():
    V = space(2)
    C = cosym_algebra(V)
    f = GradedMap.identity(V).with_spaces(V, C.piece(1))
    F, S = universal_algebra_map(f, C)
    assert [x.equals(GradedMap.scalar(C.piece(n), math.factorial(n))) for n, x in enumerate(F)] == [True] * 3
    assert check_bialgebra_morphism(F, S, C)["mul"].passed
    g = GradedMap.identity(V).with_spaces(C.piece(1), V)
    G, C2 = universal_coalgebra_map(g, C)
    assert all(x.equals(GradedMap.identity(C.piece(n))) for n, x in enumerate(G))


def test_universal_extension_of_two_id(derived):
    V = space(2)
    S = sym_algebra(V)
    f = GradedMap.scalar(V, 2).with_spaces(V, S.piece(1))
    F, _ = universal_algebra_map(f, S)
    for n, x in enumerate(F):
        assert x.equals(GradedMap.scalar(S.piece(n), derived["extension_of_2id"][n]))


@settings(max_examples=10)
@given(st.integers(1, 3), st.integers(0, 2**31))
def test_sym_of_map_is_bialgebra_morphism(o, seed):
    V = space(o)
    f = random_map(V, V, np.random.default_rng(seed))
    from supersym.sympowers import sym_map

    H = cosym_algebra(V)
    assert check_bialgebra_morphism(tuple(sym_map(f, n) for n in range(H.top + 1)), H, H).passed


# --- negative controls -------------------------------------------------------


def test_perturbed_antipode_fails_with_witness():
    rep = check_hopf_axioms(perturb_antipode(cosym_algebra(space(3))))
    assert not rep["antipode"].passed
    w = rep["antipode"].witness
    assert w["degree"] == 1 and w["difference"]
    assert rep["associativity"].passed


def test_perturbed_binomial_fails():
    rep = check_hopf_axioms(perturb_binomial(cosym_algebra(space(3))))
    failed = rep.failures()
    assert failed
    assert all(r.witness and r.witness["difference"] for r in failed.values())


def test_plain_swap_fails_on_odd():
    rep = check_hopf_axioms(sym_algebra(space(2)), koszul=False)
    assert not rep["bialgebra"].passed
    assert check_hopf_axioms(sym_algebra(GradedSuperSpace({EVEN: 1}), cap=3), koszul=False).passed


def test_report_summary():
    rep = check_hopf_axioms(sym_algebra(space(1)))
    assert rep.summary() == {k: True for k in AXIOMS}


def test_dims_match_power_dims():
    H = sym_algebra(space(2, 1), cap=3)
    assert H.dims() == [sym_power(space(2, 1), n).dim for n in range(4)]
    assert H.carrier.total_dim == sum(H.dims())
    assert H.total_antipode().rank() == sum(H.dims())
