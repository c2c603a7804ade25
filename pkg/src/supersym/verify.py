"""Self-verification suites: the Hopf structure of ``Sym``/``coSym`` and the
filtration machinery, swept over every small configuration.

Each suite yields :class:`CaseResult` records; a failing record carries a
witness (the offending component and the nonzero part of the difference).
``inject`` deliberately breaks one ingredient so the suites can be seen to fail.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import Sym2Nonzero
from .hopf import (
    canonical_iso_sym_cosym,
    check_bialgebra_morphism,
    check_hopf_axioms,
    cosym_algebra,
    dual_hopf,
    function_hopf,
    group_algebra,
    perturb_antipode,
    perturb_binomial,
    primitives,
    sum_decomposition_iso,
    sym_algebra,
    tensor_hopf,
    universal_algebra_map,
    universal_coalgebra_map,
)
from .linear import FiniteGroup, GradedMap, GradedSuperSpace, Slot, tensor_maps
from .filtration import (
    corcup_sequence,
    fil_sym,
    fil_sym_via_tensors,
    gr_map,
    graded_dimension_identity,
    lemfilt_sequence,
    multiplicativity_check,
    random_subobject,
    verify_propcup_square,
)
from .sympowers import degree_cap, iota_split, pi_merge, sym_power

INJECTIONS = ("none", "antipode-sign", "binomial", "koszul")
SCOPES = ("appendixB", "appendixC", "hopf", "all")

ODD, EVEN_B, EVEN_C = Slot(1, 0), Slot(2, 0), Slot(0, 0)


@dataclass
class CaseResult:
    suite: str
    name: str
    passed: bool
    witness: dict = field(default=None)


def _space(odd, even, even_slot):
    return GradedSuperSpace({ODD: odd, even_slot: even})


def _label(odd, even):
    return f"odd={odd},even={even}"


def _prepare(H, inject):
    if inject == "antipode-sign":
        return perturb_antipode(H)
    if inject == "binomial" and H.top >= 2:
        return perturb_binomial(H, (1, 1))
    return H


def _hopf_cases(suite, label, H, inject):
    rep = check_hopf_axioms(_prepare(H, inject), koszul=(inject != "koszul"))
    for axiom, res in rep.results.items():
        yield CaseResult(suite, f"{label} {H.name} {axiom}", res.passed, res.witness)


def appendix_b_spaces(max_dim):
    """Purely odd spaces of dimension ``1..max_dim`` and mixed ones with ``(o, e) <= (2, 2)``."""
    out = [(o, 0) for o in range(1, max_dim + 1)]
    out += [(o, e) for o in (1, 2) for e in (1, 2) if o + e <= max(max_dim, 2)]
    return out


def appendix_b(max_dim=4, max_degree=6, inject="none"):
    suite = "appendixB"
    with degree_cap(max(max_degree, 2 * max_dim, 12)):
        for odd, even in appendix_b_spaces(max_dim):
            V = _space(odd, even, EVEN_B)
            label = _label(odd, even)
            cap = None if even == 0 else max_degree
            S = sym_algebra(V, cap)
            C = cosym_algebra(V, cap)
            yield from _hopf_cases(suite, label, S, inject)
            yield from _hopf_cases(suite, label, C, inject)
            rep = check_bialgebra_morphism(canonical_iso_sym_cosym(V, cap), S, C)
            for sq, res in rep.results.items():
                yield CaseResult(suite, f"{label} n!-iso {sq}", res.passed, res.witness)
            yield _binomial_case(suite, label, V, S, C, inject)
            yield _tensor_route_case(suite, label, V, S, C, min(S.top, 4 if odd + even <= 3 else 3))
            yield _universal_case(suite, label, V, S, C)
            if even == 0:
                P, inc, per = primitives(C)
                ok = per[1][0].same_shape(V) and all(p.total_dim == 0 for n, (p, _) in per.items() if n != 1)
                yield CaseResult(suite, f"{label} primitives of coSym = V", ok, None if ok else {"dims": {n: p.total_dim for n, (p, _) in per.items()}})


def _binomial_case(suite, label, V, S, C, inject):
    """``mul_{a,b} o comul_{a,b} = C(a+b, a) id`` in both Sym and coSym."""
    C = _prepare(C, "binomial" if inject == "binomial" else "none")
    for H in (S, C):
        for a in range(H.top + 1):
            for b in range(H.top + 1 - a):
                lhs = H.mul_component(a, b) @ H.comul_component(a, b)
                rhs = GradedMap.scalar(H.piece(a + b), math.comb(a + b, a))
                if not lhs.equals(rhs):
                    return CaseResult(suite, f"{label} binomial factors", False, {"algebra": H.name, "component": (a, b)})
    return CaseResult(suite, f"{label} binomial factors", True)


def _tensor_route_case(suite, label, V, S, C, top):
    """Structure maps against the full tensor-power route ``pi``/``iota``."""
    for a in range(top + 1):
        for b in range(top + 1 - a):
            Pa, Pb, Pn = sym_power(V, a), sym_power(V, b), sym_power(V, a + b)
            if a and b:
                mul = Pn.pi @ _join(V, a, b) @ tensor_maps(Pa.iota, Pb.iota)
                comul = tensor_maps(Pa.pi, Pb.pi) @ _split(V, a, b) @ Pn.iota
            else:
                mul, comul = pi_merge(V, a, b), iota_split(V, a, b)
            if not mul.equals(S.mul_component(a, b)) or not comul.equals(C.comul_component(a, b)):
                return CaseResult(suite, f"{label} tensor-route structure maps", False, {"component": (a, b)})
    return CaseResult(suite, f"{label} tensor-route structure maps", True)


def _join(V, a, b):
    from .tensors import associator, left_nested

    def shifted(t, k):
        return t + k if isinstance(t, int) else (shifted(t[0], k), shifted(t[1], k))

    return associator([V] * (a + b), (left_nested(a), shifted(left_nested(b), a)), left_nested(a + b))


def _split(V, a, b):
    from .tensors import associator, left_nested

    def shifted(t, k):
        return t + k if isinstance(t, int) else (shifted(t[0], k), shifted(t[1], k))

    return associator([V] * (a + b), left_nested(a + b), (left_nested(a), shifted(left_nested(b), a)))


def _universal_case(suite, label, V, S, C):
    """Universal extensions of ``id_V``: into coSym gives ``n!``, out of coSym gives ``id``."""
    f = GradedMap.identity(V).with_spaces(V, C.piece(1))
    F, _ = universal_algebra_map(f, C)
    F2, _ = universal_algebra_map(f, C, from_left=True)
    ok = all(F[n].equals(GradedMap.scalar(C.piece(n), math.factorial(n))) for n in range(len(F)))
    ok = ok and all(x.equals(y) for x, y in zip(F, F2))
    g = GradedMap.identity(V).with_spaces(C.piece(1), V)
    G, _ = universal_coalgebra_map(g, C)
    ok = ok and all(G[n].equals(GradedMap.identity(C.piece(n))) for n in range(len(G)))
    return CaseResult(suite, f"{label} universal extensions", ok)


def appendix_c_configs(max_dim, seed=0):
    """Every parity split of ``V`` (dim <= max_dim) with every parity split of ``U``."""
    rng = np.random.default_rng(seed)
    for total in range(1, max_dim + 1):
        for odd in range(total + 1):
            even = total - odd
            V = _space(odd, even, EVEN_C)
            for uo in range(odd + 1):
                for ue in range(even + 1):
                    F = random_subobject(V, {ODD: uo, EVEN_C: ue}, rng)
                    yield f"V({_label(odd, even)}) U({_label(uo, ue)})", F


def appendix_c(max_dim=4, max_degree=4, inject="none", seed=0):
    suite = "appendixC"
    with degree_cap(max(max_degree + 1, 12)):
        for label, F in appendix_c_configs(max_dim, seed):
            for n in range(max_degree + 1):
                dims = [fil_sym(F, n, i)[0].total_dim for i in range(n + 2)]
                mono = all(dims[i] >= dims[i + 1] for i in range(n + 1)) and dims[n + 1] == 0
                mono = mono and dims[0] == sym_power(F.ambient, n).dim
                yield CaseResult(suite, f"{label} n={n} Fil monotone", mono, None if mono else {"dims": dims})
                bad = [i for i in range(n + 1) if not gr_map(F, n, i).exact]
                yield CaseResult(suite, f"{label} n={n} g^(n,i) exact", not bad, {"failing_i": bad} if bad else None)
                ident = graded_dimension_identity(F, n)
                ok = all(a == b for a, b in ident.values())
                yield CaseResult(suite, f"{label} n={n} graded dimensions", ok)
                if n >= 1:
                    sq = verify_propcup_square(F, n, factor=1 if (inject == "binomial" and n > 1) else None)
                    yield CaseResult(suite, f"{label} n={n} cup square", sq.passed, None if sq.passed else sq.witness())
                    try:
                        seq = corcup_sequence(F, n)
                    except Sym2Nonzero:
                        pass
                    else:
                        ok = seq.certificate["exact"]
                        yield CaseResult(suite, f"{label} n={n} corcup sequence", ok, None if ok else seq.certificate)
            if F.ambient.total_dim <= 3:
                for n in range(1, min(max_degree, 3) + 1):
                    for i in range(min(n, 2) + 1):
                        a = fil_sym(F, n, i)[1]
                        b = fil_sym_via_tensors(F, n, i)[1]
                        ok = a.rank() == b.rank() == _joint_rank(a, b)
                        yield CaseResult(suite, f"{label} n={n} i={i} Fil tensor route", ok)
                        cert = lemfilt_sequence(F, n, i)
                        yield CaseResult(suite, f"{label} n={n} i={i} tensor sequence", cert["exact"], None if cert["exact"] else cert)
                ok = multiplicativity_check(F, 1, 1, 1, 0) and multiplicativity_check(F, 1, 2, 1, 1)
                yield CaseResult(suite, f"{label} multiplicativity", ok)


def _joint_rank(a, b):
    from .qmatrix import QMatrix

    return sum(
        QMatrix.hstack([a.block(s), b.block(s)]).rank() if s in a.source and s in b.source else (a.block(s).rank() if s in a.source else (b.block(s).rank() if s in b.source else 0))
        for s in a.target.slot_list()
    )


def hopf_suite(max_dim=3, max_degree=4, inject="none"):
    suite = "hopf"
    groups = [FiniteGroup.trivial(), FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))]
    if max_dim >= 3:
        groups.append(_s3())
    for F in groups:
        name = F.name or f"order {F.order}"
        A = group_algebra(F)
        yield from _hopf_cases(suite, name, A, "antipode-sign" if inject == "antipode-sign" and F.order > 1 else "none")
        yield from _hopf_cases(suite, name, function_hopf(F), "none")
        D = dual_hopf(A)
        ok = all(D.mul[k] == function_hopf(F).mul[k] for k in D.mul)
        yield CaseResult(suite, f"{name} dual of group ring", ok)
    with degree_cap(max(max_degree, 12)):
        for odd in range(1, max_dim):
            U = GradedSuperSpace({ODD: odd})
            W = GradedSuperSpace({Slot(1, 2): 1})
            T = tensor_hopf(cosym_algebra(U), cosym_algebra(W), koszul=(inject != "koszul"))
            yield from _hopf_cases(suite, f"odd={odd}(x)line", T, "none" if inject == "koszul" else inject)
            fwd, inv, src, tgt = sum_decomposition_iso(U, W)
            rep = check_bialgebra_morphism(fwd, src, tgt)
            ok = rep.passed and all(
                (inv[n] @ fwd[n]).equals(GradedMap.identity(src.pieces[n])) for n in range(len(fwd))
            )
            yield CaseResult(suite, f"odd={odd}(+)line sum decomposition", ok)


def _s3():
    import itertools

    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    return FiniteGroup(table, identity=idx[(0, 1, 2)], name="S3")


def run(scope="all", max_dim=3, max_degree=4, inject="none"):
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}")
    if inject not in INJECTIONS:
        raise ValueError(f"unknown injection {inject!r}")
    results = []
    if scope in ("appendixB", "all"):
        results += list(appendix_b(max_dim, max_degree, inject))
    if scope in ("appendixC", "all"):
        results += list(appendix_c(max_dim, max_degree, inject))
    if scope in ("hopf", "all"):
        results += list(hopf_suite(max_dim, max_degree, inject))
    return results
