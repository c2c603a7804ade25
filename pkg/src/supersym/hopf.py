"""Graded Hopf algebras with exact axiom checks.

A :class:`HopfData` is stored piecewise: ``pieces[n]`` is the degree-``n``
component (for ``Sym`` the ``n``-th symmetric power), and every structure map
is a family of components between pieces.  Axioms are checked one component
at a time, which keeps the matrices small.

When ``complete`` is False the object is a truncation of an infinite graded
Hopf algebra and only components of total degree ``<= top`` are meaningful;
the checks are restricted accordingly.
"""
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

from .errors import DegreeZeroContent, NotCocommutative, NotCommutative, NotConnected, ShapeError
from .linear import (
    GradedMap,
    GradedSuperSpace,
    ZERO_SLOT,
    braiding,
    direct_sum,
    dual,
    kernel,
    tensor,
    tensor_maps,
)
from .qmatrix import QMatrix
from .sympowers import iota_split, kimura_odd_dimension, pi_merge, sym_power
from .tensors import associator, rearrange

DEFAULT_TRUNCATION = 8

UNIT = GradedSuperSpace.unit()


def _unit_iso(space, left=True):
    """``1 (x) X -> X`` (or ``X (x) 1 -> X``); same basis order, so the identity matrix."""
    src = tensor(UNIT, space) if left else tensor(space, UNIT)
    return GradedMap.identity(space).with_spaces(src, space)


@dataclass(frozen=True, eq=False)
class HopfData:
    pieces: tuple
    mul: dict
    comul: dict
    unit: GradedMap
    counit: GradedMap
    antipode: tuple
    complete: bool = True
    name: str = "H"

    @property
    def top(self):
        return len(self.pieces) - 1

    def piece(self, n):
        if 0 <= n <= self.top:
            return self.pieces[n]
        return GradedSuperSpace.zero()

    def mul_component(self, a, b):
        m = self.mul.get((a, b))
        if m is None:
            return GradedMap.zero(tensor(self.piece(a), self.piece(b)), self.piece(a + b))
        return m

    def comul_component(self, a, b):
        m = self.comul.get((a, b))
        if m is None:
            return GradedMap.zero(self.piece(a + b), tensor(self.piece(a), self.piece(b)))
        return m

    def antipode_component(self, n):
        if 0 <= n <= self.top:
            return self.antipode[n]
        return GradedMap.zero(self.piece(n), self.piece(n))

    def dims(self):
        return [P.total_dim for P in self.pieces]

    @cached_property
    def _carrier(self):
        return direct_sum(*self.pieces)

    @property
    def carrier(self):
        """All pieces as one graded space (pieces stacked in order inside each slot)."""
        return self._carrier.space

    def piece_inclusion(self, n):
        return self._carrier.inj[n]

    def piece_projection(self, n):
        return self._carrier.proj[n]

    def carrier_endomorphism(self, per_piece):
        """Assemble per-piece endomorphisms into one map on the carrier."""
        total = GradedMap.zero(self.carrier, self.carrier)
        for n, f in enumerate(per_piece):
            total = total + self.piece_inclusion(n) @ f @ self.piece_projection(n)
        return total

    def total_antipode(self):
        return self.carrier_endomorphism(self.antipode)

    def total_mul(self):
        """Multiplication ``H (x) H -> H`` on the carrier (only for small objects)."""
        H = self.carrier
        total = GradedMap.zero(tensor(H, H), H)
        for (a, b), m in self.mul.items():
            p = tensor_maps(self.piece_projection(a), self.piece_projection(b))
            total = total + self.piece_inclusion(a + b) @ m @ p
        return total

    def total_comul(self):
        H = self.carrier
        total = GradedMap.zero(H, tensor(H, H))
        for (a, b), m in self.comul.items():
            i = tensor_maps(self.piece_inclusion(a), self.piece_inclusion(b))
            total = total + i @ m @ self.piece_projection(a + b)
        return total

    def total_unit(self):
        return self.piece_inclusion(0) @ self.unit

    def total_counit(self):
        return self.counit @ self.piece_projection(0)


# ---------------------------------------------------------------------------
# axiom checks


@dataclass
class AxiomResult:
    name: str
    passed: bool = True
    checked: int = 0
    witness: dict = field(default=None)

    def record(self, ok, **witness):
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.witness = witness


@dataclass
class Report:
    results: dict

    @property
    def passed(self):
        return all(r.passed for r in self.results.values())

    def failures(self):
        return {k: r for k, r in self.results.items() if not r.passed}

    def __getitem__(self, key):
        return self.results[key]

    def summary(self):
        return {k: r.passed for k, r in self.results.items()}


def _witness(lhs, rhs, **where):
    diff = lhs - rhs
    bad = {
        f"{s.degree},{s.weight}": [[str(x) for x in row] for row in diff.block(s).to_fractions()]
        for s in diff.shared_slots()
        if not diff.block(s).is_zero()
    }
    return dict(where, difference=bad)


def _check(res, lhs, rhs, **where):
    ok = lhs.equals(rhs)
    res.record(ok, **(_witness(lhs, rhs, **where) if not ok else {}))


def _interchange(A, B, C, D, koszul=True):
    """``(A (x) B) (x) (C (x) D) -> (A (x) C) (x) (B (x) D)``."""
    return rearrange([A, B, C, D], ((0, 1), (2, 3)), (0, 2, 1, 3), ((0, 1), (2, 3)), mode="koszul" if koszul else "plain")


def _in_range(H, *degrees):
    return all(0 <= d <= H.top for d in degrees)


def check_hopf_axioms(H, koszul=True):
    """Exact componentwise check of the Hopf axioms.

    Returns a :class:`Report` with entries ``associativity``, ``coassociativity``,
    ``unit_counit``, ``bialgebra`` and ``antipode``; failing entries carry the
    first offending component and the nonzero part of the difference.
    ``koszul=False`` uses the unsigned swap in the bialgebra law.
    """
    top = H.top
    res = {k: AxiomResult(k) for k in ("associativity", "coassociativity", "unit_counit", "bialgebra", "antipode")}
    P = H.piece
    rng = range(top + 1)

    for a in rng:
        for b in rng:
            for c in rng:
                if a + b + c > top:
                    continue
                A, B, C = P(a), P(b), P(c)
                lhs = H.mul_component(a + b, c) @ tensor_maps(H.mul_component(a, b), GradedMap.identity(C))
                rhs = (
                    H.mul_component(a, b + c)
                    @ tensor_maps(GradedMap.identity(A), H.mul_component(b, c))
                    @ associator([A, B, C], ((0, 1), 2), (0, (1, 2)))
                )
                _check(res["associativity"], lhs, rhs, component=(a, b, c))
                lhs = tensor_maps(H.comul_component(a, b), GradedMap.identity(C)) @ H.comul_component(a + b, c)
                rhs = (
                    associator([A, B, C], (0, (1, 2)), ((0, 1), 2))
                    @ tensor_maps(GradedMap.identity(A), H.comul_component(b, c))
                    @ H.comul_component(a, b + c)
                )
                _check(res["coassociativity"], lhs, rhs, component=(a, b, c))

    # unit and counit
    for n in rng:
        X = P(n)
        ident = GradedMap.identity(X)
        left = H.mul_component(0, n) @ tensor_maps(H.unit, ident)
        right = H.mul_component(n, 0) @ tensor_maps(ident, H.unit)
        _check(res["unit_counit"], left, _unit_iso(X, True), law="left unit", degree=n)
        _check(res["unit_counit"], right, _unit_iso(X, False), law="right unit", degree=n)
        left = tensor_maps(H.counit, ident) @ H.comul_component(0, n)
        right = tensor_maps(ident, H.counit) @ H.comul_component(n, 0)
        _check(res["unit_counit"], _unit_iso(X, True) @ left, ident, law="left counit", degree=n)
        _check(res["unit_counit"], _unit_iso(X, False) @ right, ident, law="right counit", degree=n)

    # bialgebra compatibility
    for a in rng:
        for b in rng:
            if not H.complete and a + b > top:
                continue
            for c in range(a + b + 1):
                d = a + b - c
                if not _in_range(H, c, d):
                    continue
                lhs = H.comul_component(c, d) @ H.mul_component(a, b)
                rhs = GradedMap.zero(tensor(P(a), P(b)), tensor(P(c), P(d)))
                for a1 in range(a + 1):
                    b1 = c - a1
                    a2, b2 = a - a1, b - b1
                    if b1 < 0 or b2 < 0:
                        continue
                    term = (
                        tensor_maps(H.mul_component(a1, b1), H.mul_component(a2, b2))
                        @ _interchange(P(a1), P(a2), P(b1), P(b2), koszul)
                        @ tensor_maps(H.comul_component(a1, a2), H.comul_component(b1, b2))
                    )
                    rhs = rhs + term
                _check(res["bialgebra"], lhs, rhs, component=(a, b), output=(c, d))
    unit_pair = tensor_maps(H.unit, H.unit)
    _check(res["bialgebra"], H.comul_component(0, 0) @ H.unit, unit_pair.with_spaces(UNIT, unit_pair.target), law="comul of unit")
    counit_pair = tensor_maps(H.counit, H.counit)
    _check(
        res["bialgebra"],
        H.counit @ H.mul_component(0, 0),
        counit_pair.with_spaces(counit_pair.source, UNIT),
        law="counit of product",
    )
    _check(res["bialgebra"], H.counit @ H.unit, GradedMap.identity(UNIT), law="counit of unit")

    # antipode
    for n in rng:
        X = P(n)
        left = GradedMap.zero(X, X if n == 0 else P(n))
        right = left
        for a in range(n + 1):
            b = n - a
            S_a = H.antipode_component(a)
            S_b = H.antipode_component(b)
            left = left + H.mul_component(a, b) @ tensor_maps(S_a, GradedMap.identity(P(b))) @ H.comul_component(a, b)
            right = right + H.mul_component(a, b) @ tensor_maps(GradedMap.identity(P(a)), S_b) @ H.comul_component(a, b)
        expected = H.unit @ H.counit if n == 0 else GradedMap.zero(X, X)
        _check(res["antipode"], left, expected, law="m(S x id)D", degree=n)
        _check(res["antipode"], right, expected, law="m(id x S)D", degree=n)
    return Report(res)


def check_bialgebra_morphism(f, H, K):
    """Check that per-piece maps ``f[n]: H_n -> K_n`` intertwine all structure maps.

    The four squares are ``mul``, ``comul``, ``unit`` and ``counit``.
    """
    top = max(H.top, K.top)
    res = {k: AxiomResult(k) for k in ("mul", "comul", "unit", "counit")}

    def F(n):
        if n < len(f):
            return f[n]
        return GradedMap.zero(H.piece(n), K.piece(n))

    limit = top if (H.complete and K.complete) else min(H.top, K.top)
    for a in range(limit + 1):
        for b in range(limit + 1):
            if a + b > limit and not (H.complete and K.complete):
                continue
            lhs = F(a + b) @ H.mul_component(a, b)
            rhs = K.mul_component(a, b) @ tensor_maps(F(a), F(b))
            _check(res["mul"], lhs, rhs, component=(a, b))
            if a + b <= limit:
                lhs = tensor_maps(F(a), F(b)) @ H.comul_component(a, b)
                rhs = K.comul_component(a, b) @ F(a + b)
                _check(res["comul"], lhs, rhs, component=(a, b))
    _check(res["unit"], F(0) @ H.unit, K.unit)
    _check(res["counit"], K.counit @ F(0), H.counit)
    return Report(res)


# ---------------------------------------------------------------------------
# symmetric algebra and coalgebra


def _sym_top(V, cap):
    even, odd = V.parity_dims()
    if even == 0:
        return kimura_odd_dimension(V), True
    return (DEFAULT_TRUNCATION if cap is None else cap), False


def _check_connected_input(V):
    if any(s.degree == 0 for s in V.slot_list()):
        raise DegreeZeroContent("V has a degree-0 slot; the symmetric algebra would not be connected")


def _sym_family(V, cap, coalgebra):
    _check_connected_input(V)
    V = V.without_group()
    top, complete = _sym_top(V, cap)
    if cap is not None:
        top = min(top, cap)
        complete = complete and cap >= kimura_odd_dimension(V) if complete else False
    pieces = tuple(sym_power(V, n).space for n in range(top + 1))
    mul, comul = {}, {}
    for a in range(top + 1):
        for b in range(top + 1 - a):
            c = math.comb(a + b, a)
            merge = pi_merge(V, a, b)
            split = iota_split(V, a, b)
            if coalgebra:
                mul[(a, b)] = merge.scale(c)
                comul[(a, b)] = split
            else:
                mul[(a, b)] = merge
                comul[(a, b)] = split.scale(c)
    unit = GradedMap.identity(UNIT).with_spaces(UNIT, pieces[0])
    counit = GradedMap.identity(UNIT).with_spaces(pieces[0], UNIT)
    antipode = tuple(GradedMap.scalar(P, (-1) ** n) for n, P in enumerate(pieces))
    return HopfData(pieces, mul, comul, unit, counit, antipode, complete, "coSym" if coalgebra else "Sym")


def sym_algebra(V, cap=None):
    """``Sym(V)``: multiplication merges, comultiplication is ``C(n+m, n) * iota_split``."""
    return _sym_family(V, cap, coalgebra=False)


def cosym_algebra(V, cap=None):
    """``coSym(V)``: comultiplication splits, multiplication is ``C(n+m, n) * pi_merge``."""
    return _sym_family(V, cap, coalgebra=True)


def canonical_iso_sym_cosym(V, cap=None):
    """Per-degree maps ``n! * id: Sym^n V -> Sym^n V`` from ``Sym(V)`` to ``coSym(V)``."""
    H = sym_algebra(V, cap)
    return tuple(GradedMap.scalar(P, math.factorial(n)) for n, P in enumerate(H.pieces))


# ---------------------------------------------------------------------------
# tensor products of Hopf objects


def _sum_pieces(H, K, top):
    """Pieces ``(H (x) K)_n = (+)_{a+b=n} H_a (x) K_b`` with their biproduct data."""
    out = []
    for n in range(top + 1):
        parts = [(a, n - a) for a in range(n + 1) if a <= H.top and n - a <= K.top]
        bp = direct_sum(*[tensor(H.piece(a), K.piece(b)) for a, b in parts])
        out.append((parts, bp))
    return out


def tensor_hopf(H, K, koszul=True):
    """Graded tensor product of two Hopf objects (Koszul sign in the interchange)."""
    complete = H.complete and K.complete
    top = H.top + K.top if complete else min(H.top, K.top)
    data = _sum_pieces(H, K, top)
    pieces = tuple(bp.space for _, bp in data)
    pos = [{ab: i for i, ab in enumerate(parts)} for parts, _ in data]
    mode = "koszul" if koszul else "plain"

    def inj(n, ab):
        return data[n][1].inj[pos[n][ab]]

    def proj(n, ab):
        return data[n][1].proj[pos[n][ab]]

    mul, comul = {}, {}
    for n in range(top + 1):
        for m in range(top + 1 - n):
            total = GradedMap.zero(tensor(pieces[n], pieces[m]), pieces[n + m])
            for a, b in data[n][0]:
                for c, e in data[m][0]:
                    if (a + c, b + e) not in pos[n + m]:
                        continue
                    swap = rearrange(
                        [H.piece(a), K.piece(b), H.piece(c), K.piece(e)],
                        ((0, 1), (2, 3)), (0, 2, 1, 3), ((0, 1), (2, 3)), mode=mode,
                    )
                    term = (
                        inj(n + m, (a + c, b + e))
                        @ tensor_maps(H.mul_component(a, c), K.mul_component(b, e))
                        @ swap
                        @ tensor_maps(proj(n, (a, b)), proj(m, (c, e)))
                    )
                    total = total + term
            mul[(n, m)] = total
            total = GradedMap.zero(pieces[n + m], tensor(pieces[n], pieces[m]))
            for a, b in data[n + m][0]:
                for a1 in range(a + 1):
                    b1 = n - a1
                    a2, b2 = a - a1, b - b1
                    if b1 < 0 or b2 < 0 or (a1, b1) not in pos[n] or (a2, b2) not in pos[m]:
                        continue
                    swap = rearrange(
                        [H.piece(a1), H.piece(a2), K.piece(b1), K.piece(b2)],
                        ((0, 1), (2, 3)), (0, 2, 1, 3), ((0, 1), (2, 3)), mode=mode,
                    )
                    term = (
                        tensor_maps(inj(n, (a1, b1)), inj(m, (a2, b2)))
                        @ swap
                        @ tensor_maps(H.comul_component(a1, a2), K.comul_component(b1, b2))
                        @ proj(n + m, (a, b))
                    )
                    total = total + term
            comul[(n, m)] = total
    hk = tensor_maps(H.unit, K.unit)
    unit = inj(0, (0, 0)) @ hk.with_spaces(UNIT, hk.target)
    ck = tensor_maps(H.counit, K.counit)
    counit = ck.with_spaces(ck.source, UNIT) @ proj(0, (0, 0))
    antipode = []
    for n in range(top + 1):
        total = GradedMap.zero(pieces[n], pieces[n])
        for a, b in data[n][0]:
            total = total + inj(n, (a, b)) @ tensor_maps(H.antipode_component(a), K.antipode_component(b)) @ proj(n, (a, b))
        antipode.append(total)
    return HopfData(pieces, mul, comul, unit, counit, tuple(antipode), complete, f"{H.name}(x){K.name}")


def sum_decomposition_iso(U, W, cap=None):
    """Mutually inverse per-degree maps between ``coSym(U) (x) coSym(W)`` and ``coSym(U (+) W)``.

    The forward map multiplies (``Sym^a U (x) Sym^b W -> Sym^{a+b}(U (+) W)``
    via the inclusions and the coSym product); the inverse comultiplies and
    projects.  Returns ``(forward, inverse, source_hopf, target_hopf)``.
    """
    HU, HW = cosym_algebra(U, cap), cosym_algebra(W, cap)
    src = tensor_hopf(HU, HW)
    bp = direct_sum(U, W)
    S = bp.space
    tgt = cosym_algebra(S, cap)
    iu = [sym_inclusion(bp.inj[0], n) for n in range(HU.top + 1)]
    iw = [sym_inclusion(bp.inj[1], n) for n in range(HW.top + 1)]
    pu = [sym_inclusion(bp.proj[0], n) for n in range(tgt.top + 1)]
    pw = [sym_inclusion(bp.proj[1], n) for n in range(tgt.top + 1)]
    data = _sum_pieces(HU, HW, src.top)
    forward, inverse = [], []
    for n in range(src.top + 1):
        parts, piece_bp = data[n]
        fwd = GradedMap.zero(src.pieces[n], tgt.piece(n))
        inv = GradedMap.zero(tgt.piece(n), src.pieces[n])
        for k, (a, b) in enumerate(parts):
            fwd = fwd + tgt.mul_component(a, b) @ tensor_maps(iu[a], iw[b]) @ piece_bp.proj[k]
            if a < len(pu) and b < len(pw):
                inv = inv + piece_bp.inj[k] @ tensor_maps(pu[a], pw[b]) @ tgt.comul_component(a, b)
        forward.append(fwd)
        inverse.append(inv)
    return tuple(forward), tuple(inverse), src, tgt


def sym_inclusion(f, n):
    """``Sym^n(f)`` for a linear map ``f`` (functoriality)."""
    from .sympowers import sym_map

    return sym_map(f, n)


# ---------------------------------------------------------------------------
# primitives and universal maps


def primitives(H):
    """Primitive elements of a connected graded Hopf object.

    Returns ``(P, inclusion into the carrier, per_degree)`` where ``per_degree``
    maps each positive degree to ``(P_n, inclusion into H_n)``.
    """
    if H.piece(0).total_dim != 1 or H.piece(0).dim(ZERO_SLOT) != 1:
        raise NotConnected("degree-0 piece is not the unit line")
    per = {}
    for n in range(1, H.top + 1):
        X = H.piece(n)
        ident = GradedMap.identity(X)
        conditions = []
        for a in range(n + 1):
            b = n - a
            d = H.comul_component(a, b)
            if a == 0:
                t = tensor_maps(H.unit, ident)
                d = d - t.with_spaces(X, t.target)
            elif b == 0:
                t = tensor_maps(ident, H.unit)
                d = d - t.with_spaces(X, t.target)
            conditions.append(d)
        blocks = {}
        for s, dim in X.slot_items():
            stack = QMatrix.vstack([c.block(s) for c in conditions if c.target.dim(s)], ncols=dim)
            blocks[s] = stack.nullspace()
        from .linear import subspace

        Pn, inc = subspace(X.without_group(), blocks)
        per[n] = (Pn, inc.with_spaces(Pn, X))
    incs = [H.piece_inclusion(n) @ inc for n, (_, inc) in per.items()]
    bp = direct_sum(*[p for p, _ in per.values()])
    total = GradedMap.zero(bp.space, H.carrier)
    for k, inc in enumerate(incs):
        total = total + inc @ bp.proj[k]
    return bp.space, total, per


def is_commutative(H):
    top = H.top
    for a in range(top + 1):
        for b in range(top + 1 - a):
            lhs = H.mul_component(b, a) @ braiding(H.piece(a), H.piece(b))
            if not lhs.equals(H.mul_component(a, b)):
                return False
    return True


def is_cocommutative(H):
    top = H.top
    for a in range(top + 1):
        for b in range(top + 1 - a):
            lhs = braiding(H.piece(a), H.piece(b)) @ H.comul_component(a, b)
            if not lhs.equals(H.comul_component(b, a)):
                return False
    return True


def _degree_one_map(f, expect_source=None, expect_target=None):
    if expect_source is not None and not f.source.same_shape(expect_source):
        raise ShapeError("map source does not match the generating degree")
    if expect_target is not None and not f.target.same_shape(expect_target):
        raise ShapeError("map target does not match the generating degree")
    return f


def universal_algebra_map(f, A, cap=None, from_left=False):
    """Extend ``f: V -> A_1`` to the algebra map ``Sym(V) -> A``, degree by degree.

    Degree ``n`` is ``mul_{n-1,1} o (F_{n-1} (x) f) o iota_split(n-1, 1)``;
    ``from_left=True`` peels generators off the other side instead.
    """
    if not is_commutative(A):
        raise NotCommutative("target algebra is not (Koszul) commutative")
    V = f.source.without_group()
    _degree_one_map(f, expect_target=A.piece(1))
    S = sym_algebra(V, cap if cap is not None else (A.top if not A.complete else None))
    out = [A.unit @ S.counit if A.piece(0).total_dim else GradedMap.zero(S.piece(0), A.piece(0))]
    out[0] = A.unit.with_spaces(S.piece(0), A.piece(0)) if A.unit.source.same_shape(S.piece(0)) else out[0]
    f1 = f.with_spaces(S.piece(1), A.piece(1)) if S.top >= 1 else None
    if S.top >= 1:
        out.append(f1)
    for n in range(2, S.top + 1):
        if from_left:
            step = A.mul_component(1, n - 1) @ tensor_maps(f1, out[n - 1]) @ iota_split(V, 1, n - 1)
        else:
            step = A.mul_component(n - 1, 1) @ tensor_maps(out[n - 1], f1) @ iota_split(V, n - 1, 1)
        out.append(step.with_spaces(S.piece(n), A.piece(n)))
    return tuple(out), S


def universal_coalgebra_map(g, B, cap=None, from_left=False):
    """Extend ``g: B_1 -> V`` to the coalgebra map ``B -> coSym(V)``, degree by degree.

    Degree ``n`` is ``pi_merge(n-1, 1) o (G_{n-1} (x) g) o comul_{n-1,1}``.
    """
    if not is_cocommutative(B):
        raise NotCocommutative("source coalgebra is not (Koszul) cocommutative")
    V = g.target.without_group()
    _degree_one_map(g, expect_source=B.piece(1))
    C = cosym_algebra(V, cap if cap is not None else (B.top if not B.complete else None))
    top = B.top
    out = [B.counit.with_spaces(B.piece(0), C.piece(0)) if C.piece(0).same_shape(UNIT) else None]
    if top >= 1:
        out.append(g.with_spaces(B.piece(1), C.piece(1)))
    for n in range(2, top + 1):
        if n > C.top:
            out.append(GradedMap.zero(B.piece(n), C.piece(n)))
            continue
        if from_left:
            step = pi_merge(V, 1, n - 1) @ tensor_maps(out[1], out[n - 1]) @ B.comul_component(1, n - 1)
        else:
            step = pi_merge(V, n - 1, 1) @ tensor_maps(out[n - 1], out[1]) @ B.comul_component(n - 1, 1)
        out.append(step.with_spaces(B.piece(n), C.piece(n)))
    return tuple(out), C


# ---------------------------------------------------------------------------
# finite groups


def group_algebra(F):
    """The group ring ``Q[F]`` in slot ``(0, 0)``: ``g . h = gh``, ``D(g) = g (x) g``."""
    n = F.order
    X = GradedSuperSpace({ZERO_SLOT: n})
    XX = tensor(X, X)
    mul = GradedMap.from_sparse(XX, X, {(F.mul(g, h), g * n + h): 1 for g in range(n) for h in range(n)})
    comul = GradedMap.from_sparse(X, XX, {(g * n + g, g): 1 for g in range(n)})
    unit = GradedMap.from_sparse(UNIT, X, {(F.identity, 0): 1})
    counit = GradedMap.from_sparse(X, UNIT, {(0, g): 1 for g in range(n)})
    antipode = GradedMap.from_sparse(X, X, {(F.inverse(g), g): 1 for g in range(n)})
    return HopfData((X,), {(0, 0): mul}, {(0, 0): comul}, unit, counit, (antipode,), True, f"Q[{F.name or 'F'}]")


def function_hopf(F):
    """Functions on ``F``: the dual of the group ring (all structure maps transposed)."""
    return dual_hopf(group_algebra(F), name=f"Q^{F.name or 'F'}")


def _transpose(f, source, target):
    return GradedMap(source, target, {-s: f.block(s).T for s in f.shared_slots()})


def dual_hopf(H, name=None):
    """Dual of a finite Hopf object concentrated in even degrees with one slot per piece."""
    for P in H.pieces:
        if len(P.slot_list()) > 1 or any(s.parity for s in P.slot_list()):
            raise ShapeError("dual_hopf supports pieces concentrated in a single even slot")
    pieces = tuple(dual(P) for P in H.pieces)
    mul = {k: _transpose(c, tensor(pieces[k[0]], pieces[k[1]]), pieces[k[0] + k[1]]) for k, c in H.comul.items()}
    comul = {k: _transpose(m, pieces[k[0] + k[1]], tensor(pieces[k[0]], pieces[k[1]])) for k, m in H.mul.items()}
    unit = _transpose(H.counit, UNIT, pieces[0])
    counit = _transpose(H.unit, pieces[0], UNIT)
    antipode = tuple(_transpose(S, pieces[n], pieces[n]) for n, S in enumerate(H.antipode))
    return HopfData(pieces, mul, comul, unit, counit, antipode, H.complete, name or f"{H.name}^*")


# ---------------------------------------------------------------------------
# deliberate perturbations (negative controls)


def perturb_antipode(H):
    """Replace the antipode by ``+id`` on odd-degree pieces."""
    antipode = tuple(GradedMap.identity(P) if n % 2 else H.antipode[n] for n, P in enumerate(H.pieces))
    return replace(H, antipode=antipode, name=H.name + "[antipode+]")


def perturb_binomial(H, component=(1, 1), delta=1):
    """Add ``delta`` to the binomial factor of one multiplication component."""
    a, b = component
    m = H.mul_component(a, b)
    c = math.comb(a + b, a)
    mul = dict(H.mul)
    mul[(a, b)] = m.scale(Fraction(c + delta, c))
    return replace(H, mul=mul, name=H.name + f"[binomial{component}]")
