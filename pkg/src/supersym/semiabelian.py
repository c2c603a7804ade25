"""Cohomology of commutative group schemes at the level of graded linear algebra.

A group scheme is described by a :class:`GroupSchemeSpec`: abelian dimension
``g``, torus rank ``r``, unipotent dimension ``u``, lattice rank ``d`` (for
1-motives), the component group and optional Galois data.  Its ``H^1`` lives
in degree 1 with weights 0 (lattice), 1 (abelian part) and 2 (torus), and the
connected part of ``H^*`` is ``coSym(H^1)``.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import DegenerateInterpolation, EquivarianceMismatch, InvalidSpec
from .hopf import (
    check_bialgebra_morphism,
    cosym_algebra,
    function_hopf,
    primitives,
    sum_decomposition_iso,
    tensor_hopf,
)
from .linear import FiniteGroup, GradedMap, GradedSuperSpace, Slot, subspace
from .qmatrix import QMatrix
from .sympowers import sym_map, sym_power
from .tensors import flat_index

LATTICE, ABELIAN, TORUS = Slot(1, 0), Slot(1, 1), Slot(1, 2)


def _qm(m):
    return m if isinstance(m, QMatrix) else QMatrix.from_rows(m)


@dataclass(frozen=True, eq=False)
class GaloisData:
    """A finite group with representations given on chosen generators.

    Each ``*_rep`` maps a group element to its matrix; elements not listed are
    obtained by closure along the multiplication table.  ``pi0_action`` maps
    an element to a permutation of the component group (a list of images).
    """

    group: FiniteGroup
    cocharacter_rep: dict = field(default_factory=dict)
    abelian_rep: dict = None
    lattice_rep: dict = None
    pi0_action: dict = None


def _check_rep(name, rep, n):
    for g, m in (rep or {}).items():
        m = _qm(m)
        if m.shape != (n, n):
            raise InvalidSpec(f"{name} for element {g} must be {n}x{n}")
        if n and m.det() == 0:
            raise InvalidSpec(f"{name} for element {g} is not invertible")


@dataclass(frozen=True, eq=False)
class GroupSchemeSpec:
    g: int = 0
    r: int = 0
    u: int = 0
    d: int = 0
    pi0: FiniteGroup = field(default_factory=FiniteGroup.trivial)
    galois: GaloisData = None

    def __post_init__(self):
        for name in ("g", "r", "u", "d"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InvalidSpec(f"{name} must be a nonnegative integer, got {v!r}")
        if self.galois is not None:
            G = self.galois
            _check_rep("cocharacter_rep", G.cocharacter_rep, self.r)
            _check_rep("abelian_rep", G.abelian_rep, 2 * self.g)
            _check_rep("lattice_rep", G.lattice_rep, self.d)
            for h, perm in (G.pi0_action or {}).items():
                _check_pi0_automorphism(self.pi0, perm)

    @property
    def h1_dim(self):
        return 2 * self.g + self.d + self.r

    def describe(self):
        return {"g": self.g, "r": self.r, "u": self.u, "d": self.d, "pi0_order": self.pi0.order}


def _check_pi0_automorphism(F, perm):
    perm = list(perm)
    if sorted(perm) != list(range(F.order)):
        raise InvalidSpec("pi0_action entries must be permutations of the components")
    for a in range(F.order):
        for b in range(F.order):
            if perm[F.mul(a, b)] != F.mul(perm[a], perm[b]):
                raise InvalidSpec("pi0_action must act by group automorphisms")


def h1(spec):
    """``H^1``: slots ``(1,0): d``, ``(1,1): 2g``, ``(1,2): r``; the unipotent part contributes nothing."""
    slots = {LATTICE: spec.d, ABELIAN: 2 * spec.g, TORUS: spec.r}
    if spec.galois is None:
        return GradedSuperSpace(slots)
    G = spec.galois
    gens = {}
    reps = ((LATTICE, G.lattice_rep), (ABELIAN, G.abelian_rep), (TORUS, G.cocharacter_rep))
    elements = set()
    for _, rep in reps:
        elements |= set((rep or {}).keys())
    for h in elements:
        mats = {}
        for s, rep in reps:
            n = slots[s]
            if n:
                mats[s] = _qm(rep[h]) if rep and h in rep else QMatrix.identity(n)
        gens[h] = mats
    if not gens:
        return GradedSuperSpace(slots).with_trivial_action(G.group)
    try:
        return GradedSuperSpace.with_generators(slots, G.group, gens)
    except EquivarianceMismatch as exc:
        raise InvalidSpec(f"Galois representation does not respect the group: {exc}") from exc


def _pi0_space(spec):
    F = spec.pi0
    X = GradedSuperSpace({Slot(0, 0): F.order})
    if spec.galois is None or not spec.galois.pi0_action:
        return X
    gens = {}
    for h, perm in spec.galois.pi0_action.items():
        gens[h] = {Slot(0, 0): QMatrix.from_entries(F.order, F.order, {(perm[x], x): 1 for x in range(F.order)})}
    return GradedSuperSpace.with_generators({Slot(0, 0): F.order}, spec.galois.group, gens)


@dataclass(frozen=True, eq=False)
class CohomologyModel:
    spec: GroupSchemeSpec
    h1: GradedSuperSpace
    hopf: object
    pi0_part: object
    pi0_space: GradedSuperSpace

    @property
    def betti(self):
        c = self.spec.pi0.order
        return [P.total_dim * c for P in self.hopf.pieces]

    @property
    def euler_characteristic(self):
        return sum((-1) ** i * b for i, b in enumerate(self.betti))

    @cached_property
    def full(self):
        """``coSym(H^1) (x) Q^{pi0}`` as one Hopf object."""
        return tensor_hopf(self.hopf, self.pi0_part)

    def degree_piece(self, i):
        return self.hopf.piece(i)


def cohomology(spec):
    H1 = h1(spec)
    hopf = cosym_algebra(H1.without_group())
    return CohomologyModel(spec, H1, hopf, function_hopf(spec.pi0), _pi0_space(spec))


def _model(spec_or_model):
    return spec_or_model if isinstance(spec_or_model, CohomologyModel) else cohomology(spec_or_model)


def multiplication_by_n(spec, n, check=False):
    """``[n]^*`` on the connected carrier: ``n^i`` on degree ``i``.

    With ``check=True`` also verifies that the per-degree maps agree with
    ``Sym^i(n * id)`` and form a bialgebra endomorphism.
    """
    M = _model(spec)
    H = M.hopf
    pieces = tuple(GradedMap.scalar(P, Fraction(n) ** i) for i, P in enumerate(H.pieces))
    if check:
        base = GradedMap.scalar(M.h1.without_group(), n)
        for i, f in enumerate(pieces):
            if not sym_map(base, i).equals(f):
                raise AssertionError(f"Sym^{i}(n id) differs from n^{i} id")
        if not check_bialgebra_morphism(pieces, H, H).passed:
            raise AssertionError("multiplication by n is not a bialgebra endomorphism")
    return H.carrier_endomorphism(pieces)


def coordinate_projection(spec, i):
    H = _model(spec).hopf
    return H.piece_inclusion(i) @ H.piece_projection(i) if 0 <= i <= H.top else GradedMap.zero(H.carrier, H.carrier)


def kunneth_projector(spec, i, n):
    """``p_i = prod_{j != i} (phi - n^j) / (n^i - n^j)`` with ``phi = [n]^*``."""
    if abs(n) <= 1:
        raise DegenerateInterpolation(f"n = {n}: the values n^j are not pairwise distinct")
    M = _model(spec)
    N = M.hopf.top
    if not 0 <= i <= N:
        raise InvalidSpec(f"degree {i} outside 0..{N}")
    phi = multiplication_by_n(M, n)
    C = M.hopf.carrier
    ident = GradedMap.identity(C)
    p = ident
    for j in range(N + 1):
        if j == i:
            continue
        p = p @ (phi - ident.scale(n**j)).scale(Fraction(1, n**i - n**j))
    return p


@dataclass
class WeightStep:
    weight: int
    space: GradedSuperSpace
    inclusion: GradedMap
    graded_dim: int


def weight_filtration(spec, i):
    """Increasing weight filtration on ``H^i`` (connected part).

    Returns one :class:`WeightStep` per weight ``m = i + a`` with
    ``max(0, i - 2g) <= a <= min(i, r)``; ``W_m`` is spanned by the monomials of
    weight at most ``m``.
    """
    if spec.d:
        raise InvalidSpec("weight_filtration expects d = 0; use one_motive for lattice parts")
    M = _model(spec)
    if not 0 <= i <= M.hopf.top:
        raise InvalidSpec(f"degree {i} outside 0..{M.hopf.top}")
    X = M.hopf.piece(i)
    out = []
    for a in range(max(0, i - 2 * spec.g), min(i, spec.r) + 1):
        m = i + a
        cols = {s: QMatrix.identity(dim) for s, dim in X.slot_items() if s.weight <= m}
        W, inc = subspace(X, cols)
        out.append(WeightStep(m, W, inc, X.dim(Slot(i, m))))
    return out


def expected_weight_dims(g, r, i):
    return {i + a: math.comb(r, a) * math.comb(2 * g, i - a) for a in range(max(0, i - 2 * g), min(i, r) + 1)}


@dataclass
class DetMotive:
    slot: Slot
    dim: int
    character: tuple
    order: object
    via_determinants: tuple


def _scalar_order(values):
    order = 1
    for v in values:
        if v == 1:
            continue
        if v == -1:
            order = math.lcm(order, 2)
        else:
            return None
    return order


def is_signed_permutation(m):
    m = _qm(m).to_fractions()
    for row in m:
        nz = [x for x in row if x]
        if len(nz) != 1 or abs(nz[0]) != 1:
            return False
    for col in zip(*m):
        if sum(1 for x in col if x) != 1:
            return False
    return True


def det_motive(spec):
    """``Sym^{2g+r} H^1``: one line in degree ``2g+r``, weight ``2(g+r)``, with its Galois character."""
    if spec.d:
        raise InvalidSpec("det_motive expects d = 0")
    H1 = h1(spec)
    N = spec.h1_dim
    top = sym_power(H1, N).space
    (slot, dim), = top.slot_items()
    if H1.group is None:
        return DetMotive(slot, dim, (Fraction(1),), 1, (Fraction(1),))
    G = H1.group
    character = tuple(top.action[x][slot][0, 0] for x in range(G.order))
    dets = []
    for x in range(G.order):
        v = Fraction(1)
        for s, _ in H1.slot_items():
            v *= H1.action[x][s].det()
        dets.append(v)
    return DetMotive(slot, dim, character, _scalar_order(character), tuple(dets))


@dataclass
class Pairing:
    degree: int
    matrix: QMatrix
    determinant: Fraction

    @property
    def nondegenerate(self):
        return self.matrix.nrows == self.matrix.ncols and self.determinant != 0


def _pairing_matrix(H, i, j):
    mul = H.mul_component(i, j)
    P, Q = H.piece(i), H.piece(j)
    idx, _ = flat_index([P, Q], (0, 1))
    dense = mul.to_dense().to_fractions()
    rows = []
    for a in range(P.total_dim):
        rows.append([dense[0][idx[(a, b)]] if dense else 0 for b in range(Q.total_dim)])
    return QMatrix.from_rows(rows, ncols=Q.total_dim)


def poincare_pairing(spec, i):
    """``H^i (x) H^{N-i} -> H^N`` from the coSym product, as a square matrix."""
    if spec.d:
        raise InvalidSpec("poincare_pairing expects d = 0")
    H = _model(spec).hopf
    N = H.top
    if not 0 <= i <= N:
        raise InvalidSpec(f"degree {i} outside 0..{N}")
    m = _pairing_matrix(H, i, N - i)
    return Pairing(i, m, m.det() if m.nrows == m.ncols else Fraction(0))


def pairing_symmetry(spec, i):
    """``M_{i,N-i} == (-1)^{i(N-i)} M_{N-i,i}^T``."""
    H = _model(spec).hopf
    N = H.top
    a = _pairing_matrix(H, i, N - i)
    b = _pairing_matrix(H, N - i, i)
    return a == b.T.scale((-1) ** (i * (N - i)))


@dataclass
class ProductResult:
    spec: GroupSchemeSpec
    certificate: dict


def _full_action(space):
    return {x: space.action[x] for x in range(space.group.order)}


def product(spec1, spec2, certify=True):
    """Spec of ``G_1 x G_2`` with a certificate ``H^*(G_1 x G_2) = H^*(G_1) (x) H^*(G_2)``."""
    gal = None
    if spec1.galois is not None and spec2.galois is not None:
        if spec1.galois.group != spec2.galois.group:
            raise EquivarianceMismatch("the two specs carry different Galois groups")
    if spec1.galois is not None or spec2.galois is not None:
        G = (spec1.galois or spec2.galois).group
        a, b = h1(spec1), h1(spec2)
        a = a if a.group is not None else a.with_trivial_action(G)
        b = b if b.group is not None else b.with_trivial_action(G)

        def rep(slot):
            n1, n2 = a.dim(slot), b.dim(slot)
            if not n1 + n2:
                return None
            out = {}
            for x in range(G.order):
                blocks = [m for m, n in ((a.action[x].get(slot), n1), (b.action[x].get(slot), n2)) if n]
                out[x] = QMatrix.block_diag(blocks)
            return out

        pi0_action = None
        if (spec1.galois and spec1.galois.pi0_action) or (spec2.galois and spec2.galois.pi0_action):
            s1, s2 = _pi0_space(spec1), _pi0_space(spec2)
            s1 = s1 if s1.group is not None else s1.with_trivial_action(G)
            s2 = s2 if s2.group is not None else s2.with_trivial_action(G)
            m2 = spec2.pi0.order
            pi0_action = {}
            for x in range(G.order):
                p1 = _perm_of(s1.action[x][Slot(0, 0)])
                p2 = _perm_of(s2.action[x][Slot(0, 0)])
                pi0_action[x] = [p1[e // m2] * m2 + p2[e % m2] for e in range(spec1.pi0.order * m2)]
        gal = GaloisData(G, rep(TORUS) or {}, rep(ABELIAN), rep(LATTICE), pi0_action)
    spec = GroupSchemeSpec(
        spec1.g + spec2.g,
        spec1.r + spec2.r,
        spec1.u + spec2.u,
        spec1.d + spec2.d,
        FiniteGroup.direct_product(spec1.pi0, spec2.pi0),
        gal,
    )
    cert = {}
    if certify:
        U, W = h1(spec1).without_group(), h1(spec2).without_group()
        fwd, inv, src, tgt = sum_decomposition_iso(U, W)
        morph = check_bialgebra_morphism(fwd, src, tgt)
        inverse_ok = all(
            (inv[n] @ fwd[n]).equals(GradedMap.identity(src.pieces[n]))
            and (fwd[n] @ inv[n]).equals(GradedMap.identity(tgt.piece(n)))
            for n in range(len(fwd))
        )
        shape_ok = tgt.pieces[1].same_shape(h1(spec).without_group()) if tgt.top >= 1 else h1(spec).total_dim == 0
        b1, b2, b = cohomology(spec1).betti, cohomology(spec2).betti, cohomology(spec).betti
        conv = [sum(b1[k] * b2[n - k] for k in range(n + 1) if k < len(b1) and n - k < len(b2)) for n in range(len(b))]
        cert = {
            "hopf_morphism": morph.passed,
            "inverse": inverse_ok,
            "h1_shape": shape_ok,
            "betti_convolution": conv == b,
        }
        cert["passed"] = all(cert.values())
    return ProductResult(spec, cert)


def _perm_of(m):
    rows = m.to_fractions()
    return [next(i for i in range(len(rows)) if rows[i][j]) for j in range(len(rows))]


@dataclass
class OneMotiveReport:
    h1: GradedSuperSpace
    h1_dim: int
    weights: dict
    kimura_top: int
    kimura_bound: bool
    betti: list


def one_motive(spec):
    """Realization of a 1-motive ``[Z^d -> G]``: ``H^1`` of dimension ``2g+d+r`` with weights 0, 1, 2."""
    H1 = h1(spec)
    N = H1.total_dim
    weights = {w: H1.dim(Slot(1, w)) for w in (0, 1, 2) if H1.dim(Slot(1, w))}
    plain = H1.without_group()
    bound = sym_power(plain, N + 1).dim == 0 and sym_power(plain, N).dim == 1
    return OneMotiveReport(H1, N, weights, N, bound, cohomology(spec).betti)


def curve_shadow(g):
    """``1 (+) H^1(J) (+) 1(1)[2]`` for a curve of genus ``g``."""
    return GradedSuperSpace({Slot(0, 0): 1, ABELIAN: 2 * g, Slot(2, 2): 1})


def betti_of_space(V):
    """Dimensions by cohomological degree, from 0 to the top degree."""
    top = max((s.degree for s in V.slot_list()), default=-1)
    return [sum(d for s, d in V.slot_items() if s.degree == k) for k in range(top + 1)]


def primitives_match_h1(spec):
    """Span equality of the primitives of ``coSym(H^1)`` with ``H^1`` in degree 1."""
    M = _model(spec)
    P, inc, per = primitives(M.hopf)
    if M.hopf.top == 0:
        return P.total_dim == 0
    if any(p.total_dim for n, (p, _) in per.items() if n != 1):
        return False
    p1, i1 = per[1]
    return p1.same_shape(M.hopf.piece(1)) and all(i1.block(s).rank() == d for s, d in p1.slot_items())


__all__ = [
    "GaloisData",
    "GroupSchemeSpec",
    "CohomologyModel",
    "h1",
    "cohomology",
    "multiplication_by_n",
    "coordinate_projection",
    "kunneth_projector",
    "WeightStep",
    "weight_filtration",
    "expected_weight_dims",
    "DetMotive",
    "det_motive",
    "is_signed_permutation",
    "Pairing",
    "poincare_pairing",
    "pairing_symmetry",
    "product",
    "ProductResult",
    "one_motive",
    "OneMotiveReport",
    "curve_shadow",
    "betti_of_space",
    "primitives_match_h1",
]
