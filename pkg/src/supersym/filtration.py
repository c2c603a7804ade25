"""Filtrations induced by a subobject ``U -> V`` on tensor and symmetric powers.

``Fil_i`` of ``V^{(x)n}`` is spanned by elementary tensors with at least ``i``
factors in ``U``; on ``Sym^n V`` it is the image of that under ``pi^n``.
Every filtration step is an explicit block of spanning columns, and all
containments are decided by exact rank tests.
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FactorizationFailure, ShapeError, Sym2Nonzero
from .linear import (
    GradedMap,
    GradedSuperSpace,
    direct_sum,
    span_contains,
    span_equal,
    subspace,
    tensor,
    tensor_maps,
)
from .qmatrix import QMatrix
from .sympowers import iota_split, pi_merge, sym_map, sym_power, tensor_power
from .tensors import associator, left_nested

UNIT = GradedSuperSpace.unit()


@dataclass(frozen=True, eq=False)
class SubobjectFiltration:
    ambient: GradedSuperSpace
    sub: GradedSuperSpace
    incl: GradedMap
    quotient: GradedSuperSpace
    proj: GradedMap

    @classmethod
    def from_inclusion(cls, incl):
        """Complete an injective map to a short exact sequence ``0 -> U -> V -> W -> 0``."""
        U, V = incl.source, incl.target
        for s, d in U.slot_items():
            if incl.block(s).rank() != d:
                raise ShapeError(f"inclusion is not injective at slot {tuple(s)}")
        blocks, dims = {}, {}
        for s, d in V.slot_items():
            a = incl.block(s) if s in U else QMatrix.zeros(d, 0)
            rows = a.T.nullspace().T  # rows annihilating the image
            if rows.nrows:
                blocks[s] = rows
                dims[s] = rows.nrows
        W = GradedSuperSpace(dims)
        return cls(V, U, incl, W, GradedMap(V, W, blocks))

    def check(self):
        """Exactness of ``0 -> U -> V -> W -> 0``, slot by slot."""
        return exactness_certificate(self.incl, self.proj)


def standard_subobject(V, sub_dims):
    """``U`` spanned by the first ``sub_dims[slot]`` basis vectors of each slot."""
    U = GradedSuperSpace({s: d for s, d in sub_dims.items() if d})
    blocks = {}
    for s, d in U.slot_items():
        if d > V.dim(s):
            raise ShapeError("subobject larger than ambient slot")
        blocks[s] = QMatrix.identity(V.dim(s)).cols(list(range(d)))
    return SubobjectFiltration.from_inclusion(GradedMap(U, V.without_group(), blocks))


def random_subobject(V, sub_dims, rng, lo=-3, hi=3):
    """A generic integer embedding ``U -> V`` with prescribed slot dimensions."""
    U = GradedSuperSpace({s: d for s, d in sub_dims.items() if d})
    blocks = {}
    for s, d in U.slot_items():
        n = V.dim(s)
        if d > n:
            raise ShapeError("subobject larger than ambient slot")
        while True:
            m = QMatrix(np.array(rng.integers(lo, hi + 1, size=(n, d)), dtype=np.int64))
            if m.rank() == d:
                break
        blocks[s] = m
    return SubobjectFiltration.from_inclusion(GradedMap(U, V.without_group(), blocks))


def exactness_certificate(f, g):
    """Checks that ``0 -> A -f-> B -g-> C -> 0`` is exact, returning named verdicts."""
    injective = all(f.block(s).rank() == d for s, d in f.source.slot_items())
    surjective = all(g.block(s).rank() == d for s, d in g.target.slot_items())
    composite_zero = (g @ f).is_zero()
    slots = set(f.source.slot_list()) | set(f.target.slot_list()) | set(g.target.slot_list())
    middle = all(f.target.dim(s) == f.source.dim(s) + g.target.dim(s) for s in slots)
    out = {"injective": injective, "surjective": surjective, "composite_zero": composite_zero, "middle_exact": middle}
    out["exact"] = all(out.values())
    return out


def _columns(space, inc):
    """Column blocks of an inclusion, with empty blocks for missing slots."""
    return {s: (inc.block(s) if s in inc.source else QMatrix.zeros(d, 0)) for s, d in space.slot_items()}


def _span(V, groups):
    """Subspace of ``V`` spanned by the union of column blocks in ``groups``."""
    cols = {}
    for s, d in V.slot_items():
        mats = [g[s] for g in groups if s in g and g[s].ncols]
        cols[s] = QMatrix.hstack(mats, nrows=d).colspace() if mats else QMatrix.zeros(d, 0)
    return subspace(V.without_group(), cols)


def fil_tensor(F, n, i):
    """``Fil_i V^{(x)n}`` as ``(space, inclusion into V^{(x)n})`` (left-nested bracketing)."""
    if n < 0 or i < 0:
        raise ShapeError("n and i must be nonnegative")
    V = F.ambient.without_group()
    T = tensor_power(V, n)
    if i == 0:
        return T, GradedMap.identity(T)
    if i > n:
        return _span(T, [])
    groups = []
    idV = GradedMap.identity(V)
    for S in itertools.combinations(range(n), i):
        f = None
        for k in range(n):
            m = F.incl if k in S else idV
            f = m if f is None else tensor_maps(f, m)
        groups.append(_columns(f.target, f) if f.source.total_dim else {})
    return _span(T, groups)


def _fil_sym_generator(F, n, i):
    """``Sym^i U (x) Sym^{n-i} V -> Sym^n V``, whose image is ``Fil_i Sym^n V``."""
    V = F.ambient.without_group()
    left = sym_map(F.incl, i)
    return pi_merge(V, i, n - i) @ tensor_maps(left, GradedMap.identity(sym_power(V, n - i).space))


def fil_sym(F, n, i):
    """``Fil_i Sym^n V`` as ``(space, inclusion into Sym^n V)``."""
    if n < 0 or i < 0:
        raise ShapeError("n and i must be nonnegative")
    P = sym_power(F.ambient.without_group(), n).space
    if i == 0:
        return P, GradedMap.identity(P)
    if i > n:
        return _span(P, [])
    gen = _fil_sym_generator(F, n, i)
    return _span(P, [{s: gen.block(s) for s in gen.shared_slots()}])


def fil_sym_via_tensors(F, n, i):
    """Reference route: ``pi^n`` applied to ``Fil_i V^{(x)n}``."""
    V = F.ambient.without_group()
    P = sym_power(V, n)
    _, inc = fil_tensor(F, n, i)
    img = P.pi @ inc
    return _span(P.space, [{s: img.block(s) for s in img.shared_slots()}])


@dataclass
class GradedPiece:
    """``g^{n,i}: Fil_i -> Sym^i U (x) Sym^{n-i} W`` with its exactness checks."""

    g: GradedMap
    fil: tuple
    fil_next: tuple
    surjective: bool
    kernel_is_next: bool

    @property
    def exact(self):
        return self.surjective and self.kernel_is_next


def gr_map(F, n, i, normalization="cosym"):
    """The map ``g^{n,i}`` obtained by factoring through ``Fil_i Sym^n V``.

    On ``Sym^i U (x) Sym^{n-i} V`` it is ``id (x) Sym^{n-i}(proj)`` (with the
    ``coSym`` normalization this is divided by ``C(n, i)``).
    """
    if not 0 <= i <= n:
        raise ShapeError("need 0 <= i <= n")
    U, W = F.sub, F.quotient
    V = F.ambient.without_group()
    fil, inc = fil_sym(F, n, i)
    nxt = fil_sym(F, n, i + 1)
    gen = _fil_sym_generator(F, n, i)
    target = tensor(sym_power(U, i).space, sym_power(W, n - i).space)
    h = tensor_maps(GradedMap.identity(sym_power(U, i).space), sym_map(F.proj, n - i))
    if normalization == "cosym":
        h = h.scale(Fraction(1, math.comb(n, i)))
    elif normalization != "sym":
        raise ValueError(f"unknown normalization {normalization!r}")
    blocks = {}
    for s, d in fil.slot_items():
        B = inc.block(s)
        coords = B.solve(gen.block(s)) if s in gen.source else QMatrix.zeros(d, 0)
        if coords is None:
            raise FactorizationFailure(f"generator image leaves Fil_{i} at slot {tuple(s)}")
        if s not in target:
            if s in h.source and not h.block(s).is_zero():
                raise FactorizationFailure(f"nonzero map into an empty slot {tuple(s)}")
            continue
        hs = h.block(s) if s in h.source else QMatrix.zeros(target.dim(s), coords.ncols)
        gt = coords.T.solve(hs.T)
        if gt is None:
            raise FactorizationFailure(f"map does not factor through Fil_{i} at slot {tuple(s)}")
        blocks[s] = gt.T
    g = GradedMap(fil, target, blocks)
    surjective = all(g.block(s).rank() == d for s, d in target.slot_items())
    nspace, ninc = nxt
    kernel_ok = True
    for s, d in fil.slot_items():
        ker = g.block(s).nullspace() if s in target else QMatrix.identity(d)
        nx = ninc.block(s) if s in nspace else QMatrix.zeros(inc.block(s).nrows, 0)
        nx_coords = inc.block(s).solve(nx) if nx.ncols else QMatrix.zeros(d, 0)
        if nx_coords is None or not span_equal(ker, nx_coords):
            kernel_ok = False
    return GradedPiece(g, (fil, inc), nxt, surjective, kernel_ok)


def graded_dimension_identity(F, n):
    """Per ``i``, ``(dim Fil_i - dim Fil_{i+1}, dim Sym^i U * dim Sym^{n-i} W)`` slot by slot."""
    out = {}
    for i in range(n + 1):
        a, _ = fil_sym(F, n, i)
        b, _ = fil_sym(F, n, i + 1)
        t = tensor(sym_power(F.sub, i).space, sym_power(F.quotient, n - i).space)
        slots = set(a.slot_list()) | set(t.slot_list())
        lhs = {s: a.dim(s) - b.dim(s) for s in slots}
        rhs = {s: t.dim(s) for s in slots}
        out[i] = (lhs, rhs)
    return out


@dataclass
class SquareResult:
    passed: bool
    lhs: GradedMap
    rhs: GradedMap

    def witness(self):
        d = self.lhs - self.rhs
        return {
            f"{s.degree},{s.weight}": [[str(x) for x in row] for row in d.block(s).to_fractions()]
            for s in d.shared_slots()
            if not d.block(s).is_zero()
        }


def verify_propcup_square(F, n, factor=None):
    """Commutativity of the cup-product comparison square on ``V^{(x)n-1} (x) U``.

    Top then right: ``(Sym^{n-1}(proj) (x) id) o n * iota_split(n-1, 1) o pi^n``
    (``n * iota_split`` is the sum of the moves sending one factor to the end).
    Left then bottom: ``Sym^{n-1}(proj) o pi^{n-1} (x) incl``.
    ``factor`` overrides the ``n`` (for negative controls).
    """
    if n < 1:
        raise ShapeError("need n >= 1")
    V = F.ambient.without_group()
    T = tensor_power(V, n - 1)
    src = tensor(T, F.sub)
    pn = sym_power(V, n).pi
    into = tensor_maps(GradedMap.identity(T), F.incl)
    if n == 1:
        into = into.with_spaces(src, pn.source)
    c = n if factor is None else factor
    down = tensor_maps(sym_map(F.proj, n - 1), GradedMap.identity(V))
    lhs = (down @ iota_split(V, n - 1, 1) @ pn @ into).scale(c)
    pn1 = sym_power(V, n - 1).pi
    rhs = tensor_maps(sym_map(F.proj, n - 1) @ pn1, F.incl)
    passed = lhs.equals(rhs)
    return SquareResult(passed, lhs, rhs)


@dataclass
class ShortExact:
    spaces: tuple
    maps: tuple
    certificate: dict


def corcup_sequence(F, n):
    """``0 -> Sym^{n-1} W (x) U -> Sym^n V -> Sym^n W -> 0`` when ``Sym^2 U = 0``."""
    if n < 1:
        raise ShapeError("need n >= 1")
    U, W = F.sub, F.quotient
    if sym_power(U, 2).dim:
        raise Sym2Nonzero("Sym^2 U is nonzero")
    fil2, _ = fil_sym(F, n, 2)
    if fil2.total_dim:
        raise FactorizationFailure("Fil_2 Sym^n V is nonzero although Sym^2 U = 0")
    piece = gr_map(F, n, 1)
    fil1, inc1 = piece.fil
    g = piece.g
    inv_blocks = {}
    for s, d in g.target.slot_items():
        inv = g.block(s).inverse() if s in fil1 else None
        if inv is None:
            raise FactorizationFailure(f"g^(n,1) is not invertible at slot {tuple(s)}")
        inv_blocks[s] = inc1.block(s) @ inv
    Sn = sym_power(F.ambient.without_group(), n).space
    Wn1 = sym_power(W, n - 1).space
    A = tensor(Wn1, U)
    swap_src = GradedMap(g.target, Sn, inv_blocks)
    # Sym^{n-1} W (x) U -> U (x) Sym^{n-1} W (Sym^1 U is U in the same basis)
    from .linear import braiding

    flip = braiding(Wn1, U)
    flip = flip.with_spaces(A, g.target)
    a = swap_src @ flip
    b = sym_map(F.proj, n)
    cert = exactness_certificate(a, b)
    cert["fil2_zero"] = True
    return ShortExact((A, Sn, b.target), (a, b), cert)


# ---------------------------------------------------------------------------
# auxiliary identities


def intersect_columns(a, b):
    """Columns spanning ``span(a) & span(b)``."""
    if a.ncols == 0 or b.ncols == 0:
        return QMatrix.zeros(a.nrows, 0)
    null = QMatrix.hstack([a, -b]).nullspace()
    return (a @ null.rows(list(range(a.ncols)))).colspace()


def tensor_intersection_check(Ap, A, Bp, B):
    """``(A' (x) B) & (A (x) B') == A' (x) B'`` for column blocks ``A' <= A``, ``B' <= B``.

    All four are matrices of columns inside ambient spaces of dims ``a, b``;
    tensors are Kronecker products in the ambient ``a*b`` space.
    """
    x = Ap.kron(B)
    y = A.kron(Bp)
    z = Ap.kron(Bp)
    return span_equal(intersect_columns(x, y), z) if z.ncols else intersect_columns(x, y).ncols == 0


def lemfilt_sequence(F, n, i):
    """Exactness of ``0 -> U (x) Fil_i -> (U (x) Fil_{i-1}) (+) (V (x) Fil_i) -> Fil_i V^{(x)n} -> 0``.

    The ``Fil`` on the left are of ``V^{(x)n-1}``; the first map is
    ``x -> (x, -x)`` and the second adds the two inclusions.
    """
    if n < 1:
        raise ShapeError("need n >= 1")
    V = F.ambient.without_group()
    U = F.sub
    f_i, inc_i = fil_tensor(F, n - 1, i)
    f_im1, inc_im1 = fil_tensor(F, n - 1, max(i - 1, 0))
    total, inc_total = fil_tensor(F, n, i)
    # inclusions of the two summands into V^{(x)n}, re-bracketed
    first = tensor_maps(F.incl, inc_im1)
    second = tensor_maps(GradedMap.identity(V), inc_i)
    if n > 2:
        first = _rebracket(V, n) @ first
        second = _rebracket(V, n) @ second
    else:
        T = tensor_power(V, n)
        first = first.with_spaces(first.source, T)
        second = second.with_spaces(second.source, T)
    bp = direct_sum(tensor(U, f_im1), tensor(V, f_i))
    alpha = bp.inj[0] @ tensor_maps(GradedMap.identity(U), _corestrict_into(inc_i, inc_im1)) - bp.inj[1] @ tensor_maps(
        F.incl, GradedMap.identity(f_i)
    )
    summed = first @ bp.proj[0] + second @ bp.proj[1]
    beta = _corestrict(summed, inc_total)
    return exactness_certificate(alpha, beta)


def _rebracket(V, n):
    """``V (x) (V^{(x)n-1}, left nested) -> V^{(x)n}, left nested``."""
    def shifted(t):
        return t + 1 if isinstance(t, int) else (shifted(t[0]), shifted(t[1]))

    return associator([V] * n, (0, shifted(left_nested(n - 1))), left_nested(n))


def _corestrict(f, inc):
    """Express a map landing in the image of ``inc`` as a map into ``inc.source``."""
    blocks = {}
    for s, d in inc.source.slot_items():
        if s not in f.source:
            continue
        x = inc.block(s).solve(f.block(s))
        if x is None:
            raise FactorizationFailure(f"map leaves the subspace at slot {tuple(s)}")
        blocks[s] = x
    return GradedMap(f.source, inc.source, blocks)


def _corestrict_into(small, big):
    """``small.source -> big.source`` when ``image(small) <= image(big)``."""
    return _corestrict(small, big)


def multiplicativity_check(F, n, m, i, j):
    """``pi_merge`` maps ``Fil_i Sym^n (x) Fil_j Sym^m`` into ``Fil_{i+j} Sym^{n+m}``."""
    V = F.ambient.without_group()
    _, a = fil_sym(F, n, i)
    _, b = fil_sym(F, m, j)
    _, c = fil_sym(F, n + m, i + j)
    img = pi_merge(V, n, m) @ tensor_maps(a, b)
    P = c.target
    for s, d in P.slot_items():
        big = c.block(s) if s in c.source else QMatrix.zeros(d, 0)
        small = img.block(s) if s in img.source else QMatrix.zeros(d, 0)
        if not span_contains(big, small):
            return False
    return True


def gr_dimension_sum(F, n):
    """``sum_i dim Gr_i Sym^n V`` against ``dim Sym^n V``."""
    total = 0
    for i in range(n + 1):
        total += fil_sym(F, n, i)[0].total_dim - fil_sym(F, n, i + 1)[0].total_dim
    return total, sym_power(F.ambient, n).dim


__all__ = [
    "SubobjectFiltration",
    "standard_subobject",
    "random_subobject",
    "exactness_certificate",
    "fil_tensor",
    "fil_sym",
    "fil_sym_via_tensors",
    "gr_map",
    "GradedPiece",
    "graded_dimension_identity",
    "verify_propcup_square",
    "corcup_sequence",
    "intersect_columns",
    "tensor_intersection_check",
    "lemfilt_sequence",
    "multiplicativity_check",
    "gr_dimension_sum",
]
