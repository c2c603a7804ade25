"""Symmetric and exterior powers in the Koszul-signed sense.

``Sym^n V`` is the image of the averaging projector on ``V^{(x)n}``; its basis is
the set of multisets of basis indices of ``V`` in which odd indices do not
repeat, sorted lexicographically within each slot.  ``iota`` is the inclusion
of the projector image and ``pi`` the projector followed by coordinate
extraction, so ``pi o iota = id``.  Exterior powers swap the roles of even and
odd indices.
"""
import contextlib
import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import ShapeError
from .linear import GradedMap, GradedSuperSpace, Slot, ZERO_SLOT, tensor, tensor_maps
from .qmatrix import QMatrix
from .tensors import flat_index, left_nested, rearrange, tree_basis, tree_space

DEFAULT_MAX_DEGREE = 12
_cap_override = None


def max_degree():
    """Configured cap on symmetric-power degrees.

    Precedence: :func:`degree_cap` override, then ``ENGINE_MAX_DEGREE``, then 12.
    """
    if _cap_override is not None:
        return _cap_override
    return int(os.environ.get("ENGINE_MAX_DEGREE", DEFAULT_MAX_DEGREE))


@contextlib.contextmanager
def degree_cap(n):
    """Temporarily set the symmetric-power degree cap."""
    global _cap_override
    old, _cap_override = _cap_override, n
    try:
        yield
    finally:
        _cap_override = old


def _check_n(n):
    if n < 0:
        raise ShapeError("power must be non-negative")
    if n > max_degree():
        raise ShapeError(f"degree {n} exceeds the configured cap {max_degree()}")


# ---------------------------------------------------------------------------
# sign bookkeeping


def sort_sign(t, parity, mode="sym"):
    """Sign picked up when sorting the factor sequence ``t`` into order.

    Each reversed pair contributes ``(-1)^(p q)`` (``mode="sym"``) or
    ``-(-1)^(p q)`` (``mode="alt"``).  Returns 0 when the sorted sequence is
    killed by the projector (repeated odd index for ``sym``, repeated even
    index for ``alt``).
    """
    killer = 1 if mode == "sym" else 0
    sign = 1
    n = len(t)
    for a in range(n):
        for b in range(a + 1, n):
            x, y = t[a], t[b]
            if x == y:
                if parity[x] == killer:
                    return 0
            elif x > y:
                both_odd = parity[x] & parity[y]
                if mode == "sym":
                    if both_odd:
                        sign = -sign
                elif not both_odd:
                    sign = -sign
    return sign


def merge_sign(a, b, parity, mode="sym"):
    """Sign of sorting the concatenation of two sorted sequences, 0 if killed."""
    killer = 1 if mode == "sym" else 0
    sign = 1
    for x in a:
        for y in b:
            if x == y:
                if parity[x] == killer:
                    return 0
            elif x > y:
                both_odd = parity[x] & parity[y]
                if mode == "sym":
                    if both_odd:
                        sign = -sign
                elif not both_odd:
                    sign = -sign
    return sign


def _multiplicity_factor(m):
    out = 1
    for _, grp in itertools.groupby(m):
        out *= math.factorial(len(list(grp)))
    return out


def distinct_arrangements(m):
    """All distinct orderings of the multiset ``m`` (lexicographic order)."""
    counts = {}
    for x in m:
        counts[x] = counts.get(x, 0) + 1
    keys = sorted(counts)
    n = len(m)
    out = []
    cur = []

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                cur.append(k)
                rec()
                cur.pop()
                counts[k] += 1

    rec()
    return out


def sub_multisets(m, k):
    """Pairs ``(a, b)`` with ``a`` a size-``k`` sub-multiset of ``m`` and ``b`` the rest."""
    groups = [(x, len(list(g))) for x, g in itertools.groupby(m)]
    out = []

    def rec(i, chosen, rest, size):
        if i == len(groups):
            if size == k:
                out.append((tuple(chosen), tuple(rest)))
            return
        x, c = groups[i]
        for take in range(min(c, k - size) + 1):
            rec(i + 1, chosen + [x] * take, rest + [x] * (c - take), size + take)

    rec(0, [], [], 0)
    return out


# ---------------------------------------------------------------------------
# powers


@lru_cache(maxsize=256)
def _power_basis(shape, n, mode):
    parity = [s.degree % 2 for s, d in shape for _ in range(d)]
    slot_of = [s for s, d in shape for _ in range(d)]
    killer = 1 if mode == "sym" else 0
    by_slot = {}
    for m in itertools.combinations_with_replacement(range(len(parity)), n):
        if any(m[i] == m[i + 1] and parity[m[i]] == killer for i in range(n - 1)):
            continue
        s = ZERO_SLOT
        for x in m:
            s = s + slot_of[x]
        by_slot.setdefault(s, []).append(m)
    order = []
    for s in sorted(by_slot):
        order.extend(by_slot[s])
    return tuple(order), {s: len(v) for s, v in by_slot.items()}


@dataclass(frozen=True, eq=False)
class SymPower:
    """``Sym^n`` (or ``Lambda^n``) of a space with its splitting into ``V^{(x)n}``.

    ``basis`` lists multisets of base indices in global order; ``iota`` and
    ``pi`` are built on first use.
    """

    base: GradedSuperSpace
    n: int
    mode: str
    space: GradedSuperSpace
    basis: tuple
    index: dict = field(repr=False)

    @cached_property
    def parity(self):
        return [s.parity for s in self.base.basis_slots()]

    @cached_property
    def tensor_space(self):
        if self.n == 0:
            return GradedSuperSpace.unit()
        return tree_space([self.base] * self.n, left_nested(self.n))

    @cached_property
    def iota(self):
        """Inclusion of the projector image, ``Sym^n V -> V^{(x)n}``."""
        if self.n == 0:
            return GradedMap.identity(self.space).with_spaces(self.space, self.tensor_space)
        idx, _ = flat_index([self.base] * self.n, left_nested(self.n))
        scale = math.factorial(self.n)
        ent = {}
        for col, m in enumerate(self.basis):
            c = Fraction(_multiplicity_factor(m), scale)
            for t in distinct_arrangements(m):
                sgn = sort_sign(t, self.parity, self.mode)
                ent[(idx[_flat(t)], col)] = c * sgn
        return GradedMap.from_sparse(self.space, self.tensor_space, ent)

    @cached_property
    def pi(self):
        """Projector followed by coordinates, ``V^{(x)n} -> Sym^n V``."""
        if self.n == 0:
            return GradedMap.identity(self.space).with_spaces(self.tensor_space, self.space)
        _, order = flat_index([self.base] * self.n, left_nested(self.n))
        ent = {}
        for col, t in enumerate(order):
            sgn = sort_sign(t, self.parity, self.mode)
            if sgn:
                ent[(self.index[tuple(sorted(t))], col)] = sgn
        return GradedMap.from_sparse(self.tensor_space, self.space, ent)

    @property
    def dim(self):
        return self.space.total_dim


def _flat(t):
    return tuple(t)


def _power(V, n, mode):
    _check_n(n)
    if n == 0:
        basis, dims = ((),), {ZERO_SLOT: 1}
    else:
        basis, dims = _power_basis(V.slot_items(), n, mode)
    space = GradedSuperSpace(dims)
    if V.group is not None:
        plain = V.without_group()
        action = [_power_map(V.act(g).with_spaces(plain, plain), n, mode).blocks() for g in range(V.group.order)]
        space = GradedSuperSpace(dims, group=V.group, action=action)
    index = {m: i for i, m in enumerate(basis)}
    return SymPower(V, n, mode, space, basis, index)


def sym_power(V, n):
    """``Sym^n V``; a group action on ``V`` induces one on the power."""
    return _power(V, n, "sym")


def alt_power(V, n):
    return _power(V, n, "alt")


def sym_dim_formula(odd, even, n):
    """``sum_k C(o, k) C(e + n - k - 1, n - k)``."""
    total = 0
    for k in range(0, min(odd, n) + 1):
        j = n - k
        if even == 0:
            total += math.comb(odd, k) if j == 0 else 0
        else:
            total += math.comb(odd, k) * math.comb(even + j - 1, j)
    return total


def alt_dim_formula(odd, even, n):
    return sym_dim_formula(even, odd, n)


# ---------------------------------------------------------------------------
# group actions on tensor powers


def tensor_power(V, n):
    if n == 0:
        return GradedSuperSpace.unit()
    return tree_space([V] * n, left_nested(n))


def tensor_power_map(f, n):
    if n == 0:
        return GradedMap.identity(GradedSuperSpace.unit())
    out = f
    for _ in range(n - 1):
        out = tensor_maps(out, f)
    return out


def permutation_action(V, n, sigma, mode="koszul"):
    """Action of ``sigma`` on ``V^{(x)n}``: factor ``k`` moves to position ``sigma[k]``."""
    if n < 0:
        raise ShapeError("n must be non-negative")
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(n)):
        raise ShapeError(f"{sigma!r} is not a permutation of {n} letters")
    if n == 0:
        return GradedMap.identity(GradedSuperSpace.unit())
    tree = left_nested(n)
    return rearrange([V] * n, tree, sigma, tree, mode=mode)


def _average(V, n, mode):
    _check_n(n)
    if n == 0:
        return GradedMap.identity(GradedSuperSpace.unit())
    total = None
    for sigma in itertools.permutations(range(n)):
        a = permutation_action(V, n, sigma, mode=mode)
        total = a if total is None else total + a
    return total.scale(Fraction(1, math.factorial(n)))


def symmetrizer(V, n):
    """``(1/n!) sum_sigma sigma`` on ``V^{(x)n}`` with Koszul signs."""
    return _average(V, n, "koszul")


def antisymmetrizer(V, n):
    """``(1/n!) sum_sigma sgn(sigma) sigma`` on ``V^{(x)n}`` with Koszul signs."""
    return _average(V, n, "alternating")


# ---------------------------------------------------------------------------
# multiplication and comultiplication pieces


def _pair_index(A, B):
    return flat_index([A, B], (0, 1))


def pi_merge(V, n, m):
    """``Sym^n V (x) Sym^m V -> Sym^{n+m} V`` induced by ``pi^{n+m}``."""
    V = V.without_group()
    P, Q, R = sym_power(V, n), sym_power(V, m), sym_power(V, n + m)
    src = tensor(P.space, Q.space)
    _, order = _pair_index(P.space, Q.space)
    parity = [s.parity for s in V.basis_slots()]
    ent = {}
    for col, (i, j) in enumerate(order):
        a, b = P.basis[i], Q.basis[j]
        sgn = merge_sign(a, b, parity) if (a and b) else 1
        if sgn:
            ent[(R.index[tuple(sorted(a + b))], col)] = sgn
    return GradedMap.from_sparse(src, R.space, ent)


def iota_split(V, n, m):
    """``Sym^{n+m} V -> Sym^n V (x) Sym^m V`` induced by ``iota^{n+m}``."""
    V = V.without_group()
    P, Q, R = sym_power(V, n), sym_power(V, m), sym_power(V, n + m)
    tgt = tensor(P.space, Q.space)
    idx, _ = _pair_index(P.space, Q.space)
    parity = [s.parity for s in V.basis_slots()]
    ent = {}
    for col, mset in enumerate(R.basis):
        base = Fraction(_multiplicity_factor(mset) * math.factorial(n) * math.factorial(m), math.factorial(n + m))
        for a, b in sub_multisets(mset, n):
            sgn = merge_sign(a, b, parity) if (a and b) else 1
            if sgn:
                c = base / (_multiplicity_factor(a) * _multiplicity_factor(b))
                ent[(idx[(P.index[a], Q.index[b])], col)] = c * sgn
    return GradedMap.from_sparse(R.space, tgt, ent)


def sym_map(f, n):
    """``Sym^n(f)`` computed as ``pi o f^{(x)n} o iota`` by supercommutative expansion."""
    return _power_map(f, n, "sym")


def alt_map(f, n):
    return _power_map(f, n, "alt")


def _power_map(f, n, mode):
    _check_n(n)
    P, Q = _power(f.source.without_group(), n, mode), _power(f.target.without_group(), n, mode)
    if n == 0:
        return GradedMap.identity(P.space)
    dense = f.to_dense()
    cols = dense.to_fractions()
    parity = Q.parity
    nz = [[(j, cols[j][i]) for j in range(f.target.total_dim) if cols[j][i]] for i in range(f.source.total_dim)]
    ent = {}
    for col, m in enumerate(P.basis):
        state = {(): Fraction(1)}
        for x in m:
            new = {}
            for mset, c in state.items():
                for j, v in nz[x]:
                    sgn = merge_sign(mset, (j,), parity, mode)
                    if sgn:
                        key = tuple(sorted(mset + (j,)))
                        new[key] = new.get(key, 0) + sgn * c * v
            state = {k: v for k, v in new.items() if v}
        for mset, c in state.items():
            ent[(Q.index[mset], col)] = c
    return GradedMap.from_sparse(P.space, Q.space, ent)


def sym_map_via_tensors(f, n):
    """Reference route ``pi_W o f^{(x)n} o iota_V`` through the full tensor power."""
    P, Q = sym_power(f.source, n), sym_power(f.target, n)
    if n == 0:
        return GradedMap.identity(P.space)
    return Q.pi @ tensor_power_map(f, n) @ P.iota


# ---------------------------------------------------------------------------
# Kimura dimensions


def kimura_odd_dimension(V):
    """Largest ``N`` with ``Sym^N V != 0`` when ``Sym`` eventually vanishes, else None."""
    even, odd = V.parity_dims()
    if even:
        return None
    n = 0
    while sym_power(V, n + 1).dim:
        n += 1
    return n


def kimura_even_dimension(V):
    """Largest ``N`` with ``Lambda^N V != 0`` when ``Lambda`` eventually vanishes, else None."""
    even, odd = V.parity_dims()
    if odd:
        return None
    n = 0
    while alt_power(V, n + 1).dim:
        n += 1
    return n


def det(V):
    """Top non-vanishing power for a purely odd (``Sym``) or purely even (``Lambda``) space."""
    n = kimura_odd_dimension(V)
    if n is not None:
        return sym_power(V, n)
    n = kimura_even_dimension(V)
    if n is not None:
        return alt_power(V, n)
    return None


__all__ = [
    "DEFAULT_MAX_DEGREE",
    "SymPower",
    "alt_dim_formula",
    "alt_map",
    "alt_power",
    "antisymmetrizer",
    "degree_cap",
    "det",
    "iota_split",
    "kimura_even_dimension",
    "kimura_odd_dimension",
    "max_degree",
    "merge_sign",
    "permutation_action",
    "pi_merge",
    "sort_sign",
    "sym_dim_formula",
    "sym_map",
    "sym_map_via_tensors",
    "sym_power",
    "symmetrizer",
    "tensor_power",
    "tensor_power_map",
]
