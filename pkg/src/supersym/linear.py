"""Bigraded super vector spaces over Q and slot-preserving linear maps.

A space is a finite map ``Slot(degree, weight) -> dimension``.  The parity of a
slot is its degree mod 2 and drives the Koszul sign of the symmetry.  Basis
vectors are ordered globally by slot (sorted by ``(degree, weight)``) and then
by their index inside the slot.

Spaces may carry a representation of a :class:`FiniteGroup`; a space without
group data behaves as a trivial representation when combined with one that
has it.
"""
from collections import deque
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import EquivarianceMismatch, InvalidGroup, ShapeError
from .qmatrix import QMatrix


class Slot(NamedTuple):
    degree: int
    weight: int

    @property
    def parity(self):
        return self.degree % 2

    def __add__(self, other):
        return Slot(self.degree + other.degree, self.weight + other.weight)

    def __sub__(self, other):
        return Slot(self.degree - other.degree, self.weight - other.weight)

    def __neg__(self):
        return Slot(-self.degree, -self.weight)


ZERO_SLOT = Slot(0, 0)


class FiniteGroup:
    """A finite group given by its multiplication table over ``range(order)``."""

    __slots__ = ("table", "identity", "name", "_inv")

    def __init__(self, table, identity=0, name=None):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise InvalidGroup("multiplication table must be a non-empty square")
        if not 0 <= identity < n:
            raise InvalidGroup("identity out of range")
        elems = range(n)
        for row in table:
            if sorted(row) != list(elems):
                raise InvalidGroup("table rows must be permutations (Latin square)")
        for g in elems:
            if table[identity][g] != g or table[g][identity] != g:
                raise InvalidGroup(f"{identity} is not a two-sided identity")
        for a in elems:
            for b in elems:
                ab = table[a][b]
                for c in elems:
                    if table[ab][c] != table[a][table[b][c]]:
                        raise InvalidGroup(f"not associative at ({a}, {b}, {c})")
        self.table = table
        self.identity = identity
        self.name = name
        self._inv = tuple(next(h for h in elems if table[g][h] == identity) for g in elems)

    @property
    def order(self):
        return len(self.table)

    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, a):
        return self._inv[a]

    def is_abelian(self):
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table and self.identity == other.identity

    def __hash__(self):
        return hash((self.table, self.identity))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.order}>"

    @classmethod
    def trivial(cls):
        return cls([[0]], name="1")

    @classmethod
    def cyclic(cls, n):
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z/{n}")

    @classmethod
    def direct_product(cls, g, h):
        """``g x h`` with element ``(a, b)`` encoded as ``a * |h| + b``."""
        m = h.order
        n = g.order * m
        table = [
            [g.mul(x // m, y // m) * m + h.mul(x % m, y % m) for y in range(n)]
            for x in range(n)
        ]
        name = f"{g.name or 'G'}x{h.name or 'H'}"
        return cls(table, identity=g.identity * m + h.identity, name=name)

    def closure(self, generator_images, mul, identity_image):
        """Extend ``generator -> image`` to every element along the table.

        ``mul(x, y)`` composes images.  Returns a list indexed by element.
        """
        images = {self.identity: identity_image}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g, img in generator_images.items():
                y = self.table[g][x]
                if y not in images:
                    images[y] = mul(img, images[x])
                    queue.append(y)
        if len(images) != self.order:
            raise InvalidGroup("the given elements do not generate the group")
        return [images[g] for g in range(self.order)]


def _norm_slot(s):
    return s if isinstance(s, Slot) else Slot(*s)


class GradedSuperSpace:
    """Finite-dimensional bigraded super vector space, optionally a group representation."""

    __slots__ = ("_slots", "group", "action", "_offsets", "_dims")

    def __init__(self, slots=None, group=None, action=None):
        items = {}
        for s, d in (slots or {}).items():
            s = _norm_slot(s)
            d = int(d)
            if d < 0:
                raise ShapeError(f"negative dimension at slot {tuple(s)}")
            if d:
                items[s] = items.get(s, 0) + d
        self._slots = tuple(sorted(items.items()))
        self._dims = dict(self._slots)
        off, acc = {}, 0
        for s, d in self._slots:
            off[s] = acc
            acc += d
        self._offsets = off
        if action is not None and group is None:
            raise EquivarianceMismatch("an action needs a group")
        self.group = group
        if group is not None:
            if action is None:
                action = tuple({s: QMatrix.identity(d) for s, d in self._slots} for _ in range(group.order))
            action = tuple(
                {s: a.get(s) for s, _ in self._slots} for a in action
            )
            if len(action) != group.order:
                raise EquivarianceMismatch("action must list one matrix family per group element")
            for a in action:
                for s, d in self._slots:
                    m = a[s]
                    if m is None or m.shape != (d, d):
                        raise EquivarianceMismatch(f"action block at slot {tuple(s)} has wrong shape")
        self.action = action

    # basic data ---------------------------------------------------------

    @classmethod
    def unit(cls, group=None):
        return cls({ZERO_SLOT: 1}, group=group)

    @classmethod
    def zero(cls, group=None):
        return cls({}, group=group)

    @classmethod
    def line(cls, degree, weight=0):
        return cls({Slot(degree, weight): 1})

    @classmethod
    def with_generators(cls, slots, group, generator_action):
        """Build a representation from per-generator slot matrices, then check it."""
        tmp = cls(slots)
        ident = {s: QMatrix.identity(d) for s, d in tmp.slot_items()}

        def mul(a, b):
            return {s: a[_norm_slot(s)] @ b[_norm_slot(s)] for s in ident}

        gens = {g: {_norm_slot(s): m for s, m in mats.items()} for g, mats in generator_action.items()}
        action = group.closure(gens, mul, ident)
        space = cls(slots, group=group, action=action)
        space.check_action()
        return space

    def slot_items(self):
        return self._slots

    @property
    def slots(self):
        return dict(self._slots)

    def slot_list(self):
        return [s for s, _ in self._slots]

    def dim(self, slot):
        return self._dims.get(_norm_slot(slot), 0)

    def __contains__(self, slot):
        return _norm_slot(slot) in self._dims

    @property
    def total_dim(self):
        return sum(d for _, d in self._slots)

    def offset(self, slot):
        return self._offsets[_norm_slot(slot)]

    def parity_dims(self):
        """Return ``(even, odd)`` total dimensions."""
        even = sum(d for s, d in self._slots if s.parity == 0)
        return even, self.total_dim - even

    def basis(self):
        """Global basis as a list of ``(slot, index_in_slot)``."""
        return [(s, i) for s, d in self._slots for i in range(d)]

    def basis_slots(self):
        return [s for s, d in self._slots for _ in range(d)]

    def is_zero(self):
        return not self._slots

    def degrees(self):
        return sorted({s.degree for s, _ in self._slots})

    # equality -----------------------------------------------------------

    def same_shape(self, other):
        return self._slots == other._slots

    def __eq__(self, other):
        if not isinstance(other, GradedSuperSpace):
            return NotImplemented
        if self._slots != other._slots or self.group != other.group:
            return False
        if self.group is None:
            return True
        return all(
            a[s] == b[s] for a, b in zip(self.action, other.action) for s, _ in self._slots
        )

    def __hash__(self):
        return hash((self._slots, self.group))

    def __repr__(self):
        body = ", ".join(f"({s.degree},{s.weight}):{d}" for s, d in self._slots)
        g = f", group={self.group!r}" if self.group is not None else ""
        return f"GradedSuperSpace({{{body}}}{g})"

    # group data ---------------------------------------------------------

    def act(self, g):
        """The action of element ``g`` as a :class:`GradedMap`."""
        if self.group is None:
            raise EquivarianceMismatch("space carries no group action")
        return GradedMap(self, self, self.action[g])

    def check_action(self):
        """Verify the action is a homomorphism on the full multiplication table."""
        if self.group is None:
            return True
        G = self.group
        for s, d in self._slots:
            if self.action[G.identity][s] != QMatrix.identity(d):
                raise EquivarianceMismatch(f"identity acts non-trivially on slot {tuple(s)}")
            for a in range(G.order):
                for b in range(G.order):
                    lhs = self.action[a][s] @ self.action[b][s]
                    if lhs != self.action[G.mul(a, b)][s]:
                        raise EquivarianceMismatch(
                            f"action fails the table at ({a}, {b}) on slot {tuple(s)}"
                        )
        return True

    def without_group(self):
        return GradedSuperSpace(self.slots)

    def with_trivial_action(self, group):
        return GradedSuperSpace(self.slots, group=group)


def _common_group(*spaces):
    groups = [V.group for V in spaces if V.group is not None]
    if not groups:
        return None
    g = groups[0]
    for h in groups[1:]:
        if h != g:
            raise EquivarianceMismatch("spaces carry different groups")
    return g


def _action_block(V, group, g, slot):
    if V.group is None:
        return QMatrix.identity(V.dim(slot))
    return V.action[g][slot]


class GradedMap:
    """A degree- and weight-preserving linear map, stored as one block per shared slot."""

    __slots__ = ("source", "target", "_blocks")

    def __init__(self, source, target, blocks=None):
        self.source = source
        self.target = target
        out = {}
        blocks = blocks or {}
        for s, m in blocks.items():
            s = _norm_slot(s)
            if s not in source or s not in target:
                if m is not None and not m.is_zero():
                    raise ShapeError(f"block at slot {tuple(s)} not shared by source and target")
                continue
            if m.shape != (target.dim(s), source.dim(s)):
                raise ShapeError(
                    f"block at slot {tuple(s)} has shape {m.shape}, expected "
                    f"{(target.dim(s), source.dim(s))}"
                )
            out[s] = m
        self._blocks = out

    @classmethod
    def identity(cls, V):
        return cls(V, V, {s: QMatrix.identity(d) for s, d in V.slot_items()})

    @classmethod
    def zero(cls, V, W):
        return cls(V, W, {})

    @classmethod
    def scalar(cls, V, c):
        return cls(V, V, {s: QMatrix.scalar(d, c) for s, d in V.slot_items()})

    @classmethod
    def from_dense(cls, source, target, mat):
        """Split a global matrix into slot blocks; off-slot entries must vanish."""
        if mat.shape != (target.total_dim, source.total_dim):
            raise ShapeError(f"dense matrix shape {mat.shape} does not match the spaces")
        blocks = {}
        mask = np.ones(mat.shape, dtype=bool)
        for s, d in source.slot_items():
            c0 = source.offset(s)
            if s in target:
                r0 = target.offset(s)
                e = target.dim(s)
                blocks[s] = QMatrix(mat.num[r0 : r0 + e, c0 : c0 + d], mat.den)
                mask[r0 : r0 + e, c0 : c0 + d] = False
        if mat.num[mask].any():
            raise ShapeError("dense matrix mixes slots")
        return cls(source, target, blocks)

    @classmethod
    def from_sparse(cls, source, target, entries):
        """Build from ``{(target_global, source_global): value}``; slots must match."""
        src_slots = source.basis_slots()
        tgt_slots = target.basis_slots()
        per_slot = {}
        for (r, c), v in entries.items():
            if not v:
                continue
            s = src_slots[c]
            if tgt_slots[r] != s:
                raise ShapeError(f"entry ({r}, {c}) connects different slots")
            per_slot.setdefault(s, {})[(r - target.offset(s), c - source.offset(s))] = v
        blocks = {
            s: QMatrix.from_entries(target.dim(s), source.dim(s), ents) for s, ents in per_slot.items()
        }
        return cls(source, target, blocks)

    def block(self, slot):
        slot = _norm_slot(slot)
        m = self._blocks.get(slot)
        if m is None:
            return QMatrix.zeros(self.target.dim(slot), self.source.dim(slot))
        return m

    def shared_slots(self):
        return [s for s, _ in self.source.slot_items() if s in self.target]

    def blocks(self):
        return {s: self.block(s) for s in self.shared_slots()}

    def to_dense(self):
        n, m = self.target.total_dim, self.source.total_dim
        if not self._blocks:
            return QMatrix.zeros(n, m)
        mats = list(self._blocks.items())
        nums, den = QMatrix._common([b for _, b in mats])
        out = np.zeros((n, m), dtype=nums[0].dtype)
        for (s, _), a in zip(mats, nums):
            r0, c0 = self.target.offset(s), self.source.offset(s)
            out[r0 : r0 + a.shape[0], c0 : c0 + a.shape[1]] = a
        return QMatrix(out, den)

    # algebra ------------------------------------------------------------

    def compose(self, other):
        """``self o other`` (apply ``other`` first)."""
        if not other.target.same_shape(self.source):
            raise ShapeError("middle spaces differ")
        blocks = {}
        for s in other.shared_slots():
            if s in self.target and s in self._blocks and s in other._blocks:
                blocks[s] = self._blocks[s] @ other._blocks[s]
        return GradedMap(other.source, self.target, blocks)

    def __matmul__(self, other):
        return self.compose(other)

    def _check_same(self, other):
        if not (self.source.same_shape(other.source) and self.target.same_shape(other.target)):
            raise ShapeError("maps have different source or target")

    def __add__(self, other):
        self._check_same(other)
        return GradedMap(self.source, self.target, {s: self.block(s) + other.block(s) for s in self.shared_slots()})

    def __sub__(self, other):
        self._check_same(other)
        return GradedMap(self.source, self.target, {s: self.block(s) - other.block(s) for s in self.shared_slots()})

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return GradedMap(self.source, self.target, {s: b.scale(c) for s, b in self._blocks.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def equals(self, other):
        """Exact comparison of all coefficients (missing blocks count as zero)."""
        if not (self.source.same_shape(other.source) and self.target.same_shape(other.target)):
            return False
        return all(self.block(s) == other.block(s) for s in self.shared_slots())

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def is_zero(self):
        return all(b.is_zero() for b in self._blocks.values())

    def rank(self):
        return sum(self.block(s).rank() for s in self.shared_slots())

    def rank_by_slot(self):
        return {s: self.block(s).rank() for s in self.shared_slots()}

    def with_spaces(self, source, target):
        """Reinterpret the same blocks between spaces of identical shape."""
        if not (source.same_shape(self.source) and target.same_shape(self.target)):
            raise ShapeError("reinterpretation needs identical slot shapes")
        return GradedMap(source, target, self._blocks)

    def is_equivariant(self):
        G = _common_group(self.source, self.target)
        if G is None:
            return True
        for g in range(G.order):
            for s in self.shared_slots():
                lhs = self.block(s) @ _action_block(self.source, G, g, s)
                rhs = _action_block(self.target, G, g, s) @ self.block(s)
                if lhs != rhs:
                    return False
        return True

    def __repr__(self):
        return f"GradedMap({self.source!r} -> {self.target!r}, rank={self.rank()})"


# ---------------------------------------------------------------------------
# Constructions


class Biproduct(NamedTuple):
    space: GradedSuperSpace
    inj: tuple
    proj: tuple


def direct_sum(*spaces):
    """Biproduct of the given spaces; within a slot, summands appear in argument order."""
    G = _common_group(*spaces)
    slots = {}
    for V in spaces:
        for s, d in V.slot_items():
            slots[s] = slots.get(s, 0) + d
    action = None
    if G is not None:
        action = [
            {s: QMatrix.block_diag([_action_block(V, G, g, s) for V in spaces if s in V]) for s in slots}
            for g in range(G.order)
        ]
    S = GradedSuperSpace(slots, group=G, action=action)
    inj, proj = [], []
    start = {s: 0 for s in slots}
    for V in spaces:
        ib, pb = {}, {}
        for s, d in V.slot_items():
            e = S.dim(s)
            ib[s] = QMatrix.identity(d).place(e, d, start[s], 0)
            pb[s] = QMatrix.identity(d).place(d, e, 0, start[s])
            start[s] += d
        inj.append(GradedMap(V, S, ib))
        proj.append(GradedMap(S, V, pb))
    return Biproduct(S, tuple(inj), tuple(proj))


def _tensor_slot_pairs(V, W):
    """For each target slot, the ordered list of contributing ``(slot_V, slot_W)``."""
    pairs = {}
    for s1, _ in V.slot_items():
        for s2, _ in W.slot_items():
            pairs.setdefault(s1 + s2, []).append((s1, s2))
    return pairs


def tensor(V, W):
    """``V (x) W``; inside a slot the basis is ordered left factor major."""
    G = _common_group(V, W)
    pairs = _tensor_slot_pairs(V, W)
    slots = {s: sum(V.dim(a) * W.dim(b) for a, b in ps) for s, ps in pairs.items()}
    action = None
    if G is not None:
        action = [
            {
                s: QMatrix.block_diag(
                    [_action_block(V, G, g, a).kron(_action_block(W, G, g, b)) for a, b in ps]
                )
                for s, ps in pairs.items()
            }
            for g in range(G.order)
        ]
    return GradedSuperSpace(slots, group=G, action=action)


def tensor_maps(f, g):
    """``f (x) g`` between the corresponding tensor products."""
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    src_pairs = _tensor_slot_pairs(f.source, g.source)
    blocks = {}
    for s, ps in src_pairs.items():
        if s not in tgt:
            continue
        # rows follow the target pair order, columns the source pair order
        tp = _tensor_slot_pairs(f.target, g.target)[s]
        row_off, acc = {}, 0
        for a, b in tp:
            row_off[(a, b)] = acc
            acc += f.target.dim(a) * g.target.dim(b)
        col = 0
        entries = []
        for a, b in ps:
            if (a, b) in row_off:
                fa, gb = f.block(a), g.block(b)
                if not fa.is_zero() and not gb.is_zero():
                    entries.append((row_off[(a, b)], col, fa.kron(gb)))
            col += f.source.dim(a) * g.source.dim(b)
        if entries:
            nums, den = QMatrix._common([e[2] for e in entries])
            out = np.zeros((tgt.dim(s), src.dim(s)), dtype=nums[0].dtype)
            for (r0, c0, _), a in zip(entries, nums):
                out[r0 : r0 + a.shape[0], c0 : c0 + a.shape[1]] = a
            blocks[s] = QMatrix(out, den)
    return GradedMap(src, tgt, blocks)


def braiding(V, W):
    """Symmetry ``V (x) W -> W (x) V`` with the Koszul sign ``(-1)^(p q)``."""
    from .tensors import rearrange

    return rearrange([V, W], (0, 1), (1, 0), (0, 1))


def dual(V):
    """Negate degree and weight; the action becomes contragredient."""
    slots = {-s: d for s, d in V.slot_items()}
    action = None
    if V.group is not None:
        G = V.group
        action = [{-s: V.action[G.inverse(g)][s].T for s, _ in V.slot_items()} for g in range(G.order)]
    return GradedSuperSpace(slots, group=V.group, action=action)


def dual_map(f):
    """Transpose ``f^*: W^* -> V^*``."""
    return GradedMap(dual(f.target), dual(f.source), {-s: f.block(s).T for s in f.shared_slots()})


def bidual_iso(V):
    """The comparison map ``V -> V^**`` (identity in the chosen bases)."""
    return GradedMap(V, dual(dual(V)), {s: QMatrix.identity(d) for s, d in V.slot_items()})


def _relabel(V, fn):
    slots = {fn(s): d for s, d in V.slot_items()}
    action = None
    if V.group is not None:
        action = [{fn(s): a[s] for s, _ in V.slot_items()} for a in V.action]
    return GradedSuperSpace(slots, group=V.group, action=action)


def shift(V, k):
    """Add ``k`` to every degree (the parity changes when ``k`` is odd)."""
    return _relabel(V, lambda s: Slot(s.degree + k, s.weight))


def twist(V, n):
    """Add ``2n`` to every weight."""
    return _relabel(V, lambda s: Slot(s.degree, s.weight + 2 * n))


def shift_map(f, k):
    return GradedMap(shift(f.source, k), shift(f.target, k), {Slot(s.degree + k, s.weight): b for s, b in f.blocks().items()})


def twist_map(f, n):
    return GradedMap(twist(f.source, n), twist(f.target, n), {Slot(s.degree, s.weight + 2 * n): b for s, b in f.blocks().items()})


def _restricted_action(V, G, incl_blocks, sub_slots):
    """Action on a subspace given by column blocks, assuming stability."""
    action = []
    for g in range(G.order):
        a = {}
        for s, d in sub_slots.items():
            inc = incl_blocks[s]
            x = inc.solve(_action_block(V, G, g, s) @ inc)
            if x is None:
                raise EquivarianceMismatch(f"subspace at slot {tuple(s)} is not stable under the group")
            a[s] = x
        action.append(a)
    return action


def subspace(V, columns):
    """Space spanned by given column blocks (assumed independent) and its inclusion."""
    dims = {s: m.ncols for s, m in columns.items() if m.ncols}
    G = V.group
    action = _restricted_action(V, G, columns, {Slot(*s): d for s, d in dims.items()}) if G is not None else None
    K = GradedSuperSpace(dims, group=G, action=action)
    return K, GradedMap(K, V, {s: columns[s] for s in dims})


def kernel(f):
    """``(K, inclusion)`` with ``K`` spanned by an integer basis of ``ker f``."""
    cols = {}
    for s, d in f.source.slot_items():
        if s in f.target:
            cols[s] = f.block(s).nullspace()
        else:
            cols[s] = QMatrix.identity(d)
    G = _common_group(f.source, f.target)
    src = f.source if G is None or f.source.group is not None else f.source.with_trivial_action(G)
    return subspace(src, cols)


def image(f):
    """``(I, inclusion)`` with ``I`` spanned by independent columns of ``f``."""
    cols = {s: f.block(s).colspace() for s in f.shared_slots()}
    G = _common_group(f.source, f.target)
    tgt = f.target if G is None or f.target.group is not None else f.target.with_trivial_action(G)
    return subspace(tgt, cols)


def compose(g, f):
    return g.compose(f)


def add(f, g):
    return f + g


def scale(f, c):
    return f.scale(c)


def equals(f, g):
    return f.equals(g)


def span_equal(a, b):
    """Whether two column blocks of one slot span the same subspace."""
    ra, rb = a.rank(), b.rank()
    return ra == rb and QMatrix.hstack([a, b]).rank() == ra


def span_contains(big, small):
    """Whether the column span of ``small`` lies in that of ``big``."""
    if small.ncols == 0:
        return True
    return QMatrix.hstack([big, small]).rank() == big.rank()


def random_map(V, W, rng, lo=-3, hi=3):
    """Random integer slot-preserving map (for tests and sweeps)."""
    blocks = {}
    for s, d in V.slot_items():
        if s in W:
            blocks[s] = QMatrix(np.array(rng.integers(lo, hi + 1, size=(W.dim(s), d)), dtype=np.int64))
    return GradedMap(V, W, blocks)


def as_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)
