"""Bracketed tensor products of several factors and the maps that reorder them.

A *tree* is either a factor index or a pair ``(left, right)`` of trees; its
leaves read left to right must be ``0, 1, ..., k-1``.  A basis vector of the
bracketed product is a flat tuple of global basis indices, one per factor.
"""
from functools import lru_cache

import numpy as np

from .errors import ShapeError
from .linear import GradedMap, Slot, tensor
from .qmatrix import QMatrix


def leaves(tree):
    if isinstance(tree, int):
        return [tree]
    left, right = tree
    return leaves(left) + leaves(right)


def left_nested(n):
    """``((0, 1), 2), ...`` for ``n`` factors; ``0`` for a single factor."""
    if n < 1:
        raise ShapeError("need at least one factor")
    tree = 0
    for k in range(1, n):
        tree = (tree, k)
    return tree


def _check_tree(tree, k):
    if leaves(tree) != list(range(k)):
        raise ShapeError(f"tree {tree!r} does not list factors 0..{k - 1} in order")


def tree_space(spaces, tree):
    _check_tree(tree, len(spaces))

    def build(t):
        if isinstance(t, int):
            return spaces[t]
        return tensor(build(t[0]), build(t[1]))

    return build(tree)


@lru_cache(maxsize=512)
def _tree_basis(shapes, tree):
    if isinstance(tree, int):
        out = {}
        acc = 0
        for s, d in shapes[tree]:
            out[s] = [(acc + i,) for i in range(d)]
            acc += d
        return out
    bl = _tree_basis(shapes, tree[0])
    br = _tree_basis(shapes, tree[1])
    out = {}
    for sl in sorted(bl):
        for tl in bl[sl]:
            for sr in sorted(br):
                out.setdefault(sl + sr, []).extend(tl + tr for tr in br[sr])
    return out


def tree_basis(spaces, tree):
    """Per slot, the ordered flat index tuples of the bracketed product."""
    _check_tree(tree, len(spaces))
    shapes = tuple(V.slot_items() for V in spaces)
    return _tree_basis(shapes, tree)


def _parities(V):
    return [s.parity for s in V.basis_slots()]


def rearrange(spaces, src_tree, perm, tgt_tree, mode="koszul"):
    """Reorder factors: factor ``k`` of the source lands in position ``perm[k]``.

    ``mode`` selects the sign attached to each pair of factors whose order is
    reversed: ``"koszul"`` gives ``(-1)^(p q)``, ``"alternating"`` gives
    ``-(-1)^(p q)`` (sign of the permutation times Koszul), ``"plain"`` gives 1.
    """
    k = len(spaces)
    perm = tuple(perm)
    if sorted(perm) != list(range(k)):
        raise ShapeError(f"{perm!r} is not a permutation of {k} factors")
    tgt_spaces = [None] * k
    for i, p in enumerate(perm):
        tgt_spaces[p] = spaces[i]
    src = tree_space(spaces, src_tree)
    tgt = tree_space(tgt_spaces, tgt_tree)
    sb = tree_basis(spaces, src_tree)
    tb = tree_basis(tgt_spaces, tgt_tree)
    index = {}
    for s, lst in tb.items():
        for pos, t in enumerate(lst):
            index[t] = pos
    par = [_parities(V) for V in spaces]
    inversions = [(i, j) for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j]]
    blocks = {}
    for s, lst in sb.items():
        n = len(lst)
        out = np.zeros((n, n), dtype=np.int64)
        for col, t in enumerate(lst):
            u = [0] * k
            for i, p in enumerate(perm):
                u[p] = t[i]
            sign = 1
            for i, j in inversions:
                pq = par[i][t[i]] & par[j][t[j]]
                if mode == "koszul":
                    if pq:
                        sign = -sign
                elif mode == "alternating":
                    if not pq:
                        sign = -sign
            out[index[tuple(u)], col] = sign
        blocks[Slot(*s)] = QMatrix(out)
    return GradedMap(src, tgt, blocks)


def associator(spaces, src_tree, tgt_tree):
    """Rebracketing isomorphism between two bracketings of the same factors."""
    return rearrange(spaces, src_tree, range(len(spaces)), tgt_tree)


def flat_index(spaces, tree):
    """``(tuple -> global index, list of tuples in global order)`` of a bracketed product."""
    tb = tree_basis(spaces, tree)
    order = []
    for s in sorted(tb):
        order.extend(tb[s])
    return {t: i for i, t in enumerate(order)}, order
