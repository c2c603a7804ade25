"""Pure-Python kernels mirroring :mod:`supersym._ckernels`.

These operate on Python integers and never overflow.
"""
from math import gcd

import numpy as np

_SAFE = 1 << 62


def _maxabs(a):
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def matmul(a, b):
    if a.shape[1] != b.shape[0]:
        raise ValueError("inner dimensions differ")
    if a.dtype == np.int64 and b.dtype == np.int64:
        if _maxabs(a) * _maxabs(b) * max(a.shape[1], 1) < _SAFE:
            return a @ b
    return a.astype(object) @ b.astype(object)


def _primitive(row, start=0):
    g = 0
    for v in row[start:]:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def echelon(a):
    """Reduced row echelon form with primitive integer rows."""
    w = [[int(v) for v in row] for row in a.tolist()]
    n = len(w)
    m = a.shape[1]
    r = 0
    pivots = []
    for c in range(m):
        if r == n:
            break
        p = None
        best = 0
        for i in range(r, n):
            x = abs(w[i][c])
            if x and (p is None or x < best):
                p, best = i, x
                if x == 1:
                    break
        if p is None:
            continue
        w[p], w[r] = w[r], w[p]
        row = _primitive(w[r], c)
        if row[c] < 0:
            row = [-v for v in row]
        w[r] = row
        pv = row[c]
        for i in range(n):
            f = w[i][c]
            if i == r or not f:
                continue
            g = gcd(pv, f)
            x, y = pv // g, f // g
            w[i] = _primitive([u * x - v * y for u, v in zip(w[i], row)])
        pivots.append(c)
        r += 1
    out = np.empty((r, m), dtype=object)
    for i in range(r):
        out[i, :] = w[i]
    return out, tuple(pivots)
