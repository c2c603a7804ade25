# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 kernels with overflow detection.

Every routine raises OverflowError as soon as an intermediate value leaves the
int64 range; the dispatcher in :mod:`supersym.kernels` then reruns the
computation on Python integers.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef extern from *:
    """
    static inline int mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int mul_ovf(long long a, long long b, long long *r) nogil
    int add_ovf(long long a, long long b, long long *r) nogil
    int sub_ovf(long long a, long long b, long long *r) nogil


cdef inline int64_t _gcd(int64_t a, int64_t b) nogil:
    cdef int64_t t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


def matmul(const cnp.int64_t[:, ::1] a, const cnp.int64_t[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], m = b.shape[1]
    cdef Py_ssize_t i, j, l
    cdef long long acc, prod, aik
    cdef int bad = 0
    if b.shape[0] != k:
        raise ValueError("inner dimensions differ")
    out = np.zeros((n, m), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] o = out
    with nogil:
        for i in range(n):
            for l in range(k):
                aik = a[i, l]
                if aik == 0:
                    continue
                for j in range(m):
                    if b[l, j] == 0:
                        continue
                    if mul_ovf(aik, b[l, j], &prod):
                        bad = 1
                        break
                    if add_ovf(o[i, j], prod, &acc):
                        bad = 1
                        break
                    o[i, j] = acc
                if bad:
                    break
            if bad:
                break
    if bad:
        raise OverflowError("int64 overflow in matmul")
    return out


cdef int _primitive(cnp.int64_t[:, ::1] r, Py_ssize_t row, Py_ssize_t start) nogil:
    cdef Py_ssize_t j, m = r.shape[1]
    cdef int64_t g = 0
    for j in range(start, m):
        if r[row, j] != 0:
            g = _gcd(g, r[row, j])
            if g == 1:
                return 0
    if g > 1:
        for j in range(start, m):
            r[row, j] //= g
    return 0


def echelon(const cnp.int64_t[:, ::1] a):
    """Reduced row echelon form with primitive integer rows.

    Returns ``(rows, pivots)``; ``rows`` has one row per pivot.
    """
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef long long pv, f, g, x, y, best, t1, t2
    cdef int bad = 0
    work = np.array(a, dtype=np.int64, copy=True)
    cdef cnp.int64_t[:, ::1] w = work
    pivots = []
    for c in range(m):
        if r == n:
            break
        p = -1
        best = 0
        for i in range(r, n):
            if w[i, c] != 0:
                x = w[i, c] if w[i, c] > 0 else -w[i, c]
                if p < 0 or x < best:
                    p = i
                    best = x
                    if x == 1:
                        break
        if p < 0:
            continue
        if p != r:
            for j in range(m):
                w[p, j], w[r, j] = w[r, j], w[p, j]
        _primitive(w, r, c)
        if w[r, c] < 0:
            for j in range(c, m):
                w[r, j] = -w[r, j]
        with nogil:
            pv = w[r, c]
            for i in range(n):
                if i == r or w[i, c] == 0:
                    continue
                f = w[i, c]
                g = _gcd(pv, f)
                x = pv // g
                y = f // g
                for j in range(m):
                    if mul_ovf(w[i, j], x, &t1):
                        bad = 1
                        break
                    if mul_ovf(w[r, j], y, &t2):
                        bad = 1
                        break
                    if sub_ovf(t1, t2, &t1):
                        bad = 1
                        break
                    w[i, j] = t1
                if bad:
                    break
                _primitive(w, i, 0)
        if bad:
            raise OverflowError("int64 overflow in echelon")
        pivots.append(c)
        r += 1
    return work[:r].copy(), tuple(pivots)
