"""Backend selection for the exact integer kernels.

The compiled extension is used when it imports and ``SUPERSYM_PURE_PYTHON``
is unset; otherwise the pure-Python module is used.  Both expose ``matmul``
and ``echelon`` with identical results.
"""
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("SUPERSYM_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_SAFE = 1 << 62


def _as_int64(a):
    """Return an int64 view of ``a`` if every entry fits, else None."""
    if a.dtype == np.int64:
        return np.ascontiguousarray(a)
    if a.size == 0:
        return np.zeros(a.shape, dtype=np.int64)
    if max(abs(int(a.max())), abs(int(a.min()))) < _SAFE:
        return np.ascontiguousarray(a.astype(np.int64))
    return None


def matmul(a, b, backend=None):
    mod = _pick(backend)
    if mod is _ckernels:
        a64, b64 = _as_int64(a), _as_int64(b)
        if a64 is not None and b64 is not None:
            try:
                return _ckernels.matmul(a64, b64)
            except OverflowError:
                pass
        return _pykernels.matmul(a.astype(object), b.astype(object))
    return _pykernels.matmul(a, b)


def echelon(a, backend=None):
    mod = _pick(backend)
    if mod is _ckernels:
        a64 = _as_int64(a)
        if a64 is not None:
            try:
                return _ckernels.echelon(a64)
            except OverflowError:
                pass
    return _pykernels.echelon(a)


def _pick(backend):
    if backend is None:
        return _ckernels or _pykernels
    if backend == "python":
        return _pykernels
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        return _ckernels
    raise ValueError(f"unknown backend {backend!r}")
