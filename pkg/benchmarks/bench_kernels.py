"""Compare the compiled and pure-Python integer kernels.

Three sections, each checking that both backends agree:

* random dense integer matrices (large ones overflow int64 in the compiled
  elimination, which then falls back to Python integers),
* matrices the package actually eliminates: symmetrizer blocks and the
  spanning sets of tensor-power filtrations,
* one verification suite end to end under each backend, in a subprocess (the
  pure-Python one via ``SUPERSYM_PURE_PYTHON=1``).

    python3 benchmarks/bench_kernels.py --sizes 16 32 64 --repeat 3
"""
import argparse
import itertools
import json
import os
import subprocess
import sys
import time

import numpy as np

from supersym import kernels


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def _same(x, y):
    if isinstance(x, tuple):
        return all(_same(a, b) for a, b in zip(x, y))
    if isinstance(x, np.ndarray):
        return x.shape == np.asarray(y).shape and bool(np.all(np.asarray(x, dtype=object) == np.asarray(y, dtype=object)))
    return x == y


def kernel_rows(sizes, repeat, seed):
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        a = rng.integers(-3, 4, size=(n, n)).astype(np.int64)
        b = rng.integers(-3, 4, size=(n, n)).astype(np.int64)
        # rank-deficient input exercises the pivot search more evenly
        c = (a[:, : n // 2] @ b[: n // 2, :]).astype(np.int64)
        for name, fn in (("matmul", lambda be: kernels.matmul(a, b, backend=be)), ("echelon", lambda be: kernels.echelon(c, backend=be))):
            tp, rp = _best(lambda: fn("python"), repeat)
            if kernels.BACKEND == "cython":
                tc, rc = _best(lambda: fn("cython"), repeat)
                agree = _same(rp, rc)
            else:
                tc, agree = None, None
            rows.append({"kernel": name, "n": n, "python_s": tp, "cython_s": tc, "speedup": (tp / tc) if tc else None, "agree": agree})
    return rows


def workload_matrices(seed):
    """Integer numerators of matrices eliminated by the library itself."""
    from supersym.filtration import random_subobject
    from supersym.linear import GradedMap, GradedSuperSpace, Slot, tensor_maps
    from supersym.qmatrix import QMatrix
    from supersym.sympowers import symmetrizer

    odd, even = Slot(1, 0), Slot(0, 0)
    mats = []
    for V, n in ((GradedSuperSpace({odd: 2, even: 2}), 4), (GradedSuperSpace({odd: 3, even: 1}), 4), (GradedSuperSpace({odd: 2, even: 1}), 5)):
        S = symmetrizer(V, n)
        mats += [("symmetrizer", np.asarray(S.block(s).num, dtype=np.int64)) for s in S.shared_slots()]
    rng = np.random.default_rng(seed)
    V = GradedSuperSpace({odd: 2, even: 2})
    F = random_subobject(V, {odd: 1, even: 1}, rng)
    ident = GradedMap.identity(V)
    for i in (1, 2, 3):
        groups = []
        for S_ in itertools.combinations(range(4), i):
            f = None
            for k in range(4):
                m = F.incl if k in S_ else ident
                f = m if f is None else tensor_maps(f, m)
            groups.append(f)
        for slot in groups[0].target.slot_list():
            blocks = [g.block(slot) for g in groups if slot in g.source]
            if blocks:
                mats.append((f"filtration i={i}", np.asarray(QMatrix.hstack(blocks).num, dtype=np.int64)))
    return mats


def workload_rows(repeat, seed):
    rows = []
    by_kind = {}
    for kind, a in workload_matrices(seed):
        by_kind.setdefault(kind, []).append(a)
    for kind, mats in by_kind.items():
        tp, rp = _best(lambda: [kernels.echelon(a, backend="python") for a in mats], repeat)
        if kernels.BACKEND == "cython":
            tc, rc = _best(lambda: [kernels.echelon(a, backend="cython") for a in mats], repeat)
            agree = all(_same(x, y) for x, y in zip(rp, rc))
        else:
            tc, agree = None, None
        size = max(max(a.shape) for a in mats)
        rows.append({"kernel": kind, "n": size, "count": len(mats), "python_s": tp, "cython_s": tc, "speedup": (tp / tc) if tc else None, "agree": agree})
    return rows


def end_to_end(scope, max_dim, max_degree):
    code = f"from supersym import verify; r = verify.run({scope!r}, {max_dim}, {max_degree}); assert all(x.passed for x in r)"
    out = {}
    for label, env in (("cython", {}), ("python", {"SUPERSYM_PURE_PYTHON": "1"})):
        e = dict(os.environ, **env)
        e.pop("SUPERSYM_PURE_PYTHON", None) if not env else None
        t = time.perf_counter()
        proc = subprocess.run([sys.executable, "-c", code], env=e, capture_output=True, text=True)
        out[label] = {"seconds": time.perf_counter() - t, "ok": proc.returncode == 0}
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", default="appendixC", help="verification scope for the end-to-end timing ('' to skip)")
    p.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = p.parse_args(argv)

    rows = kernel_rows(args.sizes, args.repeat, args.seed)
    work = workload_rows(args.repeat, args.seed)
    e2e = end_to_end(args.suite, 3, 4) if args.suite else {}
    if args.json:
        print(json.dumps({"backend": kernels.BACKEND, "random": rows, "workload": work, "end_to_end": e2e}, indent=2))
        return 0
    print(f"default backend: {kernels.BACKEND}")
    for title, table in (("random dense matrices", rows), ("library workload (echelon, max size n)", work)):
        print(title)
        print(f"  {'kernel':<18} {'n':>5} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>8} {'agree':>6}")
        for r in table:
            c = f"{r['cython_s'] * 1e3:12.2f}" if r["cython_s"] is not None else f"{'n/a':>12}"
            sp = f"{r['speedup']:8.1f}" if r["speedup"] else f"{'n/a':>8}"
            print(f"  {r['kernel']:<18} {r['n']:>5} {r['python_s'] * 1e3:12.2f} {c} {sp} {str(r['agree']):>6}")
    for label, v in e2e.items():
        print(f"suite {args.suite!r} with {label} kernels: {v['seconds']:.1f} s ({'ok' if v['ok'] else 'FAILED'})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
