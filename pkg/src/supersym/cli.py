"""Command-line front end.

Exit codes: 0 success, 2 unreadable or malformed input, 3 a checked invariant
failed, 4 degenerate input (interpolation with ``|n| <= 1``, size caps
exceeded, or a precondition such as ``d = 0`` not met).
"""
import argparse
import math
import sys

from . import verify as verify_mod
from .errors import DegenerateInterpolation, InvalidSpec, SupersymError
from .linear import GradedMap
from .semiabelian import (
    cohomology,
    coordinate_projection,
    det_motive,
    expected_weight_dims,
    is_signed_permutation,
    kunneth_projector,
    one_motive,
    pairing_symmetry,
    poincare_pairing,
    product,
)
from .specdoc import ParseError, canon, dump, load_spec, spec_doc
from .sympowers import degree_cap, max_degree

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_DEGENERATE = 0, 2, 3, 4
DEFAULT_MAX_DIM = 6


class Degenerate(SupersymError):
    """Input outside what a command accepts (caps, preconditions)."""


class InvariantViolation(SupersymError):
    pass


# ---------------------------------------------------------------------------
# report builders: each returns (report dict, table lines, ok)


def _weight_census(M):
    out = {}
    for i, P in enumerate(M.hopf.pieces):
        census = {}
        for s, d in P.slot_items():
            census[s.weight] = census.get(s.weight, 0) + d * M.spec.pi0.order
        out[i] = census
    return out


def report_cohomology(spec, opts):
    M = cohomology(spec)
    N = spec.h1_dim
    betti = M.betti
    census = _weight_census(M)
    expected = [math.comb(N, i) * spec.pi0.order for i in range(N + 1)]
    checks = {
        "betti_binomial": betti == expected,
        "betti_total": sum(betti) == 2**N * spec.pi0.order,
        "euler_zero": (M.euler_characteristic == 0) if N > 0 else True,
        "weights_sum_to_betti": all(sum(census[i].values()) == betti[i] for i in range(len(betti))),
    }
    if spec.d == 0:
        checks["weights_match_formula"] = all(
            census[i] == {w: c * spec.pi0.order for w, c in expected_weight_dims(spec.g, spec.r, i).items()}
            for i in range(len(betti))
        )
    report = {
        "betti": betti,
        "euler_characteristic": M.euler_characteristic,
        "weights": census,
        "h1_weights": {s.weight: d for s, d in M.h1.slot_items()},
        "checks": checks,
    }
    lines = ["b: " + " ".join(str(b) for b in betti), f"euler characteristic: {report['euler_characteristic']}"]
    for i, c in census.items():
        lines.append(f"weights H^{i}: " + " ".join(f"w{w}={c[w]}" for w in sorted(c)))
    lines += _check_lines(checks)
    return report, lines, all(checks.values())


def _check_lines(checks):
    return [f"check {k}: {'pass' if v else 'FAIL'}" for k, v in checks.items()]


def report_kunneth(spec, opts):
    n = opts.get("n")
    if n is None:
        n = 2
    M = cohomology(spec)
    N = M.hopf.top
    C = M.hopf.carrier
    ident = GradedMap.identity(C)
    alt = 3 if n != 3 else 2
    ps = [kunneth_projector(M, i, n) for i in range(N + 1)]
    qs = [kunneth_projector(M, i, alt) for i in range(N + 1)]
    per = {}
    for i, p in enumerate(ps):
        per[i] = {
            "idempotent": (p @ p).equals(p),
            "coordinate_projection": p.equals(coordinate_projection(M, i)),
            "rank": p.rank(),
            f"equals_n={alt}": p.equals(qs[i]),
        }
    total = ident.scale(0)
    for p in ps:
        total = total + p
    orthogonal = all((ps[i] @ ps[j]).is_zero() for i in range(N + 1) for j in range(N + 1) if i != j)
    unity = total.equals(ident)
    ok = unity and orthogonal and all(v["idempotent"] and v["coordinate_projection"] and v[f"equals_n={alt}"] for v in per.values())
    report = {"n": n, "compared_with_n": alt, "projectors": per, "orthogonal": orthogonal, "partition_of_unity": unity, "verified": ok}
    lines = [f"n = {n}"]
    for i, v in per.items():
        lines.append(
            f"p_{i}: rank {v['rank']}, idempotent {_yn(v['idempotent'])}, coordinate projection {_yn(v['coordinate_projection'])}, same for n={alt} {_yn(v[f'equals_n={alt}'])}"
        )
    lines.append(f"orthogonal: {_yn(orthogonal)}")
    lines.append("p_i verified, Σp_i=id" if ok else "projector verification FAILED")
    return report, lines, ok


def _yn(b):
    return "yes" if b else "no"


def _need_no_lattice(spec, what):
    if spec.d:
        raise Degenerate(f"{what} needs d = 0 (use one-motive for lattice parts)")


def report_duality(spec, opts):
    _need_no_lattice(spec, "duality")
    N = spec.h1_dim
    per = {}
    for i in range(N + 1):
        P = poincare_pairing(spec, i)
        per[i] = {
            "size": P.matrix.nrows,
            "determinant": P.determinant,
            "nondegenerate": P.nondegenerate,
            "koszul_symmetric": pairing_symmetry(spec, i),
        }
    ok = all(v["nondegenerate"] and v["koszul_symmetric"] for v in per.values())
    report = {"top_degree": N, "pairings": per, "all_nondegenerate": ok}
    lines = [f"top degree: {N}"]
    for i, v in per.items():
        lines.append(f"H^{i} x H^{N - i}: {v['size']}x{v['size']}, det {canon(v['determinant'])}, symmetric up to sign {_yn(v['koszul_symmetric'])}")
    lines.append("all pairings nondegenerate" if ok else "degenerate pairing found")
    return report, lines, ok


def report_det(spec, opts):
    _need_no_lattice(spec, "det")
    D = det_motive(spec)
    signed = None
    if spec.galois is not None and spec.galois.cocharacter_rep:
        signed = all(is_signed_permutation(m) for m in spec.galois.cocharacter_rep.values())
    consistent = tuple(D.character) == tuple(D.via_determinants)
    ok = consistent and (signed is not True or (D.order is not None and D.order <= 2))
    report = {
        "degree": D.slot.degree,
        "weight": D.slot.weight,
        "dim": D.dim,
        "character": list(D.character),
        "character_order": D.order,
        "signed_permutation_cocharacters": signed,
        "character_matches_determinants": consistent,
    }
    order = "infinite" if D.order is None else str(D.order)
    lines = [
        f"det: degree {D.slot.degree}, weight {D.slot.weight}, dim {D.dim}",
        "character: " + " ".join(str(canon(x)) for x in D.character),
        f"character order {order}",
    ]
    return report, lines, ok


def report_one_motive(spec, opts):
    R = one_motive(spec)
    ok = R.kimura_bound and R.h1_dim == spec.h1_dim and sum(R.weights.values()) == R.h1_dim
    report = {"h1_dim": R.h1_dim, "weights": R.weights, "kimura_bound": R.kimura_bound, "betti": R.betti}
    lines = [
        f"H^1 dim {R.h1_dim}",
        "weights: " + " ".join(f"w{w}={R.weights[w]}" for w in sorted(R.weights)),
        f"Sym^{R.h1_dim + 1} H^1 = 0: {_yn(R.kimura_bound)}",
        "b: " + " ".join(str(b) for b in R.betti),
    ]
    return report, lines, ok


# ---------------------------------------------------------------------------
# plumbing


def _caps(spec, opts):
    cap = opts.get("max_dim", DEFAULT_MAX_DIM)
    if spec.h1_dim > cap:
        raise Degenerate(f"H^1 has dimension {spec.h1_dim}, above the cap {cap} (raise --max-dim)")
    deg = opts.get("max_degree", max_degree())
    if spec.h1_dim > deg:
        raise Degenerate(f"top degree {spec.h1_dim} exceeds the Sym degree cap {deg} (raise --max-degree)")


def _merge_options(file_opts, args):
    opts = dict(file_opts)
    for key in ("n", "max_dim", "max_degree", "format"):
        v = getattr(args, key, None)
        if v is not None:
            opts[key] = v
    return opts


def _emit(args, command, spec_part, opts, report, lines):
    fmt = opts.get("format", "table")
    if fmt == "machine":
        doc = {"command": command, "report": report}
        doc.update(spec_part)
        text = dump(doc)
    else:
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


BUILDERS = {
    "cohomology": report_cohomology,
    "kunneth": report_kunneth,
    "duality": report_duality,
    "det": report_det,
    "one-motive": report_one_motive,
}


def _stored_options(opts):
    """Options echoed into machine output (so re-reading reproduces the run)."""
    return {k: opts[k] for k in ("n", "max_dim", "max_degree") if k in opts}


def cmd_spec(args):
    spec, file_opts = load_spec(args.spec)
    opts = _merge_options(file_opts, args)
    _caps(spec, opts)
    with degree_cap(opts.get("max_degree", max_degree())):
        report, lines, ok = BUILDERS[args.command](spec, opts)
    _emit(args, args.command, {"spec": spec_doc(spec, _stored_options(opts))}, opts, report, lines)
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_product(args):
    s1, o1 = load_spec(args.spec)
    s2, o2 = load_spec(args.spec2)
    opts = _merge_options({**o2, **o1}, args)
    with degree_cap(opts.get("max_degree", max_degree())):
        for s in (s1, s2):
            _caps(s, opts)
        res = product(s1, s2, certify=True)
        _caps(res.spec, opts)
        betti = cohomology(res.spec).betti
    cert = res.certificate
    report = {"product": res.spec.describe(), "betti": betti, "certificate": cert}
    lines = [
        "product: " + ", ".join(f"{k}={v}" for k, v in res.spec.describe().items()),
        "b: " + " ".join(str(b) for b in betti),
    ] + _check_lines({k: v for k, v in cert.items() if k != "passed"})
    _emit(args, "product", {"spec": spec_doc(res.spec, _stored_options(opts))}, opts, report, lines)
    return EXIT_OK if cert.get("passed") else EXIT_INVARIANT


def cmd_verify(args):
    k = args.max_dim if args.max_dim is not None else 3
    n = args.max_degree if args.max_degree is not None else 4
    if not 1 <= k <= DEFAULT_MAX_DIM:
        raise Degenerate(f"--max-dim must be between 1 and {DEFAULT_MAX_DIM}")
    if not 1 <= n <= max_degree():
        raise Degenerate(f"--max-degree must be between 1 and the cap {max_degree()}")
    results = verify_mod.run(args.scope, k, n, args.inject)
    suites = {}
    for r in results:
        s = suites.setdefault(r.suite, {"cases": 0, "passed": 0})
        s["cases"] += 1
        s["passed"] += int(r.passed)
    failures = [{"suite": r.suite, "case": r.name, "witness": r.witness} for r in results if not r.passed]
    shown = failures[: args.max_witnesses]
    report = {
        "scope": args.scope,
        "max_dim": k,
        "max_degree": n,
        "inject": args.inject,
        "suites": suites,
        "failures": shown,
        "failure_count": len(failures),
        "passed": not failures,
    }
    lines = [f"{name}: {v['passed']}/{v['cases']} passed" for name, v in suites.items()]
    for f in shown:
        lines.append(f"FAIL [{f['suite']}] {f['case']}")
        if f["witness"]:
            for wl in dump(f["witness"]).rstrip().splitlines():
                lines.append("    " + wl)
    if len(failures) > len(shown):
        lines.append(f"... {len(failures) - len(shown)} more failures")
    lines.append("all pass" if not failures else f"{len(failures)} failing case(s)")
    opts = {"format": args.format or "table"}
    _emit(args, "verify", {}, opts, report, lines)
    return EXIT_OK if not failures else EXIT_INVARIANT


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-dim", dest="max_dim", type=int, default=None, help=f"cap on dim H^1 (default {DEFAULT_MAX_DIM})")
    common.add_argument("--max-degree", dest="max_degree", type=int, default=None, help="cap on Sym degree (default: ENGINE_MAX_DEGREE or 12)")
    common.add_argument("--format", choices=("table", "machine"), default=None)
    common.add_argument("--out", default=None, help="write the report to this file")

    p = argparse.ArgumentParser(prog="supersym", description="Exact graded super linear algebra and group-scheme cohomology reports.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("cohomology", "Betti numbers and weight census"),
        ("kunneth", "Kunneth projectors from multiplication by n"),
        ("duality", "Poincare pairings"),
        ("det", "determinant line and its Galois character"),
        ("one-motive", "realization of a 1-motive"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("spec", help="spec document (YAML)")
        sp.add_argument("--n", type=int, default=None, help="integer for multiplication by n (kunneth)")
        sp.set_defaults(func=cmd_spec)
    sp = sub.add_parser("product", parents=[common], help="product of two group schemes")
    sp.add_argument("spec")
    sp.add_argument("spec2")
    sp.set_defaults(func=cmd_product)
    sp = sub.add_parser("verify", parents=[common], help="run the self-verification suites")
    sp.add_argument("--scope", choices=verify_mod.SCOPES, default="all")
    sp.add_argument("--inject", choices=verify_mod.INJECTIONS, default="none", help="deliberately break one ingredient")
    sp.add_argument("--max-witnesses", dest="max_witnesses", type=int, default=5)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DegenerateInterpolation, Degenerate) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except InvalidSpec as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SupersymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
