import subprocess
import sys

import pytest
import yaml

from supersym.cli import main
from supersym.errors import InvalidSpec
from supersym.linear import FiniteGroup
from supersym.semiabelian import GaloisData, GroupSchemeSpec
from supersym.specdoc import ParseError, canon, dump, parse_spec, spec_doc


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# --- spec documents ----------------------------------------------------------


def test_parse_minimal():
    spec, opts = parse_spec("g: 1\nr: 2\noptions: {n: 3}\n")
    assert (spec.g, spec.r, spec.d, spec.pi0.order) == (1, 2, 0, 1)
    assert opts == {"n": 3}


def test_parse_empty_document():
    spec, opts = parse_spec("")
    assert spec.h1_dim == 0 and opts == {}


@pytest.mark.parametrize(
    "text,line,col,fragment",
    [
        ("g: 1\ntorus: 2\n", 2, 1, "unknown key 'torus'"),
        ("g: -1\n", 1, 4, ">= 0"),
        ("g: 1.5\n", 1, 4, "integer"),
        ("g: [1\n", None, None, "YAML syntax error"),
        ("pi0: {cyclic: 0}\n", 1, 15, ">= 1"),
        ("pi0: {table: [[0, 0], [0, 0]]}\n", 1, 6, "invalid group"),
        ("r: 1\ngalois: {group: 2, cocharacter_rep: {1: [[0.5]]}}\n", 2, 43, "exact rational"),
        ("r: 1\ngalois: {group: 2, cocharacter_rep: {5: [[-1]]}}\n", 2, 37, "not in a group"),
        ("g: 1\ng: 2\n", 2, 1, "duplicate key"),
    ],
)
def test_parse_errors_have_positions(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse_spec(text, "x.yaml")
    err = info.value
    assert fragment in str(err)
    if line is not None:
        assert (err.line, err.column) == (line, col)
        assert str(err).startswith(f"x.yaml:{line}:{col}:")
    assert isinstance(err, InvalidSpec)


def test_rationals_in_reps():
    text = "r: 2\ngalois:\n  group: {cyclic: 2}\n  cocharacter_rep:\n    1: [[0, '1/2'], [2, 0]]\n"
    spec, _ = parse_spec(text)
    doc = spec_doc(spec)
    assert doc["galois"]["cocharacter_rep"][1] == [[0, "1/2"], [2, 0]]


def test_group_forms():
    s, _ = parse_spec("pi0: {product: [{cyclic: 2}, 3]}\n")
    assert s.pi0.order == 6 and s.pi0.is_abelian()
    s, _ = parse_spec("pi0: {table: [[1, 0], [0, 1]], identity: 1}\n")
    assert s.pi0.identity == 1


@pytest.mark.parametrize(
    "spec",
    [
        GroupSchemeSpec(g=1, r=1),
        GroupSchemeSpec(d=1, r=1, pi0=FiniteGroup.cyclic(3)),
        GroupSchemeSpec(r=1, galois=GaloisData(FiniteGroup.cyclic(2), {1: [[-1]]})),
        GroupSchemeSpec(pi0=FiniteGroup.cyclic(2), galois=GaloisData(FiniteGroup.cyclic(2), pi0_action={1: [0, 1]})),
    ],
)
def test_spec_doc_round_trip(spec):
    text = dump(spec_doc(spec))
    again, _ = parse_spec(text)
    assert dump(spec_doc(again)) == text


def test_canon():
    from fractions import Fraction

    assert canon({"a": Fraction(3, 1), "b": [Fraction(1, 2)]}) == {"a": 3, "b": ["1/2"]}
    assert canon(True) is True


# --- commands ----------------------------------------------------------------


def test_cohomology_elliptic(capsys, samples_dir):
    code, out, _ = run(capsys, "cohomology", samples_dir / "elliptic_curve.yaml")
    assert code == 0
    assert "b: 1 2 1" in out.splitlines()
    assert "weights H^1: w1=2" in out.splitlines()


def test_cohomology_semiabelian(capsys, samples_dir):
    code, out, _ = run(capsys, "cohomology", samples_dir / "semiabelian_g1_r1.yaml")
    assert code == 0 and out.splitlines()[0] == "b: 1 3 3 1"


def test_kunneth(capsys, samples_dir):
    code, out, _ = run(capsys, "kunneth", samples_dir / "elliptic_curve.yaml", "--n", "2")
    assert code == 0 and "p_i verified, Σp_i=id" in out


@pytest.mark.parametrize("n", ["1", "0", "-1"])
def test_kunneth_degenerate(capsys, samples_dir, n):
    code, _, err = run(capsys, "kunneth", samples_dir / "elliptic_curve.yaml", f"--n={n}")
    assert code == 4 and "not pairwise distinct" in err


def test_duality(capsys, samples_dir):
    code, out, _ = run(capsys, "duality", samples_dir / "semiabelian_g1_r1.yaml")
    assert code == 0 and "all pairings nondegenerate" in out


def test_det_nonsplit(capsys, samples_dir):
    code, out, _ = run(capsys, "det", samples_dir / "nonsplit_torus.yaml")
    assert code == 0 and "character order 2" in out
    code, out, _ = run(capsys, "det", samples_dir / "signed_permutation_torus.yaml")
    assert code == 0 and "character order 2" in out


def test_det_rejects_lattice(capsys, samples_dir):
    code, _, err = run(capsys, "det", samples_dir / "one_motive.yaml")
    assert code == 4


def test_one_motive(capsys, samples_dir):
    code, out, _ = run(capsys, "one-motive", samples_dir / "one_motive.yaml")
    assert code == 0 and "weights: w0=1 w2=1" in out


def test_product(capsys, samples_dir):
    code, out, _ = run(capsys, "product", samples_dir / "elliptic_curve.yaml", samples_dir / "multiplicative_group.yaml")
    assert code == 0 and "b: 1 3 3 1" in out


def test_malformed_exit_2(capsys, samples_dir):
    code, _, err = run(capsys, "cohomology", samples_dir / "malformed.yaml")
    assert code == 2
    assert "malformed.yaml:2:1: unknown key 'torus'" in err


def test_missing_file_and_bad_args(capsys, tmp_path):
    assert run(capsys, "cohomology", tmp_path / "nope.yaml")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    bad = tmp_path / "bin.yaml"
    bad.write_bytes(b"\xff\xfe\x00")
    assert run(capsys, "cohomology", bad)[0] == 2


def test_caps_exit_4(capsys, tmp_path):
    big = tmp_path / "big.yaml"
    big.write_text("g: 3\nr: 2\n")
    code, _, err = run(capsys, "cohomology", big)
    assert code == 4 and "--max-dim" in err
    code, out, _ = run(capsys, "cohomology", big, "--max-dim", "8")
    assert code == 0 and out.startswith("b: 1 8 28 56 70 56 28 8 1")
    code, _, err = run(capsys, "cohomology", big, "--max-dim", "8", "--max-degree", "5")
    assert code == 4


@pytest.mark.parametrize("command", ["cohomology", "kunneth", "duality", "det", "one-motive"])
def test_machine_round_trip(capsys, samples_dir, tmp_path, command):
    sample = samples_dir / ("one_motive.yaml" if command == "one-motive" else "semiabelian_g1_r1.yaml")
    first = tmp_path / "a.yaml"
    second = tmp_path / "b.yaml"
    assert run(capsys, command, sample, "--format", "machine", "--out", first)[0] == 0
    assert run(capsys, command, first, "--format", "machine", "--out", second)[0] == 0
    assert first.read_bytes() == second.read_bytes()
    doc = yaml.safe_load(first.read_text())
    assert doc["command"] == command and "report" in doc and "spec" in doc


def test_machine_output_uses_exact_rationals(capsys, tmp_path):
    f = tmp_path / "s.yaml"
    f.write_text("r: 2\ngalois:\n  group: {cyclic: 2}\n  cocharacter_rep:\n    1: [[0, '1/2'], [2, 0]]\n")
    code, out, _ = run(capsys, "det", f, "--format", "machine")
    assert code == 0
    assert "[0, 1/2]" in out and "0.5" not in out
    spec, _ = parse_spec(out)
    assert str(spec.galois.cocharacter_rep[1][0][1]) == "1/2"


def test_verify_pass_and_injected_failure(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "appendixB", "--max-dim", "2", "--max-degree", "3")
    assert code == 0 and out.rstrip().endswith("all pass")
    code, out, _ = run(capsys, "verify", "--scope", "appendixB", "--max-dim", "2", "--max-degree", "3", "--inject", "antipode-sign")
    assert code == 3 and "FAIL [appendixB]" in out and "difference" in out


def test_verify_machine(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "hopf", "--max-dim", "2", "--max-degree", "3", "--format", "machine")
    doc = yaml.safe_load(out)
    assert code == 0 and doc["report"]["passed"] and doc["report"]["failure_count"] == 0


def test_verify_rejects_bad_caps(capsys):
    assert run(capsys, "verify", "--max-dim", "0")[0] == 4


def test_module_entry_point(samples_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "supersym", "cohomology", str(samples_dir / "disconnected.yaml")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("b: 3")
