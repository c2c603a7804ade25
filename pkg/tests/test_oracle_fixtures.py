import json
import pathlib

import oracles

HERE = pathlib.Path(__file__).resolve().parent


def test_committed_fixtures_match_oracles():
    import importlib.util

    spec = importlib.util.spec_from_file_location("make_derived", HERE / "fixtures" / "make_derived.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    fresh = json.loads(json.dumps(mod.build()))
    assert fresh == json.loads((HERE / "fixtures" / "derived.json").read_text())


def test_oracle_sanity():
    # hand-checkable anchors for the brute-force helpers themselves
    assert oracles.rank([[1, 2], [2, 4]]) == 1
    assert oracles.det([[0, 1], [-1, 0]]) == 1
    assert oracles.koszul_sign([1, 1], (1, 0)) == -1
    assert oracles.koszul_sign([1, 0], (1, 0)) == 1
    assert oracles.sym_rank_sweep(oracles.space(even=2), 2) == [1, 2, 3]
    assert oracles.wedge_sign((1,), (0,)) == -1
    assert oracles.matrix_order([[0, -1], [1, 0]]) == 4
