import pytest

from supersym import verify


def failures(results):
    return [r for r in results if not r.passed]


def test_small_run_passes():
    results = verify.run("all", max_dim=2, max_degree=3)
    assert results and not failures(results)
    assert {r.suite for r in results} == {"appendixB", "appendixC", "hopf"}


def test_appendix_b_space_list():
    assert verify.appendix_b_spaces(4) == [(1, 0), (2, 0), (3, 0), (4, 0), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_appendix_c_covers_every_parity_split():
    labels = [label for label, _ in verify.appendix_c_configs(2)]
    assert "V(odd=1,even=1) U(odd=1,even=0)" in labels
    want = sum((o + 1) * (t - o + 1) for t in (1, 2) for o in range(t + 1))
    assert len(labels) == len(set(labels)) == want


@pytest.mark.parametrize("inject", ["antipode-sign", "binomial", "koszul"])
def test_injections_fail_with_witness(inject):
    bad = failures(verify.run("all", max_dim=2, max_degree=3, inject=inject))
    assert bad
    assert any(r.witness for r in bad)


def test_binomial_injection_reaches_both_suites():
    bad = failures(verify.run("all", max_dim=2, max_degree=3, inject="binomial"))
    assert {r.suite for r in bad} >= {"appendixB", "appendixC"}


def test_bad_arguments():
    with pytest.raises(ValueError):
        verify.run("everything")
    with pytest.raises(ValueError):
        verify.run("all", inject="gremlins")
