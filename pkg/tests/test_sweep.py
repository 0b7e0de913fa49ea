import pytest

from flagmotive import sweep
from flagmotive.errors import ValidationError


def test_irreducible_types_respect_legality():
    names = [str(t) for t in sweep.irreducible_types(3)]
    assert names == ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]
    assert "D4" in [str(t) for t in sweep.irreducible_types(4)]
    assert "E6" not in [str(t) for t in sweep.irreducible_types(6, cap=1000)]


def test_exponent_grid():
    g = sweep.exponent_grid(3, 2)
    assert g.shape == (27, 3) and len({tuple(r) for r in g.tolist()}) == 27
    assert sweep.exponent_grid(0, 2).shape == (1, 0)


def test_run_sweep_rank_two_passes():
    rep = sweep.run_sweep(2)
    assert rep["passed"]
    assert [s["name"] for s in rep["suites"]] == [
        "weyl-product-formula",
        "sum-formula",
        "twist-equality",
        "rank-equality",
        "tits-index",
        "rost-bound",
        "duality-counting",
    ]
    assert all(s["checked"] > 0 and s["counterexamples"] == [] for s in rep["suites"])


def test_counterexample_cap():
    res = sweep.SuiteResult("x")
    for k in range(12):
        res.check(False, lambda: {"k": k})
    assert res.failures == 12 and len(res.counterexamples) == sweep.MAX_COUNTEREXAMPLES


def test_sweep_rank_env(monkeypatch):
    monkeypatch.setenv("MOTIVE_SWEEP_RANK", "nope")
    with pytest.raises(ValidationError):
        sweep.default_sweep_rank()
    with pytest.raises(ValidationError):
        sweep.run_sweep(0)
