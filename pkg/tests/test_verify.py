import pytest

from conftest import ring
from ringlab import verify
from ringlab.errors import NotCommutative, UnsupportedSuite
from ringlab.cli import main
from ringlab.report import Report
from ringlab.verify import SUITES, Budgets, run_suite

CHAIN_ONLY = {"chain", "sums"}


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_passes_on_zn4(suite):
    rep = run_suite(suite, ring("zn:4"), 1)
    assert rep.suite == suite and rep.k == 1
    assert rep.passed, [c for c in rep.checks if c.status == "fail"]
    assert rep.checks


@pytest.mark.parametrize("suite", sorted(CHAIN_ONLY))
def test_chain_suites_unsupported_on_fields(suite):
    with pytest.raises(UnsupportedSuite):
        run_suite(suite, ring("gf:4"), 1)


def test_semidirect_unsupported_on_noncommutative():
    with pytest.raises((UnsupportedSuite, NotCommutative)):
        run_suite("semidirect", ring("ut:2:gf:2"), 1)


def test_all_records_skips_instead_of_failing():
    rep = run_suite("all", ring("ut:2:gf:2"), 1)
    assert rep.passed
    skipped = {c.name for c in rep.checks if c.status == "skipped"}
    assert {"chain", "sums", "semidirect"} <= skipped


def test_all_over_budget_is_skipped():
    rep = run_suite("all", ring("gf:2"), 1, budgets=Budgets(tables=1))
    assert rep.passed
    assert any(c.status == "skipped" and "budget" in c.counterexample["reason"] for c in rep.checks)


def test_a_failing_check_fails_the_aggregate_and_exits_1(monkeypatch, capsys):
    def failing(base, k, mode, seed, budgets):
        rep = Report("sums", base.spec, k=k)
        rep.add("planted", False, {"why": "injected"})
        return rep

    monkeypatch.setitem(verify._RUNNERS, "sums", failing)
    rep = run_suite("all", ring("zn:4"), 1)
    assert not rep.passed
    assert [c.name for c in rep.checks if c.status == "fail"] == ["sums.planted"]
    assert main(["verify", "all", "zn:4", "--no-timestamp", "--no-cache"]) == 1
    capsys.readouterr()


def test_sampled_mode_is_seeded():
    a = run_suite("equiv", ring("ut:2:gf:2"), 1, mode="sampled", seed=9).to_dict()
    b = run_suite("equiv", ring("ut:2:gf:2"), 1, mode="sampled", seed=9).to_dict()
    assert a == b and a["mode"] == "sampled" and a["seed"] == 9


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", ring("gf:2"))


def test_k2_suites_on_gf2():
    for suite in ("axioms", "dual-structure", "eval-lemma", "null-decomp", "equiv", "cherper", "groups"):
        rep = run_suite(suite, ring("gf:2"), 2)
        assert rep.passed and rep.k == 2, suite


def test_extra_suite_runs_by_name_but_not_in_all(capsys):
    assert main(["verify", "redundancy-search", "gf:2", "--no-timestamp", "--no-cache"]) == 0
    capsys.readouterr()
    rep = run_suite("all", ring("gf:2"), 1)
    assert not any(c.name.startswith("redundancy-search") for c in rep.checks)
