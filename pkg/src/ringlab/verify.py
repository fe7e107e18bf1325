"""Named verification suites over a base ring ``R`` and its dual ring ``R_k``.

Each suite returns a :class:`~ringlab.report.Report`.  A suite whose
precondition fails raises :class:`~ringlab.errors.UnsupportedSuite`; the
``all`` suite records such suites (and those over budget) as skipped checks.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, CharIsP, NotAChainRing, NotCommutative, UnsupportedSuite
from .funspace import (
    DEFAULT_TABLE_BUDGET,
    DEFAULT_TUPLE_BUDGET,
    equiv_criterion_check,
    ideal_stats,
    null_decomposition_check,
)
from .groups import (
    DEFAULT_CELL_BUDGET,
    build_PR,
    build_Pxk,
    quotient_order_check,
    semidirect_check,
    stab_iso_order_check,
    stabilizer_Stk,
)
from .perm import (
    chain_redundancy_suite,
    cherper_suite,
    commutative_lambda_equiv_check,
    field_counterexample,
    null_lambda_sum_suite,
    redundancy_search,
)
from .poly import eval_lemma_check
from .report import Report
from .rings import make_dual
from .structure import dual_structure_check, validate_axioms

SUITES = (
    "axioms", "dual-structure", "eval-lemma", "null-decomp", "equiv", "cherper", "chain",
    "sums", "groups", "semidirect", "stabilizer",
)
# exploratory suites: runnable by name, never part of ``all``
EXTRA_SUITES = ("redundancy-search",)


@dataclass(frozen=True)
class Budgets:
    tuples: int = DEFAULT_TUPLE_BUDGET
    tables: int = DEFAULT_TABLE_BUDGET
    cells: int = DEFAULT_CELL_BUDGET


def _axioms(base, k, mode, seed, budgets):
    rep = Report("axioms", base.spec, k=k, mode=mode)
    sub = validate_axioms(base, mode, seed=seed)
    rep.extend(sub, "R.")
    dual_rep = validate_axioms(make_dual(base, k), mode, seed=seed)
    rep.extend(dual_rep, "R_k.")
    if "sampled" in (sub.mode, dual_rep.mode):
        rep.mode, rep.seed = "sampled", seed
    return rep


def _dual_structure(base, k, mode, seed, budgets):
    return dual_structure_check(base, k)


def _eval_lemma(base, k, mode, seed, budgets):
    return eval_lemma_check(base, k, seed=seed)


def _null_decomp(base, k, mode, seed, budgets):
    rep = null_decomposition_check(base, k, 4, mode=mode, seed=seed, budget=budgets.tuples)
    stats = ideal_stats(base, budget=budgets.tuples)
    rep.add("index_identity", stats.identity_holds, stats.to_dict())
    for name, ok in sorted((stats.checks or {}).items()):
        rep.add(f"index_{name}", ok, None)
    return rep


def _equiv(base, k, mode, seed, budgets):
    return equiv_criterion_check(base, k, 3, mode=mode, seed=seed, budget=budgets.tuples)


def _cherper(base, k, mode, seed, budgets):
    degree = 4 if base.size <= 4 else 3
    rep = cherper_suite(base, degree, k, mode=mode, seed=seed, budget=budgets.tuples)
    if base.commutative:
        sub = commutative_lambda_equiv_check(base, mode=mode, seed=seed)
        rep.extend(sub, "commutative.")
    if base.kind == "gf":
        _, verdict = field_counterexample(base, k)
        ok = verdict.is_pp_base and not verdict.is_pp_dual and verdict.agrees
        rep.add("field_power_is_pp_only_on_R", ok, verdict.to_dict())
    return rep


def _chain(base, k, mode, seed, budgets):
    try:
        return chain_redundancy_suite(base, k, mode=mode, seed=seed, budget=budgets.tuples,
                                      table_budget=budgets.tables)
    except (NotAChainRing, CharIsP) as exc:
        raise UnsupportedSuite(f"chain: {exc}") from exc


def _sums(base, k, mode, seed, budgets):
    try:
        return null_lambda_sum_suite(base, budget=budgets.tuples, table_budget=budgets.tables)
    except (NotAChainRing, CharIsP) as exc:
        raise UnsupportedSuite(f"sums: {exc}") from exc


def _group_checks(rep, prefix, group_report, keys):
    d = group_report.to_dict()
    for key in keys:
        if key in d:
            rep.add(f"{prefix}{key}", bool(d[key]), None if d[key] else {"order": d["order"]})


def _groups(base, k, mode, seed, budgets):
    rep = Report("groups", base.spec, k=k)
    _, px = build_Pxk(base, k, budgets.tables, budgets.cells)
    _group_checks(rep, "Pxk.", px, ("abelian", "closed", "contains_identity", "compatible",
                                     "distinct_from_tuples"))
    rep.add("Pxk.order_formula", px.order == px.extra["expected_order"],
            {"order": px.order, "expected": px.extra["expected_order"]})
    rep.counts["Pxk"] = px.order
    try:
        _, clo, pr = build_PR(base, k, budgets.tables, budgets.cells)
    except BudgetExceeded as exc:
        rep.skip("PR", f"budget: {exc}")
    else:
        rep.add("PR.contains_identity", pr.contains_identity, None)
        rep.add("PR.closure_is_group", clo.has_identity() and clo.all_bijective(), None)
        if base.commutative:
            rep.add("PR.closed_when_commutative", bool(pr.closed), {"PR": pr.order, "closure": len(clo)})
        else:
            rep.skip("PR.closed_when_commutative", "base is not commutative")
        rep.counts.update(PR=pr.order, PR_closure=len(clo))
    try:
        rep.extend(quotient_order_check(base, k, budgets.tables, budgets.cells), "quotient.")
    except BudgetExceeded as exc:
        rep.skip("quotient", f"budget: {exc}")
    return rep


def _semidirect(base, k, mode, seed, budgets):
    try:
        return semidirect_check(base, k, budgets.tables, budgets.cells)
    except NotCommutative as exc:
        raise UnsupportedSuite(f"semidirect: {exc}") from exc


def _stabilizer(base, k, mode, seed, budgets):
    rep = Report("stabilizer", base.spec, k=k)
    st, info = stabilizer_Stk(base, k, budgets.tables, budgets.cells)
    extra = info.to_dict()
    rep.add("fixes_R", extra["fixes_R"], None)
    rep.add("contains_identity", extra["contains_identity"], None)
    rep.add("at_most_ratio", extra["at_most_ratio"], {"St": extra["order"], "ratio": extra["ratio"]})
    if "equals_ratio" in extra:
        rep.add("equals_ratio_on_chain", extra["equals_ratio"], {"St": extra["order"], "ratio": extra["ratio"]})
    else:
        rep.skip("equals_ratio_on_chain", "needs a chain ring of characteristic p^c, c > 1")
    rep.extend(stab_iso_order_check(base, k, k + 1, budgets.tables, seed=seed), "iso.")
    rep.counts.update(St=extra["order"], ratio=extra["ratio"])
    return rep


def _redundancy_search(base, k, mode, seed, budgets):
    return redundancy_search(base, k, mode, seed=seed, budget=budgets.tuples, table_budget=budgets.tables)


_RUNNERS = {
    "redundancy-search": _redundancy_search,
    "axioms": _axioms,
    "dual-structure": _dual_structure,
    "eval-lemma": _eval_lemma,
    "null-decomp": _null_decomp,
    "equiv": _equiv,
    "cherper": _cherper,
    "chain": _chain,
    "sums": _sums,
    "groups": _groups,
    "semidirect": _semidirect,
    "stabilizer": _stabilizer,
}


def run_suite(suite, base, k=1, mode="exhaustive", seed=0, budgets=None):
    """Run one named suite (or ``all``) and return its report."""
    budgets = budgets or Budgets()
    if suite == "all":
        return run_all(base, k, mode, seed, budgets)
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + EXTRA_SUITES + ('all',))}")
    rep = _RUNNERS[suite](base, k, mode, seed, budgets)
    rep.suite, rep.k = suite, k
    return rep


def run_all(base, k=1, mode="exhaustive", seed=0, budgets=None):
    budgets = budgets or Budgets()
    rep = Report("all", base.spec, k=k, mode=mode)
    for suite in SUITES:
        try:
            sub = run_suite(suite, base, k, mode, seed, budgets)
        except (UnsupportedSuite, NotCommutative) as exc:
            rep.skip(suite, f"unsupported: {exc}")
            continue
        except BudgetExceeded as exc:
            rep.skip(suite, f"budget: {exc}")
            continue
        rep.extend(sub, f"{suite}.")
        rep.counts[f"{suite}.mode"] = sub.mode
        if sub.mode == "sampled":
            rep.mode, rep.seed = "sampled", seed
    return rep


__all__ = ["Budgets", "EXTRA_SUITES", "SUITES", "run_all", "run_suite"]
