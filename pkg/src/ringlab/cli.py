"""Command-line entry point: ``ringlab info | nullpoly | count | verify | perm-test``.

Every command prints one JSON document.  Exit codes: 0 success, 1 a check
failed, 2 usage or parse error, 3 budget exceeded or suite unsupported.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .cache import TableCache
from .errors import BudgetExceeded, NotCommutative, ParseError, RinglabError, UnsupportedSuite, WrongRing
from .funspace import count_polyfun, count_polyfun_dual, ideal_stats
from .groups import stabilizer_Stk
from .perm import compute_L, count_prpol_dual, expected_L_field, is_pp_dual
from .poly import Poly, monic_central_null, null_exponents
from .report import jsonable
from .rings import DEFAULT_SIZE_BUDGET, construct_ring, pretty, use_cache
from .structure import (
    center,
    chain_analysis,
    jacobson_radical,
    sum_of_units_reachable,
    unit_set,
)
from .verify import EXTRA_SUITES, SUITES, Budgets, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MAX_TAIL_COMPONENTS = 8
# enumeration oracles in ``count`` are skipped above this many tuples
CROSSCHECK_TUPLES = 10**6


def _ring(args):
    return construct_ring(args.spec, budget=args.budget_elements)


def _pretty_poly(f):
    ring = f.ring
    terms = []
    for j, c in enumerate(f.coeffs):
        if not c:
            continue
        mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
        coef = pretty(ring, c)
        if mono and c == ring.one:
            terms.append(mono)
        else:
            terms.append(f"({coef})" + (f"*{mono}" if mono else ""))
    return " + ".join(reversed(terms)) or "0"


def cmd_info(args):
    ring = _ring(args)
    info = chain_analysis(ring)
    out = {
        "spec": ring.spec,
        "size": ring.size,
        "char": ring.char,
        "commutative": ring.commutative,
        "storage": ring.storage_mode,
        "units": len(unit_set(ring)),
        "center": len(center(ring)),
        "radical": len(jacobson_radical(ring)),
        "sum_of_units": sum_of_units_reachable(ring),
        **info.to_dict(),
    }
    return out, EXIT_OK


def cmd_nullpoly(args):
    ring = _ring(args)
    M, L = null_exponents(ring)
    h = monic_central_null(ring)
    out = {"spec": ring.spec, "M": M, "L": L, "degree": h.degree, "poly": h.index_str()}
    if args.pretty:
        out["pretty"] = _pretty_poly(h)
    try:
        out["ideal_stats"] = ideal_stats(ring, budget=args.budget_tuples).to_dict()
    except BudgetExceeded as exc:
        out["ideal_stats"] = {"status": "skipped", "reason": str(exc)}
    return out, EXIT_OK


def _verdict(checks):
    if not checks:
        return "skipped"
    return "pass" if all(checks) else "fail"


def _field(fn):
    try:
        return fn()
    except BudgetExceeded as exc:
        return {"status": "skipped", "reason": str(exc)}


def cmd_count(args):
    ring = _ring(args)
    k, tb = args.k, args.budget_tuples
    xb = min(tb, CROSSCHECK_TUPLES)

    def polyfun():
        span = count_polyfun(ring, "span", tb)
        try:
            enum = count_polyfun(ring, "enumerate", xb)
            check = "pass" if enum == span else "fail"
        except BudgetExceeded:
            check = "skipped"
        return {"value": span, "method": "span", "crosscheck": check}

    def polyfun_dual():
        dc = count_polyfun_dual(ring, k, tb)
        return {"value": dc.count, "method": dc.method, "crosscheck": dc.crosscheck}

    def L():
        # walks bijective functions x null lambda classes; checked against the
        # plain pair enumeration and, on fields, against q!(q-1)^q
        value = compute_L(ring, tb, args.budget_tables).L
        checks = []
        try:
            checks.append(compute_L(ring, xb, args.budget_tables, method="enumerate").L == value)
        except BudgetExceeded:
            pass
        if ring.kind == "gf":
            checks.append(expected_L_field(ring.size) == value)
        return {"value": value, "method": "enumerate", "crosscheck": _verdict(checks)}

    def prpol():
        pc = count_prpol_dual(ring, k, tb, args.budget_tables)
        return {"value": pc.count, "method": pc.method, "crosscheck": pc.crosscheck}

    def st():
        ps, rep = stabilizer_Stk(ring, k, args.budget_tables)
        # the order equals the ideal ratio on chain rings of characteristic p^c, c > 1
        eq = rep.extra.get("equals_ratio")
        return {"value": len(ps), "method": "enumerate",
                "crosscheck": "skipped" if eq is None else _verdict([eq])}

    def ratio():
        span = ideal_stats(ring, "span", tb)
        try:
            enum = ideal_stats(ring, "enumerate", xb)
            check = "pass" if enum.ratio == span.ratio else "fail"
        except BudgetExceeded:
            check = "skipped"
        return {"value": span.ratio, "method": "span", "crosscheck": check}

    out = {"spec": ring.spec, "k": k}
    for name, fn in (("polyfun", polyfun), ("polyfun_dual", polyfun_dual), ("L", L),
                     ("prpol_dual", prpol), ("St", st), ("ratio", ratio)):
        out[name] = _field(fn)
    failed = any(isinstance(v, dict) and v.get("crosscheck") == "fail" for v in out.values())
    return out, EXIT_FAIL if failed else EXIT_OK


def cmd_verify(args):
    ring = _ring(args)
    budgets = Budgets(tuples=args.budget_tuples, tables=args.budget_tables)
    rep = run_suite(args.suite, ring, args.k, args.mode, args.seed, budgets)
    rep.seed = args.seed
    return rep.to_dict(), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_perm_test(args):
    ring = _ring(args)
    comps = [Poly.parse(ring, args.f0)]
    for i in range(1, args.k + 1):
        comps.append(Poly.parse(ring, getattr(args, f"f{i}") or ""))
    verdict = is_pp_dual(comps, ring, args.k, crosscheck=True, budget=args.budget_tuples)
    out = {"spec": ring.spec, "k": args.k, "components": [f.index_str() for f in comps], **verdict.to_dict()}
    if args.pretty:
        out["pretty"] = [_pretty_poly(f) for f in comps]
    return out, EXIT_OK


def _count_csv(doc):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["quantity", "value", "method", "crosscheck"])
    for key, val in doc.items():
        if isinstance(val, dict):
            writer.writerow([key, val.get("value", ""), val.get("method", val.get("status", "")),
                             val.get("crosscheck", val.get("reason", ""))])
    return buf.getvalue()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    common.add_argument("--out", help="write the JSON document here instead of stdout")
    common.add_argument("--cache-dir", help="table cache directory (default: $RINGLAB_CACHE or ~/.cache/ringlab)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the table cache")
    common.add_argument("--budget-tuples", type=int, default=Budgets.tuples)
    common.add_argument("--budget-tables", type=int, default=Budgets.tables)
    common.add_argument("--budget-elements", type=int, default=DEFAULT_SIZE_BUDGET)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks (recorded in the output)")
    common.add_argument("--pretty", action="store_true", help="add human-readable polynomials (display only)")

    parser = argparse.ArgumentParser(prog="ringlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="structure of a ring")
    p.add_argument("spec")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("nullpoly", parents=[common], help="monic central null polynomial")
    p.add_argument("spec")
    p.set_defaults(func=cmd_nullpoly)

    p = sub.add_parser("count", parents=[common], help="function and permutation counts")
    p.add_argument("spec")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--csv", action="store_true", help="emit the counts as CSV")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",) + EXTRA_SUITES)
    p.add_argument("spec")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("perm-test", parents=[common], help="permutation test on R_k")
    p.add_argument("spec")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--f0", required=True, help="coefficient indices, low degree first")
    for i in range(1, MAX_TAIL_COMPONENTS + 1):
        p.add_argument(f"--f{i}", default=None)
    p.set_defaults(func=cmd_perm_test)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", 1) < 1:
        parser.error("--k must be at least 1")
    if args.command == "perm-test" and args.k > MAX_TAIL_COMPONENTS:
        parser.error(f"--k must be at most {MAX_TAIL_COMPONENTS} for perm-test")
    if min(args.budget_tuples, args.budget_tables, args.budget_elements) < 1:
        parser.error("budgets must be positive")
    use_cache(None if args.no_cache else TableCache(args.cache_dir))
    try:
        doc, code = args.func(args)
    except ParseError as exc:
        print(f"ringlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, UnsupportedSuite, NotCommutative) as exc:
        doc, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_BUDGET
    except (WrongRing, RinglabError) as exc:
        print(f"ringlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    doc = {**doc, "seed": args.seed}
    if not args.no_timestamp:
        doc = {**doc, "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())}
    if getattr(args, "csv", False):
        text = _count_csv(doc)
    else:
        text = json.dumps(jsonable(doc), indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
