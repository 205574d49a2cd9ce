"""Command-line front end.

Every command prints a JSON report on stdout.  Exit status: 0 on success,
1 when a threshold/verification check answers "no", 2 on any error.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import fileio
from .cells import cell_of, cell_optimum, check_feasible, build_constraint_graph
from .errors import GridTooLarge, ParseError, PricingError
from .exact import DEFAULT_GRID_BUDGET, grid_solve, restricted_solve
from .fileio import format_rational, parse_rational, parse_rational_list
from .model import PricingInstance, price_vector, scale_to_integer
from .reductions.knapsack import (
    KnapsackInstance,
    iid_approx_revenue,
    knapsack_to_iid,
    multiplicities,
    subsetsum_to_knapsack,
    verify_iid_construction,
)
from .reductions.partition import (
    low_priced_items,
    partition_to_support3,
    quadratic_approx_support3,
)
from .revenue import TieBreakRule, expected_revenue, expected_revenue_naive
from .support2 import solve_support2

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class _Fail(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_instance(args) -> PricingInstance:
    if not args.inp:
        raise _Fail("--in is required")
    return fileio.parse_instance(_read(args.inp))


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc


def _big_int(text: str) -> int:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^|\*\*)\s*(\d+)\s*", text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    try:
        return int(text)
    except ValueError as exc:
        raise ParseError(f"expected an integer or base^exponent, got {text!r}") from exc


def result_report(inst: PricingInstance, prices, revenue, solver: str, started: float) -> dict:
    """Report for a solved instance; re-evaluates the revenue before emitting it."""
    prices = price_vector(prices, inst.n)
    check = expected_revenue(inst, prices)
    if check != revenue:
        raise AssertionError(f"{solver}: reported revenue {revenue} but prices earn {check}")
    return {
        "solver": solver,
        "prices": [format_rational(p) for p in prices],
        "revenue": format_rational(revenue),
        "instance_digest": fileio.instance_digest(inst),
        "elapsed_seconds": round(time.perf_counter() - started, 6),
    }


def _decide(report: dict, threshold: Optional[str]) -> int:
    if threshold is None:
        return EXIT_OK
    t = parse_rational(threshold)
    meets = Fraction(report["revenue"]) >= t
    report["threshold"] = format_rational(t)
    report["meets_threshold"] = meets
    return EXIT_OK if meets else EXIT_NO


def solve_auto(inst: PricingInstance, budget: int = DEFAULT_GRID_BUDGET):
    """Dispatch: support-2 algorithm, else integer grid (after scaling if needed)."""
    if inst.max_support <= 2:
        prices, revenue = solve_support2(inst)
        return prices, revenue, "support2"
    scaled, factor = scale_to_integer(inst)
    prices, revenue = grid_solve(scaled, budget)
    if factor == 1:
        return prices, revenue, "grid"
    return tuple(p / factor for p in prices), revenue / factor, "scaled-grid"


def cmd_validate(args) -> tuple[dict, int]:
    inst = _load_instance(args)
    return {"valid": True, "n": inst.n, "instance_digest": fileio.instance_digest(inst)}, EXIT_OK


def cmd_eval(args) -> tuple[dict, int]:
    inst = _load_instance(args)
    if args.prices is None:
        raise _Fail("--prices is required")
    p = price_vector(parse_rational_list(args.prices), inst.n)
    rule = TieBreakRule(args.rule)
    if rule is TieBreakRule.MAX_PRICE:
        rev = expected_revenue(inst, p)
    else:
        rev = expected_revenue_naive(inst, p, rule)
    report = {"prices": [format_rational(x) for x in p], "rule": rule.value, "revenue": format_rational(rev)}
    return report, _decide(report, args.threshold)


def _solver_cmd(fn: Callable[[PricingInstance, argparse.Namespace], tuple]) -> Callable:
    def run(args) -> tuple[dict, int]:
        inst = _load_instance(args)
        started = time.perf_counter()
        prices, revenue, name = fn(inst, args)
        report = result_report(inst, prices, revenue, name, started)
        return report, _decide(report, args.threshold)

    return run


cmd_solve = _solver_cmd(lambda inst, a: solve_auto(inst, a.budget))
cmd_solve_support2 = _solver_cmd(lambda inst, a: (*solve_support2(inst), "support2"))
cmd_grid_solve = _solver_cmd(lambda inst, a: (*grid_solve(inst, a.budget), "grid"))


def _restricted(inst: PricingInstance, args):
    if not args.candidates:
        raise _Fail("--candidates is required")
    groups = [parse_rational_list(g) for g in args.candidates.split(";")]
    if len(groups) == 1:
        groups = groups * inst.n
    return (*restricted_solve(inst, groups, args.budget), "restricted")


cmd_restricted_solve = _solver_cmd(_restricted)


def cmd_verify_cell(args) -> tuple[dict, int]:
    inst = _load_instance(args)
    if args.threshold is None:
        raise _Fail("--threshold is required")
    if args.cell:
        cell = fileio.parse_cell(_read(args.cell))
    elif args.prices:
        cell = cell_of(inst, parse_rational_list(args.prices))
    else:
        raise _Fail("give --cell PATH or --prices")
    t = parse_rational(args.threshold)
    feasible = check_feasible(build_constraint_graph(inst, cell))
    report: dict = {"feasible": feasible, "threshold": format_rational(t)}
    ok = False
    if feasible:
        opt = cell_optimum(inst, cell)
        report["prices"] = [format_rational(p) for p in opt.prices]
        report["revenue"] = format_rational(opt.revenue)
        report["gamma"] = [format_rational(g) for g in opt.gamma]
        ok = opt.revenue >= t
    report["certificate_valid"] = ok
    return report, EXIT_OK if ok else EXIT_NO


def cmd_gen_partition(args) -> tuple[dict, int]:
    if not args.c:
        raise _Fail("--c is required")
    cons = partition_to_support3(_int_list(args.c), args.scale)
    report = {
        "c": list(cons.c),
        "order": list(cons.order),
        "M": cons.M,
        "L": format_rational(cons.L),
        "H": format_rational(cons.H),
        "t_star": format_rational(cons.t_star),
        "q": [format_rational(x) for x in cons.q],
        "r": [format_rational(x) for x in cons.r],
    }
    if args.out:
        _write(args.out, fileio.serialize_instance(cons.instance))
        report["instance_file"] = args.out
    else:
        report["instance"] = fileio.instance_to_dict(cons.instance)
    return report, EXIT_OK


def cmd_approx_quadratic(args) -> tuple[dict, int]:
    if not args.c:
        raise _Fail("--c is required")
    cons = partition_to_support3(_int_list(args.c), args.scale)
    if args.prices:
        p = parse_rational_list(args.prices)
        S = low_priced_items(cons, p)
    elif args.subset is not None:
        S = frozenset(_int_list(args.subset))
    else:
        raise _Fail("give --subset or --prices")
    report = {"subset": sorted(S), "approx": format_rational(quadratic_approx_support3(cons, S))}
    if args.prices:
        rev = expected_revenue(cons.instance, price_vector(p, cons.n))
        report["revenue"] = format_rational(rev)
        report["scaled_error"] = format_rational(
            abs(rev - quadratic_approx_support3(cons, S)) * 4 * cons.M * cons.M
        )
    return report, EXIT_OK


def _knapsack_from_args(args) -> KnapsackInstance:
    if args.inp:
        doc = fileio.load_json(_read(args.inp))
        if not isinstance(doc, dict) or set(doc) != {"a", "L"}:
            raise ParseError("knapsack file must be an object with fields 'a' and 'L'")
        return KnapsackInstance(tuple(int(x) for x in doc["a"]), int(doc["L"]))
    if args.a is None or args.target is None:
        raise _Fail("give --in PATH or both --a and --target")
    return KnapsackInstance(tuple(_int_list(args.a)), int(args.target))


def cmd_gen_subsetsum_knapsack(args) -> tuple[dict, int]:
    if args.b is None or args.target is None:
        raise _Fail("--b and --target are required")
    k = subsetsum_to_knapsack(_int_list(args.b), int(args.target))
    doc = {"a": [str(x) for x in k.a], "L": str(k.L)}
    if args.out:
        _write(args.out, fileio.dumps(doc))
        return {"knapsack_file": args.out, "n": k.n}, EXIT_OK
    return doc, EXIT_OK


def cmd_gen_iid(args) -> tuple[dict, int]:
    k = _knapsack_from_args(args)
    N = _big_int(args.n_override) if args.n_override else None
    cons = knapsack_to_iid(k, N)
    report = {
        "m": cons.m,
        "N": str(cons.N),
        "v": [str(x) for x in cons.v],
        "threshold": format_rational(cons.threshold),
        "support_size": len(cons.Q),
    }
    if args.out:
        _write(args.out, fileio.serialize_instance(cons.instance))
        report["instance_file"] = args.out
    else:
        report["instance"] = fileio.instance_to_dict(cons.instance)
    if args.decide:
        prices, rev = restricted_solve(cons.instance, cons.prices)
        report["best_prices"] = [format_rational(p) for p in prices]
        report["best_revenue"] = format_rational(rev)
        report["multiplicities"] = list(multiplicities(cons, prices))
        report["approx_revenue"] = format_rational(iid_approx_revenue(cons, multiplicities(cons, prices)))
        report["gap_units"] = format_rational((rev - cons.threshold) * cons.scale_unit)
        report["decision"] = rev >= cons.threshold
        return report, EXIT_OK if rev >= cons.threshold else EXIT_NO
    return report, EXIT_OK


def cmd_verify_iid(args) -> tuple[dict, int]:
    k = _knapsack_from_args(args)
    N = _big_int(args.n_override) if args.n_override else None
    rep = verify_iid_construction(knapsack_to_iid(k, N))
    report = {"checks": rep.as_dict(), "passed": rep.passed}
    return report, EXIT_OK if rep.passed else EXIT_NO


COMMANDS: dict[str, tuple[Callable, str]] = {
    "validate": (cmd_validate, "check an instance file"),
    "eval": (cmd_eval, "expected revenue of a price vector"),
    "solve": (cmd_solve, "optimal prices, choosing a solver automatically"),
    "solve-support2": (cmd_solve_support2, "optimal prices for supports of size <= 2"),
    "grid-solve": (cmd_grid_solve, "brute force over the integer box"),
    "restricted-solve": (cmd_restricted_solve, "brute force over candidate price sets"),
    "verify-cell": (cmd_verify_cell, "check a cell certificate against a threshold"),
    "gen-partition": (cmd_gen_partition, "Partition -> three-point pricing instance"),
    "gen-subsetsum-knapsack": (cmd_gen_subsetsum_knapsack, "Subset-Sum -> Knapsack with repetitions"),
    "gen-iid": (cmd_gen_iid, "Knapsack -> identical-distribution pricing instance"),
    "verify-iid": (cmd_verify_iid, "exact checks of the identical-distribution construction"),
    "approx-quadratic": (cmd_approx_quadratic, "quadratic revenue approximation for a Partition instance"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="itempricing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--in", dest="inp", metavar="PATH")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--prices", metavar="r1,r2,...")
        p.add_argument("--rule", default="max-price", choices=[r.value for r in TieBreakRule])
        p.add_argument("--budget", type=int, default=DEFAULT_GRID_BUDGET, metavar="K")
        p.add_argument("--scale", type=int, default=1, metavar="S")
        p.add_argument("--n-override", metavar="N")
        p.add_argument("--threshold", metavar="r")
        p.add_argument("--cell", metavar="PATH")
        p.add_argument("--candidates", metavar="c1,c2[;...]")
        p.add_argument("--c", metavar="c1,c2,...")
        p.add_argument("--subset", metavar="i,j,...")
        p.add_argument("--a", metavar="a1,a2,...")
        p.add_argument("--b", metavar="b1,b2,...")
        p.add_argument("--target", metavar="T")
        p.add_argument("--decide", action="store_true")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    handler = COMMANDS[args.command][0]
    try:
        report, status = handler(args)
    except (_Fail, PricingError, OSError, GridTooLarge) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    sys.stdout.write(fileio.dumps(report))
    return status


def main() -> None:
    sys.exit(run())
