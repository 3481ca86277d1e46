"""Command-line front end.

Subcommands: ``solve``, ``repro-table2``, ``order-table``, ``compare`` and
``corpus``. Exit codes: 0 converged, 1 usage or parse error, 2 iteration
limit reached, 3 breakdown (zero derivative, repeated node, NaN, or Newton
requested without a derivative).

Functions are expressions in ``x`` using ``+ - * / ^``, parentheses and
``exp ln sin cos``; ``@name`` selects a built-in corpus entry. Reals are
printed in scientific notation with an ``E`` exponent marker; the legacy
``D`` marker is accepted on input.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import repro
from .analysis import efficiency_index, equal_cost_table, order_bounds, order_of_convergence
from .corpus import CorpusEntry, builtin_corpus, lookup
from .errors import ExpressionSyntaxError, NotFound
from .expression import parse
from .iterate import (
    ProblemSpec,
    SolveReport,
    SolverConfig,
    Termination,
    newton_solve,
    secant_solve,
    solve,
)
from .realnum import DEFAULT_PRECISION, QUAD_PRECISION, RealContext, format_real
from .tables import render_csv, render_json, render_report, render_table, report_rows

PRECISION_ENV = "SECANTX_PRECISION_BITS"
EXIT_OK, EXIT_USAGE, EXIT_MAXITER, EXIT_BREAKDOWN = 0, 1, 2, 3
REPRO_DIGITS = 36
DEFAULT_DIGITS = 17

GRAMMAR_HELP = """expression grammar:
  expr   := term (('+'|'-') term)*
  term   := factor (('*'|'/') factor)*
  factor := '-' factor | base ('^' factor)?
  base   := number | x | '(' expr ')' | exp|ln|sin|cos '(' expr ')'
  '^' is right-associative; a non-integer exponent needs a positive literal
  or exp(...) base. '@name' picks a corpus entry (see 'secantx corpus')."""


class UsageError(Exception):
    pass


class BreakdownError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def exit_code(term: Termination) -> int:
    if term.success:
        return EXIT_OK
    if term is Termination.MAX_ITERATIONS:
        return EXIT_MAXITER
    return EXIT_BREAKDOWN


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}")
    if value < 2:
        raise UsageError(f"{PRECISION_ENV} must be >= 2")
    return value


def _precision(args) -> int:
    return args.precision if args.precision is not None else default_precision()


def _split_points(text: str) -> Tuple[str, ...]:
    points = tuple(p.strip() for p in text.split(",") if p.strip())
    if not points:
        raise UsageError("--x0 needs at least one value")
    return points


def _check_reals(ctx: RealContext, values: Sequence[str], flag: str) -> None:
    for v in values:
        try:
            ctx.parse(v)
        except ValueError:
            raise UsageError(f"{flag}: not a number: {v!r}")


class Problem:
    """A function from the command line: a corpus entry or a parsed expression."""

    def __init__(self, spec: str, ctx: RealContext, alpha: Optional[str], fprime: Optional[str]):
        self.entry: Optional[CorpusEntry] = None
        if spec.startswith("@"):
            try:
                self.entry = lookup(spec[1:])
            except NotFound as exc:
                raise UsageError(exc.args[0])
            base = self.entry.problem(ctx)
            f, deriv, root, name = base.f, base.fprime, base.known_root, self.entry.name
        else:
            f, deriv, root, name = _parse_expr(spec, "--function"), None, None, spec
        if fprime is not None:
            deriv = _parse_expr(fprime, "--fprime")
        if alpha is not None:
            _check_reals(ctx, [alpha], "--alpha")
            root = ctx.parse(alpha)
        self.spec = ProblemSpec(f=f, fprime=deriv, known_root=root, name=name)

    def default_k(self) -> int:
        return self.entry.suggested_k if self.entry else 1

    def default_points(self) -> Optional[Tuple[str, ...]]:
        return self.entry.suggested_initial_points if self.entry else None


def _parse_expr(text: str, flag: str):
    try:
        return parse(text)
    except ExpressionSyntaxError as exc:
        raise UsageError(f"{flag}: {exc.annotated()}")


def _config_payload(args, problem: Problem, k: int, points, precision: int) -> Dict[str, Any]:
    return {
        "function": args.function,
        "k": k,
        "x0": list(points),
        "alpha": None if problem.spec.known_root is None else format_real(problem.spec.known_root, args.digits),
        "precision": precision,
        "tol_residual": args.tol_residual,
        "tol_step": args.tol_step,
        "max_iter": args.max_iter,
    }


def _solver_config(args, k: int, points, precision: int) -> SolverConfig:
    try:
        return SolverConfig(
            k=k,
            initial_points=points,
            precision=precision,
            tol_residual=args.tol_residual,
            tol_step=args.tol_step,
            max_iterations=args.max_iter,
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_solve(args) -> int:
    precision = _precision(args)
    ctx = RealContext(precision)
    problem = Problem(args.function, ctx, args.alpha, None)
    k = args.k if args.k is not None else problem.default_k()
    points = _split_points(args.x0) if args.x0 else problem.default_points()
    if points is None:
        raise UsageError("--x0 is required for expression functions")
    _check_reals(ctx, points, "--x0")
    for name in ("tol_residual", "tol_step"):
        value = getattr(args, name)
        if value is not None:
            _check_reals(ctx, [value], "--" + name.replace("_", "-"))
    config = _solver_config(args, k, points, precision)
    report = solve(problem.spec, config)
    rows = report_rows(report, args.digits)
    print(render_report(args.format, _config_payload(args, problem, k, points, precision), report, rows))
    if args.format == "table":
        print(f"termination: {report.termination.value}  evaluations: {report.evaluations}")
    return exit_code(report.termination)


def cmd_repro_table2(args) -> int:
    precision = args.precision if args.precision is not None else QUAD_PRECISION
    report = repro.run(precision)
    rows = report_rows(report, args.digits)
    config = {
        "function": "@" + repro.ENTRY,
        "k": repro.K,
        "x0": list(repro.STARTS),
        "alpha": "2",
        "precision": precision,
    }
    checks = repro.limit_checks(report)
    if args.format == "json":
        payload = {
            "config": config,
            "records": [r.as_json() for r in rows],
            "termination": report.termination.value,
            "evaluations": report.evaluations,
            "checks": [
                {
                    "name": c.name,
                    "observed": [None if v is None else format_real(v, 6) for v in c.observed],
                    "target": format_real(c.target, 6),
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                }
                for c in checks
            ],
        }
        print(render_json(payload))
    else:
        print(render_report(args.format, config, report, rows))
        if args.format == "table":
            print(f"termination: {report.termination.value}  precision: {precision} bits")
            for c in checks:
                observed = ", ".join("*" if v is None else format_real(v, 4) for v in c.observed)
                status = "PASS" if c.passed else "FAIL"
                print(f"check {c.name}: {observed} -> {format_real(c.target, 6)} ({c.tolerance}) {status}")
    return exit_code(report.termination)


def cmd_order_table(args) -> int:
    if args.k_max < 1:
        raise UsageError("--k-max must be >= 1")
    ctx = RealContext(_precision(args))
    header = ("k", "s_k", "lower_bound", "upper_bound", "EI_k", "bracketed")
    rows: List[List[Optional[str]]] = []
    for k in range(1, args.k_max + 1):
        s = order_of_convergence(k, ctx=ctx)
        ei = efficiency_index(s, 1, ctx)
        if k >= 2:
            lo, hi = order_bounds(k, ctx)
            rows.append([str(k), format_real(s, args.digits), format_real(lo, args.digits),
                         format_real(hi, args.digits), format_real(ei, args.digits),
                         "yes" if lo < s < hi else "no"])
        else:
            rows.append([str(k), format_real(s, args.digits), None, None, format_real(ei, args.digits), None])
    if args.format == "json":
        print(render_json({"rows": [dict(zip(header, r)) for r in rows]}))
    elif args.format == "csv":
        print(render_csv(header, rows))
    else:
        print(render_table(header, rows))
    return EXIT_OK


def parse_methods(text: str) -> List[Tuple[str, int]]:
    """``gsec:2,newton,secant`` -> ``[("gsec", 2), ("newton", 1), ("secant", 1)]``."""
    methods = []
    for item in (t.strip() for t in text.split(",")):
        if not item:
            continue
        name, _, arg = item.partition(":")
        if name == "gsec":
            try:
                k = int(arg)
            except ValueError:
                raise UsageError(f"gsec needs an integer order, e.g. gsec:2 (got {item!r})")
            if k < 1:
                raise UsageError("gsec order must be >= 1")
            methods.append(("gsec", k))
        elif name in ("newton", "secant") and not arg:
            methods.append((name, 1))
        else:
            raise UsageError(f"unknown method {item!r}; use gsec:K, newton or secant")
    if not methods:
        raise UsageError("--methods is empty")
    return methods


def run_method(problem: ProblemSpec, method: str, k: int, points, args, precision: int) -> SolveReport:
    if method == "newton":
        if problem.fprime is None:
            raise BreakdownError(f"newton needs derivative metadata for {problem.name!r}; pass --fprime")
        config = _solver_config(args, 1, (), precision)
        return newton_solve(problem, points[0], config)
    if len(points) < 2:
        raise UsageError(f"{method} needs at least two starting points")
    if method == "secant":
        return secant_solve(problem, _solver_config(args, 1, points[:2], precision))
    return solve(problem, _solver_config(args, k, points[: k + 1], precision))


def cmd_compare(args) -> int:
    precision = _precision(args)
    ctx = RealContext(precision)
    methods = parse_methods(args.methods)
    problem = Problem(args.function, ctx, args.alpha, args.fprime)
    points = _split_points(args.x0) if args.x0 else problem.default_points()
    if points is None:
        raise UsageError("--x0 is required for expression functions")
    _check_reals(ctx, points, "--x0")
    labels = [f"gsec:{k}" if m == "gsec" else m for m, k in methods]
    reports = [run_method(problem.spec, m, k, points, args, precision) for m, k in methods]
    runs = [(r, r.evals_per_iteration) for r in reports]
    pairings = equal_cost_table(runs)

    header = ["q", "evaluations"]
    for label in labels:
        header += [f"{label}:n", f"{label}:x", f"{label}:|eps|"]
    cost_unit = 1
    for _, m in runs:
        cost_unit *= m
    rows = []
    for p in pairings:
        row: List[Optional[str]] = [str(p.q), str(p.q * cost_unit)]
        for n, x, e in zip(p.indices, p.xs, p.errors):
            row += [str(n), format_real(x, args.digits), None if e is None else format_real(abs(e), 4)]
        rows.append(row)

    if args.format == "json":
        payload = {
            "config": {
                "function": args.function,
                "x0": list(points),
                "methods": labels,
                "evals_per_iteration": [m for _, m in runs],
                "precision": precision,
            },
            "terminations": {label: r.termination.value for label, r in zip(labels, reports)},
            "rows": [dict(zip(header, r)) for r in rows],
        }
        print(render_json(payload))
    elif args.format == "csv":
        print(render_csv(header, rows))
    else:
        print(render_table(header, rows))
        for label, r in zip(labels, reports):
            print(f"{label}: {r.termination.value}, {len(r.records)} iterates, {r.evaluations} evaluations")
    return EXIT_OK


def cmd_corpus(args) -> int:
    header = ("name", "expression", "root", "k", "x0", "description")
    rows = [[e.name, e.expression, e.known_root if len(e.known_root) < 24 else e.known_root[:21] + "...",
             str(e.suggested_k), ",".join(e.suggested_initial_points), e.description]
            for e in builtin_corpus()]
    print(render_table(header, rows))
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, digits: int = DEFAULT_DIGITS) -> None:
    p.add_argument("--precision", type=int, default=None,
                   help=f"significand bits (default ${PRECISION_ENV} or {DEFAULT_PRECISION})")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--digits", type=int, default=digits, help="significant digits for x_n and f_n")


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--function", required=True, help="expression in x, or @corpus-name")
    p.add_argument("--x0", help="comma-separated starting points, oldest first")
    p.add_argument("--alpha", help="known root, enables error columns")
    p.add_argument("--tol-step", dest="tol_step", default=None)
    p.add_argument("--tol-residual", dest="tol_residual", default="0")
    p.add_argument("--max-iter", dest="max_iter", type=int, default=100)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="secantx",
        description="Generalized secant root finding and convergence analysis.",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="run the generalized secant method",
                       epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_solver_flags(p)
    p.add_argument("--k", type=int, default=None, help="interpolation degree (default: corpus suggestion or 1)")
    _add_common(p)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("repro-table2", help="rerun the x^3-8, k=2 experiment at 113 bits")
    _add_common(p, REPRO_DIGITS)
    p.set_defaults(handler=cmd_repro_table2)

    p = sub.add_parser("order-table", help="orders s_k, their bounds and efficiency indices")
    p.add_argument("--k-max", dest="k_max", type=int, default=10)
    _add_common(p)
    p.set_defaults(handler=cmd_order_table)

    p = sub.add_parser("compare", help="equal-cost comparison of several methods",
                       epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_solver_flags(p)
    p.add_argument("--methods", default="gsec:2,newton", help="comma list of gsec:K, newton, secant")
    p.add_argument("--fprime", default=None, help="derivative expression for newton")
    _add_common(p)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("corpus", help="list built-in test functions")
    p.set_defaults(handler=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "digits", 1) < 1:
            raise UsageError("--digits must be >= 1")
        if getattr(args, "precision", None) is not None and args.precision < 2:
            raise UsageError("--precision must be >= 2")
        return args.handler(args)
    except UsageError as exc:
        print(f"secantx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BreakdownError as exc:
        print(f"secantx: {exc}", file=sys.stderr)
        return EXIT_BREAKDOWN


if __name__ == "__main__":
    sys.exit(main())
