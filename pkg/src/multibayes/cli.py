"""Command-line surface: reproduction report, grid CSVs, property
suites and model-file evaluation.

Exit codes: 0 success, 1 property failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from .core import format_decimal12, format_scalar, is_exact
from .errors import MultibayesError, UnknownSuiteError
from .evidence import Evidence
from .models import GRID_MODES, grid_values, medical_grid_spec, medical_model
from .modelfile import eval_expression, format_result, load_model
from .properties import run_suite
from .update import bayes_update, iterated_pearl_validity, jeffrey_update, pearl_update
from .validity import jeffrey_validity, pearl_validity, validity
from .distribution import Dist


def _fraction_line(name: str, value) -> str:
    if is_exact(value):
        return f"{name} = {format_scalar(value)} = {format_decimal12(value)}"
    return f"{name} = {format_decimal12(value)}"


def _dist_line(name: str, dist: Dist) -> str:
    return f"{name} = {dist}"


def cmd_report_medical(out=None) -> int:
    """Print every quantity of the built-in disease-test scenario."""
    out = out if out is not None else sys.stdout
    model = medical_model()
    omega, pt, nt = model.prior, model.pos_test, model.neg_test
    psi = Evidence(((pt, 2), (nt, 1)))
    posterior_j = jeffrey_update(omega, psi)
    posterior_p = pearl_update(omega, psi)
    lines = [
        _dist_line("prior", omega),
        _fraction_line("positive_test_validity", validity(omega, pt)),
        _fraction_line("negative_test_validity", validity(omega, nt)),
        _fraction_line("jeffrey_prior_validity", jeffrey_validity(omega, psi)),
        _fraction_line("pearl_prior_validity", pearl_validity(omega, psi)),
        _dist_line("posterior_positive", bayes_update(omega, pt)),
        _dist_line("posterior_negative", bayes_update(omega, nt)),
        _dist_line("jeffrey_posterior", posterior_j),
        _dist_line("pearl_posterior", posterior_p),
        _fraction_line("jeffrey_posterior_validity", jeffrey_validity(posterior_j, psi)),
        _fraction_line("pearl_posterior_validity", pearl_validity(posterior_p, psi)),
        _fraction_line("cross_pearl_update_jeffrey_validity", jeffrey_validity(posterior_p, psi)),
        _fraction_line("cross_jeffrey_update_pearl_validity", pearl_validity(posterior_j, psi)),
        _fraction_line("iterated_pearl", iterated_pearl_validity(omega, (pt, pt, nt))),
    ]
    for line in lines:
        print(line, file=out)
    return 0


def cmd_grid(mode: str, imax: int, jmax: int, out_path: str) -> int:
    spec = medical_grid_spec(mode, imax, jmax)
    rows = grid_values(spec)
    with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("i,j,value\n")
        for i, j, value in rows:
            handle.write(f"{i},{j},{format_decimal12(value)}\n")
    return 0


def cmd_check(suite: str, trials: int, seed: int, out=None) -> int:
    out = out if out is not None else sys.stdout
    results = run_suite(suite, trials, seed)
    failures = 0
    for result in results:
        print(result.line(), file=out)
        if not result.passed:
            failures += 1
    print(f"{len(results) - failures}/{len(results)} properties passed", file=out)
    return 1 if failures else 0


def cmd_eval(model_path: str, expr: str, out=None) -> int:
    out = out if out is not None else sys.stdout
    model = load_model(model_path)
    result = eval_expression(model, expr)
    print(format_result(result), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multibayes",
        description="Exact discrete inference: Jeffrey, Pearl and VFE updating",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", help="print a built-in reproduction report")
    report.add_argument("name", choices=("medical",))

    grid = sub.add_parser("grid", help="write an evidence-grid CSV")
    grid.add_argument("--mode", required=True, choices=GRID_MODES)
    grid.add_argument("--imax", type=int, default=10)
    grid.add_argument("--jmax", type=int, default=10)
    grid.add_argument("--out", required=True)

    check = sub.add_parser("check", help="run seeded property suites")
    check.add_argument("--suite", default="all")
    check.add_argument("--trials", type=int, default=200)
    check.add_argument("--seed", type=int, default=42)

    evaluate = sub.add_parser("eval", help="evaluate an expression against a model file")
    evaluate.add_argument("--model", required=True)
    evaluate.add_argument("--expr", required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            return cmd_report_medical()
        if args.command == "grid":
            return cmd_grid(args.mode, args.imax, args.jmax, args.out)
        if args.command == "check":
            return cmd_check(args.suite, args.trials, args.seed)
        if args.command == "eval":
            return cmd_eval(args.model, args.expr)
    except UnknownSuiteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MultibayesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def run() -> None:
    sys.exit(main())
