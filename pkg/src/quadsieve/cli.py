"""Command-line front end.

Subcommands: farey, rsum, circle, ay, verify-lemma, verify-theorem,
verify-corollary, sharpness, selftest.  Output is JSON (default) or CSV,
written to stdout or --out, and byte-identical for a fixed command line
and seed.  Exit codes: 0 success, 1 usage or domain error, 2 inequality
verdict failure.

Rationals on the command line and in spec files are "num/den" strings or
integers; computed report fields are floats printed with 17 significant
digits.  LSL_THREADS caps sweep parallelism without changing output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import acceptance
from .bounds import (
    instance_from_spec,
    sharpness_probe,
    sweep_double_sieve,
    sweep_quadratic_farey,
    sweep_sieve_sum,
    verify_quadratic_farey,
)
from .exact import format_rational, parse_rational
from .farey import farey
from .lattice import (
    CirclePointProblem,
    additive_profile,
    check_circle_coeff_bounds,
    circle_points,
    r2,
    sup_r2_witness,
)
from .reporting import BoundReport, json_text

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERDICT = 2


class UsageError(ValueError):
    """Bad invocation or malformed input file; exits with code 1."""


@dataclass
class RunConfig:
    """One resolved invocation: command, its parameters, and output wiring."""

    command: str
    params: dict
    out: str | None
    fmt: str
    seed: int


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for
    # inequality verdict failures, so remap usage problems to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quadsieve", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("farey", parents=[common], help="enumerate a Farey sequence")
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("rsum", parents=[common], help="lattice points on x^2+y^2=n")
    p.add_argument("--n", type=int)
    p.add_argument("--sup-upto", dest="sup_upto", type=int)

    p = sub.add_parser("circle", parents=[common], help="integer box points on a circle")
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--c2", type=int, required=True)
    p.add_argument("--c3", type=int, required=True)
    p.add_argument("--m", type=_rational_arg, required=True)
    p.add_argument("--H", dest="H", type=_rational_arg, required=True)

    p = sub.add_parser("ay", parents=[common], help="pair-sum counts of q*i^2+p*i")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--M", dest="M", type=int, required=True)
    p.add_argument("--N", dest="N", type=int, required=True)

    p = sub.add_parser("verify-lemma", parents=[common],
                       help="randomized sweep of the double sieve bound")
    p.add_argument("--n", type=int, default=100, help="number of instances")

    p = sub.add_parser("verify-theorem", parents=[common],
                       help="randomized sweep of the sieve sum bound")
    p.add_argument("--n", type=int, default=100, help="number of instances")

    p = sub.add_parser("verify-corollary", parents=[common],
                       help="verify the Farey quadratic bound (spec file or sweep)")
    p.add_argument("--spec", default=None, help="JSON instance file")
    p.add_argument("--n", type=int, default=200, help="sweep size when no --spec")
    p.add_argument("--Qmax", dest="Qmax", type=int, default=20)
    p.add_argument("--Nmax", dest="Nmax", type=int, default=12)

    p = sub.add_parser("sharpness", parents=[common],
                       help="ratio table lhs/((NQ+Q^2)*norm) on a grid")
    p.add_argument("--Qmax", dest="Qmax", type=int, default=20)
    p.add_argument("--Nmax", dest="Nmax", type=int, default=12)

    p = sub.add_parser("selftest", parents=[common],
                       help="acceptance criteria, one line per criterion")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    return parser


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _csv_text(rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in rows:
        writer.writerow([_csv_cell(cell) for cell in row])
    return buffer.getvalue()


def _render(config: RunConfig, payload: Any, rows: Sequence[Sequence[Any]]) -> str:
    if config.fmt == "csv":
        return _csv_text(rows)
    return json_text(payload) + "\n"


def _report_rows(report: BoundReport) -> list[list[Any]]:
    rows: list[list[Any]] = [["field", "value"]]
    rows.append(["lhs", report.lhs])
    rows.append(["rhs", report.rhs])
    rows.append(["error_budget", report.error_budget])
    rows.append(["pass", report.passed])
    for key, value in report.factors.items():
        rows.append([f"factor.{key}", value])
    return rows


def _cmd_farey(config: RunConfig) -> tuple[str, int]:
    sequence = farey(config.params["order"])
    payload = sequence.to_json()
    rows = [["fraction"], *[[s] for s in payload]]
    return _render(config, payload, rows), EXIT_OK


def _cmd_rsum(config: RunConfig) -> tuple[str, int]:
    n = config.params.get("n")
    sup_upto = config.params.get("sup_upto")
    if (n is None) == (sup_upto is None):
        raise UsageError("rsum needs exactly one of --n or --sup-upto")
    if n is not None:
        payload = {"n": n, "r2": r2(n)}
        rows = [["n", "r2"], [n, payload["r2"]]]
    else:
        top, argmax = sup_r2_witness(sup_upto)
        payload = {"sup_r": top, "argmax": argmax}
        rows = [["sup_r", "argmax"], [top, argmax]]
    return _render(config, payload, rows), EXIT_OK


def _cmd_circle(config: RunConfig) -> tuple[str, int]:
    problem = CirclePointProblem(
        config.params["c1"],
        config.params["c2"],
        config.params["c3"],
        config.params["m"],
        config.params["H"],
    )
    points = circle_points(problem)
    payload: dict[str, Any] = {
        "points": [[x, y] for x, y in points],
        "bounds": None,
        "pass": None,
    }
    code = EXIT_OK
    if len(points) >= 3 and math.gcd(problem.c1, problem.c2) == 1:
        report = check_circle_coeff_bounds(problem)
        payload["bounds"] = report.to_dict()
        payload["pass"] = report.passed
        if not report.passed:
            code = EXIT_VERDICT
    rows = [["x", "y"], *[[x, y] for x, y in points]]
    return _render(config, payload, rows), code


def _cmd_ay(config: RunConfig) -> tuple[str, int]:
    profile = additive_profile(
        config.params["q"], config.params["p"], config.params["M"], config.params["N"]
    )
    payload = {str(k): profile.counts[k] for k in sorted(profile.counts)}
    rows = [["k", "count"], *[[k, profile.counts[k]] for k in sorted(profile.counts)]]
    return _render(config, payload, rows), EXIT_OK


def _sweep_output(config: RunConfig, name: str, reports) -> tuple[str, int]:
    failures = [r for r in reports if not r.passed]
    ratios = [r.lhs / r.rhs for r in reports if r.rhs > 0]
    payload = {
        "command": name,
        "instances": len(reports),
        "seed": config.seed,
        "passes": len(reports) - len(failures),
        "failures": len(failures),
        "max_lhs_over_rhs": max(ratios, default=0.0),
        "failing": [r.to_dict() for r in failures[:5]],
    }
    rows = [["instance", "lhs", "rhs", "error_budget", "pass"]]
    for i, r in enumerate(reports):
        rows.append([i, r.lhs, r.rhs, r.error_budget, r.passed])
    return _render(config, payload, rows), EXIT_VERDICT if failures else EXIT_OK


def _cmd_verify_lemma(config: RunConfig) -> tuple[str, int]:
    reports = sweep_double_sieve(config.params["n"], config.seed)
    return _sweep_output(config, "verify-lemma", reports)


def _cmd_verify_theorem(config: RunConfig) -> tuple[str, int]:
    reports = sweep_sieve_sum(config.params["n"], config.seed)
    return _sweep_output(config, "verify-theorem", reports)


def _cmd_verify_corollary(config: RunConfig) -> tuple[str, int]:
    spec_path = config.params.get("spec")
    if spec_path is None:
        reports = sweep_quadratic_farey(
            config.params["n"],
            config.seed,
            order_max=config.params["Qmax"],
            count_max=config.params["Nmax"],
        )
        return _sweep_output(config, "verify-corollary", reports)
    try:
        with open(spec_path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read spec file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"spec file is not valid JSON: {exc}") from None
    try:
        instance = instance_from_spec(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    report = verify_quadratic_farey(instance)
    amplitude = instance.amplitude
    payload = {
        "instance": {
            "c0": amplitude.c0,
            "c1": amplitude.c1,
            "c2": amplitude.c2,
            "p": amplitude.p,
            "q": amplitude.q,
            "M": amplitude.offset,
            "N": amplitude.count,
            "Q": instance.order,
        },
        "lhs": report.lhs,
        "rhs": report.rhs,
        "error_budget": report.error_budget,
        "pass": report.passed,
        "factors": report.factors,
    }
    return (
        _render(config, payload, _report_rows(report)),
        EXIT_OK if report.passed else EXIT_VERDICT,
    )


def _cmd_sharpness(config: RunConfig) -> tuple[str, int]:
    cells = sharpness_probe(config.params["Qmax"], config.params["Nmax"])
    payload = {
        "cells": [c.to_dict() for c in cells],
        "min_ratio": min(c.ratio for c in cells),
        "max_ratio": max(c.ratio for c in cells),
    }
    rows = [["Q", "N", "lhs", "ratio", "envelope"]]
    for c in cells:
        rows.append([c.order, c.count, c.lhs, c.ratio, c.envelope])
    return _render(config, payload, rows), EXIT_OK


def _cmd_selftest(config: RunConfig) -> tuple[str, int]:
    only = config.params.get("only")
    numbers = None
    if only:
        try:
            numbers = [int(part) for part in only.split(",") if part.strip()]
        except ValueError:
            raise UsageError("--only takes comma-separated criterion numbers") from None
    try:
        results = acceptance.run(numbers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    # One line per criterion; timings are deliberately excluded so output
    # stays byte-identical between runs.
    if config.fmt == "csv":
        rows = [["criterion", "name", "pass", "detail"]]
        for r in results:
            rows.append([r.number, r.name, r.passed, r.detail])
        text = _csv_text(rows)
    else:
        lines = [
            json_text(
                {"criterion": r.number, "name": r.name, "pass": r.passed, "detail": r.detail}
            )
            for r in results
        ]
        text = "\n".join(lines) + "\n"
    failed = [r for r in results if not r.passed]
    return text, EXIT_VERDICT if failed else EXIT_OK


_HANDLERS = {
    "farey": _cmd_farey,
    "rsum": _cmd_rsum,
    "circle": _cmd_circle,
    "ay": _cmd_ay,
    "verify-lemma": _cmd_verify_lemma,
    "verify-theorem": _cmd_verify_theorem,
    "verify-corollary": _cmd_verify_corollary,
    "sharpness": _cmd_sharpness,
    "selftest": _cmd_selftest,
}


def run(config: RunConfig) -> int:
    """Execute a resolved configuration; returns the process exit code."""
    handler = _HANDLERS.get(config.command)
    if handler is None:
        print(f"error: unknown command {config.command!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        text, code = handler(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        # Domain errors (bad orders, scan limits, malformed rationals) are
        # usage-class failures, distinct from inequality verdicts.
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if config.out:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    params = vars(args)
    config = RunConfig(
        command=params.pop("command"),
        out=params.pop("out"),
        fmt=params.pop("format"),
        seed=params.pop("seed"),
        params=params,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
