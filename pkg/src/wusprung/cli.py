"""Command-line interface.

Exit codes: 0 success, 2 usage, 3 domain error, 4 non-convergence, 5 I/O.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import figures
from .asymptotics import asym_V
from .errors import ConvergenceError, DomainError, MultiValuedError
from .expansions import (
    case1_coefficients,
    case2_coefficients,
    coefficients_to_json,
    eval_case1,
    eval_case2,
    format_coefficients,
)
from .solver import (
    TWO_PI,
    Regime,
    classify,
    forward_x,
    invert_V,
    theta0_of_V0,
    theta_to_xV,
    v0_of_theta0,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_IO = 0, 2, 3, 4, 5

OUTPUT_DIR_ENV = "WUSPRUNG_OUTPUT_DIR"


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _resolve_v0(args) -> float:
    if getattr(args, "critical", False):
        return TWO_PI
    if args.v0 is None:
        raise DomainError("give --v0 or --critical")
    return args.v0


def cmd_eval(args) -> int:
    V0 = _resolve_v0(args)
    params = classify(V0)
    if args.method == "solver":
        if params.regime is Regime.MULTI_VALUED:
            raise MultiValuedError(
                f"V0 = {V0:g} is in the multi-valued regime (V0 < 2*pi); "
                "V(x) has several branches, see the 'branch' command"
            )
        V = invert_V(args.x, V0)
    elif args.method == "series":
        if params.regime is Regime.MULTI_VALUED:
            raise MultiValuedError(
                f"V0 = {V0:g} is in the multi-valued regime (V0 < 2*pi); "
                "the series follows only the branch through (0, V0), use the library API"
            )
        if params.regime is Regime.CRITICAL:
            V = eval_case2(args.x, args.order)
        else:
            V = eval_case1(args.x, V0, args.order)
    else:
        V = asym_V(args.x)
    print(f"{V:.15g}")
    return EXIT_OK


def cmd_coeffs(args) -> int:
    coeffs = case1_coefficients(args.count) if args.case == 1 else case2_coefficients(args.count)
    if args.format == "json":
        print(coefficients_to_json(coeffs))
    else:
        print("\n".join(format_coefficients(coeffs)))
    return EXIT_OK


def cmd_critical(args) -> int:
    if args.v0 is not None:
        crit = theta0_of_V0(args.v0)
        theta0, V0 = crit.theta0, args.v0
    else:
        theta0 = args.theta0
        V0 = v0_of_theta0(theta0)
    print(f"theta0 = {theta0!r}")
    print(f"V0 = {V0!r}")
    print(f"V_branch = {V0 / math.cos(theta0) ** 2!r}")
    return EXIT_OK


def _write_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", newline="\n") as fh:
        fh.write(text)


def cmd_branch(args) -> int:
    V0 = _resolve_v0(args)
    classify(V0)
    delta = 1e-6
    lo, hi = -math.pi / 2 + delta, math.pi / 2 - delta
    data = figures.FigureData(["theta", "x", "V"])
    n = args.samples
    for i in range(n):
        th = lo + (hi - lo) * i / (n - 1)
        if 2 * i == n - 1:
            th = 0.0
        p = theta_to_xV(th, V0)
        data.rows.append((p.theta, p.x, p.V))
    _write_text(figures.to_csv(data), args.out)
    return EXIT_OK


def _window(lo, hi, name: str, symmetric: bool):
    if hi is None:
        if lo is not None:
            raise DomainError(f"--{name}-min needs --{name}-max")
        return None
    if lo is None:
        if not symmetric:
            raise DomainError(f"--{name}-max needs --{name}-min for this figure")
        lo = -hi
    return (lo, hi)


def cmd_figure(args) -> int:
    overrides = {
        "v0": TWO_PI if args.critical else args.v0,
        "v0_list": args.v0_list,
        "samples": args.samples,
        "order": args.order,
        "x_range": _window(args.x_min, args.x_max, "x", args.id in (3, 4, 5)),
        "theta_range": _window(args.theta_min, args.theta_max, "theta", args.id == 2),
    }
    spec = figures.default_spec(args.id, **overrides)
    data = figures.build(spec)
    text = figures.to_json(data) if args.format == "json" else figures.to_csv(data)
    out = args.out
    if out is None:
        base = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
        out = str(base / f"fig{args.id}.{args.format}")
    _write_text(text, out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .golden import check_case1, check_case2, discrepancy_evidence

    failures = 0

    def line(ok: bool, label: str) -> None:
        nonlocal failures
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {label}")

    r1 = check_case1(10)
    line(r1.ok, f"case I table: {len(r1.matches)}/10 match, compose-back ok={r1.compose_back_ok}")
    r2 = check_case2(10)
    note = f", documented discrepancies {r2.documented}" if r2.documented else ""
    line(r2.ok, f"case II table: {len(r2.matches)}/10 match{note}, compose-back ok={r2.compose_back_ok}")
    if r2.documented:
        ev = discrepancy_evidence()
        line(all(e < p for _, e, p in ev), "exact case II values beat printed ones against the solver")
    worst = 0.0
    for x in (0.0, 0.1, 1.0, 10.0, 100.0):
        for V0 in (TWO_PI, 7.1, 10.0):
            worst = max(worst, abs(forward_x(invert_V(x, V0), V0) - x))
    line(worst <= 1e-10, f"round trip forward_x(invert_V(x)) worst residual {worst:.3g}")
    return EXIT_OK if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wusprung", description="Analysis tools for the Wu-Sprung potential."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate V at a point")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--v0", type=float)
    g.add_argument("--critical", action="store_true", help="use V0 = 2*pi exactly")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=("solver", "series", "asym"), default="solver")
    p.add_argument("--order", type=_positive_int, default=10)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("coeffs", help="print exact expansion coefficients")
    p.add_argument("--case", type=int, choices=(1, 2), required=True)
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("critical", help="nontrivial x = 0 angle and amplitude")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--v0", type=float)
    g.add_argument("--theta0", type=float)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("branch", help="parametric sweep theta,x,V as CSV")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--v0", type=float)
    g.add_argument("--critical", action="store_true")
    p.add_argument("--samples", type=int, default=2001)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("figure", help="write the data behind one of the six figures")
    p.add_argument("--id", type=int, choices=range(1, 7), required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--v0", type=float, default=None)
    p.add_argument("--critical", action="store_true")
    p.add_argument("--v0-list", type=_float_list, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--order", type=_positive_int, default=None)
    p.add_argument("--x-min", type=float, default=None)
    p.add_argument("--x-max", type=float, default=None)
    p.add_argument("--theta-min", type=float, default=None)
    p.add_argument("--theta-max", type=float, default=None)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("selftest", help="golden tables and round-trip checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", None) is not None and args.samples < 2:
        parser.error("--samples must be >= 2")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
