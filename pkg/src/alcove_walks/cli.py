"""Command-line front end: ``alcove-walks {count,verify,ruin}``.

Exit codes: 0 success, 2 usage or input error, 3 methods disagree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import closed_forms, grid, oracle
from .closed_forms import gambler_first_passage, gambler_position
from .errors import PreconditionError, ResourceError, WalkError
from .reflection import count_alcove, count_circle, count_hyperplane
from .weyl_core import ChamberSpec, Family, LatticePoint, StepKind, StepSet, parse_scale

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DISAGREE = 3

FAMILIES = [f.value for f in (Family.AFFINE_C, Family.AFFINE_B, Family.AFFINE_D, Family.AFFINE_A)] + [
    grid.CIRCLE,
    Family.FINITE_A.value,
    grid.HYPERPLANE,
]
STEPS = {"coord": StepKind.COORDINATE, "diag": StepKind.DIAGONAL, "forward": StepKind.FORWARD}
METHODS = ("reflection", "dp", "closed")
UNAVAILABLE = "unavailable"


def _point(text: str) -> LatticePoint:
    try:
        return LatticePoint.of(Fraction(v.strip()) for v in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _scale(text: str) -> Fraction:
    try:
        return parse_scale(text)
    except (PreconditionError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fmt(x: Fraction) -> str:
    return str(x)


def _run_method(method: str, args, steps: StepSet):
    family, n, m, eta, lam, k = args.family, args.n, args.m, args.eta, args.lam, args.k
    if family == grid.CIRCLE:
        mi = int(m)
        if method == "reflection":
            return count_circle(m, n, steps, eta, lam, k)
        if method == "dp":
            return oracle.circle_dp_count(mi, n, steps, eta, lam, k)
        return closed_forms.closed_form_circle_count(mi, n, steps, eta, lam, k)
    if family == grid.HYPERPLANE:
        if m.denominator != 1:
            raise PreconditionError("the projected A~ model needs an integer m")
        mi = int(m)
        if method == "reflection":
            return count_hyperplane(mi, n, steps, eta, lam, k)
        if method == "dp":
            return oracle.hyperplane_dp_count(mi, n, steps, eta, lam, k)
        return closed_forms.closed_form_hyperplane_count(mi, n, steps, eta, lam, k)
    chamber = ChamberSpec(Family(family), n, m)
    if method == "reflection":
        return count_alcove(chamber, steps, eta, lam, k)
    if method == "dp":
        return oracle.dp_count(chamber, steps, eta, lam, k)
    return closed_forms.closed_form_count(chamber, steps, eta, lam, k)


def cmd_count(args) -> int:
    if args.family != Family.FINITE_A.value and args.m is None:
        raise PreconditionError(f"--m is required for {args.family}")
    for name in ("eta", "lam"):
        if getattr(args, name).n != args.n:
            raise PreconditionError(f"--{'lambda' if name == 'lam' else name} must have {args.n} entries")
    if args.k < 0:
        raise PreconditionError("--k must be nonnegative")
    steps = StepSet(STEPS[args.steps], args.n, include_zero_step=args.zero_step)
    methods = METHODS if args.method == "all" else (args.method,)
    results: dict[str, str] = {}
    values = []
    for method in methods:
        try:
            value = _run_method(method, args, steps)
        except ResourceError:
            value = None
        if value is None:
            results[method] = UNAVAILABLE
        else:
            results[method] = str(value)
            values.append(value)
    doc = {
        "family": args.family,
        "n": args.n,
        "m": None if args.m is None or args.family == Family.FINITE_A.value else _fmt(args.m),
        "steps": args.steps,
        "eta": [_fmt(c) for c in args.eta.coords],
        "lambda": [_fmt(c) for c in args.lam.coords],
        "k": args.k,
        "results": results,
        "agree": len(set(values)) <= 1 and bool(values),
    }
    if args.zero_step:
        doc["zero_step"] = True
    print(json.dumps(doc, indent=2))
    return EXIT_OK if doc["agree"] or args.method != "all" else EXIT_DISAGREE


def cmd_verify(args) -> int:
    if args.grid is None:
        spec = grid.DEFAULT_GRID
    else:
        try:
            spec = grid.load_grid(args.grid)
        except OSError as exc:
            print(f"error: cannot read grid file: {exc}", file=sys.stderr)
            return EXIT_USAGE
    outcomes = grid.run_grid(spec, jobs=args.jobs)
    failures = 0
    for out in outcomes:
        if not out.passed:
            failures += 1
        if not args.failures_only or not out.passed:
            print(out.line())
    print(f"{len(outcomes)} instances, {failures} failed")
    return EXIT_DISAGREE if failures else EXIT_OK


def _ruin_tables(N: int, eta: int, kmax: int):
    passage = [(k, gambler_first_passage(N, eta, k)) for k in range(1, kmax + 1)]
    survival = [(lam, gambler_position(N, eta, lam, kmax)) for lam in range(1, N)]
    return passage, survival


def cmd_ruin(args) -> int:
    if not 0 < args.eta < args.N:
        raise PreconditionError("need 0 < eta < N")
    if args.kmax < 1:
        raise PreconditionError("--kmax must be at least 1")
    passage, survival = _ruin_tables(args.N, args.eta, args.kmax)
    # the formulas leave ~1e-17 noise where the true value is 0
    clean = lambda p: 0.0 if abs(p) < 1e-14 else p  # noqa: E731
    if args.format == "json":
        doc = {
            "N": args.N,
            "eta": args.eta,
            "kmax": args.kmax,
            "first_passage": [{"k": k, "probability": clean(p)} for k, p in passage],
            "survival": [{"lambda": lam, "probability": clean(p)} for lam, p in survival],
        }
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "probability"])
    writer.writerows((k, f"{clean(p):.12g}") for k, p in passage)
    buf.write("\n")
    writer.writerow(["lambda", "probability"])
    writer.writerows((lam, f"{clean(p):.12g}") for lam, p in survival)
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alcove-walks", description="Exact counts of lattice walks in alcoves.")
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="count walks for one query")
    count.add_argument("--family", required=True, choices=FAMILIES)
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--m", type=_scale, help="scale; an integer or half-integer such as 5/2")
    count.add_argument("--steps", required=True, choices=list(STEPS))
    count.add_argument("--eta", type=_point, required=True, help="start, comma-separated")
    count.add_argument("--lambda", dest="lam", type=_point, required=True, help="end, comma-separated")
    count.add_argument("--k", type=int, required=True)
    count.add_argument("--method", choices=METHODS + ("all",), default="all")
    count.add_argument("--zero-step", action="store_true", help="also allow standing still")
    count.set_defaults(func=cmd_count)

    verify = sub.add_parser("verify", help="cross-check all methods over a grid")
    verify.add_argument("grid", nargs="?", help="grid file (default: the built-in desk-scale grid)")
    verify.add_argument("--failures-only", action="store_true")
    verify.add_argument("--jobs", type=int, default=1, help="worker processes")
    verify.set_defaults(func=cmd_verify)

    ruin = sub.add_parser("ruin", help="gambler's ruin first-passage and survival tables")
    ruin.add_argument("--N", type=int, required=True, help="total stake")
    ruin.add_argument("--eta", type=int, required=True, help="initial stake")
    ruin.add_argument("--kmax", type=int, required=True)
    ruin.add_argument("--format", choices=("csv", "json"), default="csv")
    ruin.set_defaults(func=cmd_ruin)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
