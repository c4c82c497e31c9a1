"""Command-line front end: solve instances, evaluate envelopes, run checks.

Subcommands
-----------
``solve PATH``
    Build the instance's envelope, run its configured solver, write the
    iteration trace as CSV (``--trace-out`` file, stdout otherwise), print
    the terminal point and extracted solution.  Exit 0 on convergence,
    2 when the iteration budget runs out, 1 on validation errors.
``eval PATH --point 1.0,2.0``
    Print envelope value, gradient, fixed-point residual, and the extreme
    curvature eigenvalues at the given point.
``verify [--seed S] [--trials T] [--only NAME]``
    Run the randomized certification checks, one JSON report per line.
    Exit 0 only if every check passes.

All floating output uses 15 significant digits so that traces and reports
are reproducible across platforms.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .envelopes import build
from .errors import (
    DimensionMismatchError,
    EnvkitError,
    InstanceFormatError,
    ParameterError,
)
from .instances import Instance, load_instance, normalize_instance
from .solvers import (
    Trace,
    averaged_iteration,
    gradient_descent,
    scaled_gradient_iteration,
)
from .verify import run_checks, select_check_names

__all__ = ["main"]

_SOLVERS = {
    "averaged": averaged_iteration,
    "scaled_gradient": scaled_gradient_iteration,
    "gradient_descent": gradient_descent,
}


def _fmt(x: float) -> str:
    return format(float(x), ".15g")


def _fmt_vec(v: np.ndarray) -> str:
    return ",".join(_fmt(x) for x in np.atleast_1d(v))


def _fail(exc: Exception) -> int:
    if isinstance(exc, InstanceFormatError):
        label = "parse error"
    elif isinstance(exc, DimensionMismatchError):
        label = "dimension mismatch"
    elif isinstance(exc, ParameterError):
        label = "parameter out of range"
    else:
        label = "error"
    print(f"{label}: {exc}", file=sys.stderr)
    return 1


def _write_trace(trace: Trace, path: str | None, out) -> None:
    lines = ["k,F,grad_norm,fp_residual\n"]
    lines += [
        f"{k},{_fmt(v)},{_fmt(g)},{_fmt(r)}\n" for k, v, g, r in trace.rows()
    ]
    if path is None:
        out.write("".join(lines))
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(lines))


def _cmd_solve(args) -> int:
    try:
        inst = load_instance(args.path)
        if args.dump_normalized:
            print(json.dumps(normalize_instance(inst), sort_keys=True))
            return 0
        env = build(inst.spec)
        x, trace = _SOLVERS[inst.method](env, inst.x0, inst.config)
    except EnvkitError as exc:
        return _fail(exc)
    _write_trace(trace, args.trace_out, sys.stdout)
    prefix = "" if args.trace_out else "# "
    solution = env.extract_solution(x)
    print(f"{prefix}status = {trace.status}")
    print(f"{prefix}iterations = {trace.k[-1]}")
    print(f"{prefix}terminal = {_fmt_vec(x)}")
    print(f"{prefix}solution = {_fmt_vec(solution)}")
    print(f"{prefix}F = {_fmt(trace.value[-1])}")
    print(f"{prefix}grad_norm = {_fmt(trace.grad_norm[-1])}")
    print(f"{prefix}fp_residual = {_fmt(trace.fp_residual[-1])}")
    return 0 if trace.status == "converged" else 2


def _cmd_eval(args) -> int:
    try:
        inst = load_instance(args.path)
        if args.dump_normalized:
            print(json.dumps(normalize_instance(inst), sort_keys=True))
            return 0
        env = build(inst.spec)
        try:
            point = np.array([float(tok) for tok in args.point.split(",")])
        except ValueError as exc:
            raise InstanceFormatError(f"cannot parse --point: {exc}") from exc
        if point.size != env.dim:
            raise DimensionMismatchError(
                f"--point has length {point.size}, instance dimension is {env.dim}"
            )
        value = env.value(point)
        grad = env.gradient(point)
        residual = env.fixed_point_residual(point)
        bp = env.bounds
    except EnvkitError as exc:
        return _fail(exc)
    print(f"F = {_fmt(value)}")
    print(f"grad = {_fmt_vec(grad)}")
    print(f"fp_residual = {_fmt(residual)}")
    print(f"beta_l = {_fmt(bp.beta_l)}")
    print(f"beta_u = {_fmt(bp.beta_u)}")
    return 0


def _cmd_verify(args) -> int:
    try:
        if args.trials < 1:
            raise ParameterError(f"--trials must be >= 1, got {args.trials}")
        select_check_names(args.only)
    except EnvkitError as exc:
        return _fail(exc)
    reports = run_checks(seed=args.seed, trials=args.trials, only=args.only)
    for report in reports:
        print(report.to_json())
    return 0 if all(r.passed for r in reports) else 2


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="envkit",
        description="Envelope functions for operator splitting: solve, evaluate, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run the instance's configured solver")
    p_solve.add_argument("path", help="instance JSON file")
    p_solve.add_argument("--trace-out", default=None, metavar="PATH",
                         help="write the CSV trace here instead of stdout")
    p_solve.add_argument("--dump-normalized", action="store_true",
                         help="print the normalized instance JSON and exit")
    p_solve.set_defaults(func=_cmd_solve)

    p_eval = sub.add_parser("eval", help="evaluate the envelope at a point")
    p_eval.add_argument("path", help="instance JSON file")
    p_eval.add_argument("--point", required=False, default=None,
                        help="comma-separated coordinates")
    p_eval.add_argument("--dump-normalized", action="store_true",
                        help="print the normalized instance JSON and exit")
    p_eval.set_defaults(func=_cmd_eval)

    p_verify = sub.add_parser("verify", help="run the certification checks")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=50)
    p_verify.add_argument("--only", default=None, metavar="NAME",
                          help="run only checks whose name contains NAME")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "eval" and not args.dump_normalized and args.point is None:
        print("parse error: eval requires --point", file=sys.stderr)
        return 1
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
