"""Command line surface: evaluate, emit constants, tabulate, verify.

Exit codes: 0 success (or verdict verified), 1 usage error, 2 domain or
evaluation error, 3 violation found by the verifier. argparse normally
exits 2 on bad flags; that is remapped to 1 to keep 2 for domain errors.

Numbers are rendered with 17 significant digits in machine formats
(json, csv) and 10 in human-readable text. Infinite constants render as
the token "inf" (a JSON string). PQTRIG_DEFAULT_TOL overrides the default
evaluation tolerance of 1e-12; --tol always wins over the environment.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

import numpy as np

from . import core
from . import verify as verify_mod
from .errors import PQTrigError

_FNS = ("arcsin", "arccos", "arcsinh", "sin", "cos", "sinh")


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(v: float, sig: int) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    return format(float(v), f".{sig}g")


def _jnum(v) -> str:
    if isinstance(v, int):
        return str(v)
    v = float(v)
    if math.isinf(v) or math.isnan(v):
        return json.dumps(_fmt(v, 17))
    return format(v, ".17g")


def _eval_tol(args) -> float:
    tol = args.tol
    if tol is None:
        env = os.environ.get("PQTRIG_DEFAULT_TOL")
        if env is not None:
            try:
                tol = float(env)
            except ValueError:
                raise _Usage(f"PQTRIG_DEFAULT_TOL={env!r} is not a number")
        else:
            tol = 1e-12
    if not (math.isfinite(tol) and tol > 0.0):
        raise _Usage("--tol must be a positive finite number")
    return tol


def _require_q(args) -> float:
    if args.q is None:
        raise _Usage("--q is required")
    return args.q


def _cmd_eval(args) -> int:
    fmt = args.format or "text"
    if fmt == "csv":
        raise _Usage("eval supports --format text or json")
    tol = _eval_tol(args)
    params = core.validate(args.p, _require_q(args))
    fn = {
        "arcsin": core.arcsin_pq,
        "arccos": core.arccos_pq,
        "arcsinh": core.arcsinh_pq,
        "sin": core.sin_pq,
        "cos": core.cos_pq,
        "sinh": core.sinh_pq,
    }[args.fn]
    res = fn(params, args.x, tol)
    if fmt == "json":
        print("{" + ", ".join([
            f'"fn": {json.dumps(args.fn)}',
            f'"p": {_jnum(params.p)}',
            f'"q": {_jnum(params.q)}',
            f'"x": {_jnum(args.x)}',
            f'"value": {_jnum(res.value)}',
            f'"abs_err_est": {_jnum(res.abs_err_est)}',
        ]) + "}")
    else:
        print(f"value: {_fmt(res.value, 10)}")
        print(f"abs_err_est: {_fmt(res.abs_err_est, 10)}")
    return 0


def _cmd_const(args) -> int:
    fmt = args.format or "text"
    if fmt == "csv":
        raise _Usage("const supports --format text or json")
    tol = _eval_tol(args)
    params = core.validate(args.p, _require_q(args))
    consts = core.constants(params, tol)
    value = consts.pi_pq if args.name == "pi" else consts.m_star
    if fmt == "json":
        print("{" + ", ".join([
            f'"name": {json.dumps(args.name)}',
            f'"p": {_jnum(params.p)}',
            f'"q": {_jnum(params.q)}',
            f'"value": {_jnum(value)}',
        ]) + "}")
    else:
        print(_fmt(value, 10))
    return 0


def _cmd_table(args) -> int:
    fmt = args.format or "csv"
    if fmt == "text":
        raise _Usage("table supports --format csv or json")
    if args.steps < 2:
        raise _Usage("--steps must be >= 2")
    if not (args.from_ < args.to):
        raise _Usage("--from must be less than --to")
    tol = _eval_tol(args)
    params = core.validate(args.p, _require_q(args))
    xs = np.linspace(args.from_, args.to, args.steps)
    many = {
        "arcsin": core.arcsin_pq_many,
        "arcsinh": core.arcsinh_pq_many,
        "sin": core.sin_pq_many,
        "sinh": core.sinh_pq_many,
    }
    if args.fn in many:
        vals, errs = many[args.fn](params, xs, tol)
    else:
        scalar = {"cos": core.cos_pq, "arccos": core.arccos_pq}[args.fn]
        results = [scalar(params, float(x), tol) for x in xs]
        vals = [r.value for r in results]
        errs = [r.abs_err_est for r in results]
    if fmt == "csv":
        print("x,value,abs_err_est")
        for x, v, e in zip(xs, vals, errs):
            print(f"{_jnum(x)},{_jnum(v)},{_jnum(e)}")
    else:
        rows = ", ".join(
            f'{{"x": {_jnum(x)}, "value": {_jnum(v)}, "abs_err_est": {_jnum(e)}}}'
            for x, v, e in zip(xs, vals, errs))
        print("{" + ", ".join([
            f'"fn": {json.dumps(args.fn)}',
            f'"p": {_jnum(params.p)}',
            f'"q": {_jnum(params.q)}',
            f'"rows": [{rows}]',
        ]) + "}")
    return 0


def _emit_report(rep, fmt: str) -> None:
    lo, hi = rep.sampling_interval
    if fmt == "json":
        rows = ", ".join(
            "[" + ", ".join(_jnum(v) for v in row) + "]"
            for row in rep.violations)
        print("{" + ", ".join([
            f'"target": {json.dumps(rep.target)}',
            f'"p": {_jnum(rep.p)}',
            f'"q": {_jnum(rep.q)}',
            f'"samples": {rep.samples}',
            f'"seed": {rep.seed}',
            f'"tol": {_jnum(rep.tol)}',
            f'"sampling_interval": [{_jnum(lo)}, {_jnum(hi)}]',
            f'"min_margin": {_jnum(rep.min_margin)}',
            f'"violations": [{rows}]',
            f'"verdict": {json.dumps(rep.verdict)}',
        ]) + "}")
    else:
        print(f"target: {rep.target}")
        print(f"p: {_fmt(rep.p, 10)}")
        print(f"q: {_fmt(rep.q, 10)}")
        print(f"samples: {rep.samples}")
        print(f"seed: {rep.seed}")
        print(f"tol: {_fmt(rep.tol, 10)}")
        print(f"sampling_interval: [{_fmt(lo, 10)}, {_fmt(hi, 10)}]")
        print(f"min_margin: {_fmt(rep.min_margin, 10)}")
        print(f"violations: {len(rep.violations)}")
        for r, s, lam, lhs, rhs, margin in rep.violations:
            print(f"violation: r={_fmt(r, 10)} s={_fmt(s, 10)} "
                  f"lam={_fmt(lam, 10)} lhs={_fmt(lhs, 10)} "
                  f"rhs={_fmt(rhs, 10)} margin={_fmt(margin, 10)}")
        print(f"verdict: {rep.verdict}")


def _cmd_verify(args) -> int:
    fmt = args.format or "text"
    if fmt == "csv":
        raise _Usage("verify supports --format text or json")
    tol = args.tol if args.tol is not None else 1e-9
    if not math.isfinite(tol):
        raise _Usage("--tol must be finite")
    args.tol = None  # evaluation tolerance comes from the environment default
    rel_tol = _eval_tol(args)

    if args.target == "corollary-p":
        if args.q is not None and args.q != args.p:
            print(f"note: corollary-p forces q = p; ignoring --q {args.q!r}",
                  file=sys.stderr)
        params = core.validate(args.p, args.p)
    else:
        params = core.validate(args.p, _require_q(args))

    if (args.r is None) != (args.s is None):
        raise _Usage("--r and --s must be given together")
    if args.lam is not None and args.r is None:
        raise _Usage("--lam requires --r and --s")
    fixed = None
    if args.r is not None:
        fixed = ((args.r, args.s) if args.lam is None
                 else (args.r, args.s, args.lam))
    if args.samples < 1:
        raise _Usage("--samples must be >= 1")

    rep = verify_mod.run_verification(
        args.target, params, samples=args.samples, seed=args.seed,
        tol=tol, rel_tol=rel_tol, fixed=fixed)
    _emit_report(rep, fmt)
    if rep.verdict == "verified":
        return 0
    if rep.verdict == "violated":
        return 3
    print("error: evaluation did not converge; verdict inconclusive",
          file=sys.stderr)
    return 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="pqtrig",
                     description="Generalized trigonometric and hyperbolic "
                                 "functions with certified error estimates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, tol_help):
        sp.add_argument("--p", type=float, required=True,
                        help="first parameter, in (1, inf)")
        sp.add_argument("--q", type=float, default=None,
                        help="second parameter, in (1, inf)")
        sp.add_argument("--tol", type=float, default=None, help=tol_help)

    sp = sub.add_parser("eval", help="evaluate one function at one point")
    common(sp, "relative evaluation tolerance (default 1e-12)")
    sp.add_argument("--fn", choices=_FNS, required=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--format", choices=("text", "json", "csv"), default=None)
    sp.set_defaults(handler=_cmd_eval)

    sp = sub.add_parser("const", help="print pi_pq or m_star")
    common(sp, "relative evaluation tolerance (default 1e-12)")
    sp.add_argument("--name", choices=("pi", "mstar"), required=True)
    sp.add_argument("--format", choices=("text", "json", "csv"), default=None)
    sp.set_defaults(handler=_cmd_const)

    sp = sub.add_parser("table", help="tabulate a function on a uniform grid")
    common(sp, "relative evaluation tolerance (default 1e-12)")
    sp.add_argument("--fn", choices=_FNS, required=True)
    sp.add_argument("--from", dest="from_", type=float, required=True)
    sp.add_argument("--to", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--format", choices=("csv", "json", "text"), default=None)
    sp.set_defaults(handler=_cmd_table)

    sp = sub.add_parser("verify", help="sample-check a concavity/convexity "
                                       "claim and report margins")
    common(sp, "margin tolerance for the verdict (default 1e-9)")
    sp.add_argument("--target", choices=verify_mod.TARGETS, required=True)
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--r", type=float, default=None,
                    help="check one fixed point instead of sampling")
    sp.add_argument("--s", type=float, default=None)
    sp.add_argument("--lam", type=float, default=None,
                    help="weight for the fixed point (gc targets only)")
    sp.add_argument("--format", choices=("text", "json", "csv"), default=None)
    sp.set_defaults(handler=_cmd_verify)
    return parser


def main(argv: Optional[list] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.handler(args)
    except _Usage as exc:
        print(f"pqtrig: error: {exc}", file=sys.stderr)
        return 1
    except PQTrigError as exc:
        print(f"pqtrig: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
