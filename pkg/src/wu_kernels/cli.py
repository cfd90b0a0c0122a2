"""Command-line interface: ``wu-kernels <verb> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or constraint error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .forms import RepresentationError, eval_form, rescale, render, render_factored
from .fourier import fourier_wu, hankel_numeric
from .interp import run_experiment, write_csv, write_json
from .special import DomainError, PROFILES, get_profile
from .verify import SUITES, run_suite
from .wu import ConstraintError, _check_lk, wu_from_wendland, wu_ops

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _num(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _add_lk(p: argparse.ArgumentParser):
    p.add_argument("ell_pos", nargs="?", type=_num, metavar="ell")
    p.add_argument("k_pos", nargs="?", type=_num, metavar="k")
    p.add_argument("--ell", type=_num)
    p.add_argument("--k", type=_num)


def _lk(args) -> tuple[Fraction, Fraction]:
    ell = args.ell if args.ell is not None else args.ell_pos
    k = args.k if args.k is not None else args.k_pos
    if ell is None or k is None:
        raise UsageError("both ell and k are required")
    return ell, k


def _write_plot(path, rs, vals):
    try:
        with open(path, "w") as fh:
            fh.write("r,value\n")
            for r, v in zip(rs, vals):
                fh.write(f"{_fmt(r)},{_fmt(v)}\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def _r_values(args) -> list[float]:
    if not args.r:
        raise UsageError("--r is required")
    return [float(x) for x in args.r]


def cmd_show(args) -> int:
    ell, k = _lk(args)
    cf = wu_ops(ell, k)
    if args.scaled:
        cf = rescale(cf, 2)
    if args.latex:
        print(render(cf).latex)
    elif args.scaled:
        print(render_factored(cf))
    else:
        print(render(cf).text)
    if args.json:
        write_json(args.json, {"ell": str(ell), "k": str(k), "scaled": args.scaled, "text": render(cf).text,
                               "latex": render(cf).latex, "factored": render_factored(cf)})
    return EXIT_OK


def cmd_eval(args) -> int:
    ell, k = _lk(args)
    cf = wu_ops(ell, k)
    if args.scaled:
        cf = rescale(cf, 2)
    rs = _r_values(args)
    vals = np.atleast_1d(eval_form(cf, np.array(rs), args.profile))
    for r, v in zip(rs, vals):
        print(_fmt(v) if len(rs) == 1 else f"{_fmt(r)}\t{_fmt(v)}")
    if args.csv:
        _write_plot(args.csv, rs, vals)
    return EXIT_OK


def cmd_fourier(args) -> int:
    ell, k = _lk(args)
    _check_lk(ell, k)
    rs = _r_values(args)
    dim = args.dim if args.dim is not None else 2 * k + 1
    if args.numeric or dim != 2 * k + 1:
        vals = np.atleast_1d(hankel_numeric(wu_ops(ell, k), float(dim), np.array(rs), args.profile))
    else:
        vals = np.atleast_1d(fourier_wu(ell, k, np.array(rs)))
    for r, v in zip(rs, vals):
        print(_fmt(v) if len(rs) == 1 else f"{_fmt(r)}\t{_fmt(v)}")
    if args.csv:
        _write_plot(args.csv, rs, vals)
    return EXIT_OK


def cmd_zeros(args) -> int:
    from .special import bessel_zero

    if args.count < 1:
        raise UsageError("--count must be positive")
    zs = [bessel_zero(args.nu, m) for m in range(1, args.count + 1)]
    print(", ".join(_fmt(z) for z in zs))
    if args.json:
        write_json(args.json, {"nu": args.nu, "zeros": zs})
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.profile)
    width = max(len(r.case) for r in results)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        exp = _fmt(r.expected) if isinstance(r.expected, float) else str(r.expected)
        got = _fmt(r.computed) if isinstance(r.computed, float) else str(r.computed)
        print(f"{mark}  {r.case:<{width}}  expected: {exp}  computed: {got}")
        if r.note:
            print(f"      note: {r.note}")
    passed = sum(r.passed for r in results)
    print(f"{args.suite}: {passed}/{len(results)} passed")
    rows = [r.as_dict() for r in results]
    if args.json:
        write_json(args.json, {"suite": args.suite, "passed": passed, "total": len(results), "cases": rows})
    if args.csv:
        write_csv(args.csv, [{**row, "expected": str(row["expected"]), "computed": str(row["computed"])} for row in rows])
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def cmd_interp(args) -> int:
    ell, k = _lk(args)
    config = {
        "kernel": {"family": args.family, "ell": ell, "k": k, "scale": args.scale, "dimension": args.dim or 1},
        "n": args.n,
        "generator": args.generator,
        "seed": args.seed,
        "target": args.target,
        "json": args.json,
        "csv": args.csv,
    }
    report = run_experiment(config)
    d = report.as_dict()
    for key in ("n", "spd_ok", "min_pivot", "condition_estimate", "rmse_train", "rmse_test"):
        v = d[key]
        print(f"{key}: {_fmt(v) if isinstance(v, float) else v}")
    return EXIT_OK if report.spd_ok else EXIT_FAIL


def cmd_compare_wendland(args) -> int:
    ell, k = _lk(args)
    via_wendland = wu_from_wendland(ell, k)
    via_ops = rescale(wu_ops(ell, k), 2)
    same = via_wendland == via_ops
    print(f"wendland sum : {render_factored(via_wendland)}")
    print(f"operators    : {render_factored(via_ops)}")
    print("equal" if same else "DIFFER")
    return EXIT_OK if same else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--profile", choices=sorted(PROFILES), default=None)
    common.add_argument("--json", metavar="PATH")
    common.add_argument("--csv", metavar="PATH")

    parser = argparse.ArgumentParser(prog="wu-kernels", description="Generalized Wu kernels: construction and checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", metavar="verb")
    sub.required = True

    p = sub.add_parser("show", parents=[common], help="print the exact form of phi_{ell,k}")
    _add_lk(p)
    p.add_argument("--scaled", action="store_true", help="rescale support to [0, 1]")
    p.add_argument("--latex", action="store_true")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("eval", parents=[common], help="evaluate phi_{ell,k} at --r")
    _add_lk(p)
    p.add_argument("--r", nargs="+", type=float)
    p.add_argument("--scaled", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("fourier", parents=[common], help="radial Fourier transform at --r")
    _add_lk(p)
    p.add_argument("--r", nargs="+", type=float)
    p.add_argument("--dim", type=_num, help="dimension (default 2k+1)")
    p.add_argument("--numeric", action="store_true", help="use Hankel quadrature instead of the closed formula")
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zeros", parents=[common], help="positive zeros of J_nu")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--count", type=int, default=6)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("interp", parents=[common], help="run an interpolation experiment")
    _add_lk(p)
    p.add_argument("--dim", type=int)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--family", choices=["wu", "wendland"], default="wu")
    p.add_argument("--scale", type=_num, default=Fraction(1))
    p.add_argument("--generator", choices=["halton", "grid"], default="halton")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", default="gaussian")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("compare-wendland", parents=[common], help="check the Wendland expansion of phi_{ell,k}(2r)")
    _add_lk(p)
    p.set_defaults(func=cmd_compare_wendland)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.profile = get_profile(args.profile)
        return args.func(args)
    except (UsageError, ConstraintError, DomainError, RepresentationError, ValueError) as exc:
        parser.exit(EXIT_USAGE, f"wu-kernels {args.verb}: error: {exc}\n")
    except OSError as exc:
        print(f"wu-kernels: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
