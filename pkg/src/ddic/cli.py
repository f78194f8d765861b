"""Command-line front end.

Exit codes: 0 success, 1 usage / I/O / parse error, 2 a condition or
constraint failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import io
from .capacity import (DEFAULT_BINS, DEFAULT_SEED, ConditionError, ConstraintError,
                       capacity_region, lower_convex_envelope, outer_bound_solve,
                       require_conditions, tau, trace_F)
from .conditions import check_all
from .degradation import InfeasibleError, find_degrading_channel
from .fixtures import (COUNTEREXAMPLES, DadicParams, make_counterexample, make_dadic,
                       make_erasure_example, make_example3)
from .mcsim import GuardError, SimConfig, scheme_input, simulate_point
from .prob import DdicError
from .symmetry import GroupSizeError, cycle_notation, input_symmetry_group, is_transitive

FAILURE = (ConditionError, ConstraintError, InfeasibleError, GuardError, GroupSizeError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _source_args(p):
    p.add_argument("spec", nargs="?", help="channel spec JSON file")
    p.add_argument("--example", type=int, choices=(1, 2, 3), help="built-in example channel")
    p.add_argument("--s", type=int, help="example 1: alphabet size")
    p.add_argument("--p1", type=_floats, help="example 1: distribution of V1")
    p.add_argument("--p2", type=_floats, help="example 1: distribution of V2")
    p.add_argument("--p", type=float, help="example 2: crossover of V1")
    p.add_argument("--alpha", type=float, help="example 2: erasure probability")
    p.add_argument("--abc", type=_floats, help="example 3: a,b,c")
    p.add_argument("--def", dest="def_", type=_floats, help="example 3: d,e,f")
    p.add_argument("--counterexample", choices=COUNTEREXAMPLES)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + ("def" if n == "def_" else n) for n in missing)
        raise UsageError(f"example {args.example} needs {flags}")


def load_channel(args):
    chosen = [args.spec is not None, args.example is not None, args.counterexample is not None]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of a spec file, --example or --counterexample")
    if args.spec is not None:
        return io.load(args.spec)
    if args.counterexample is not None:
        return make_counterexample(args.counterexample)
    if args.example == 1:
        _need(args, "s", "p1", "p2")
        return make_dadic(DadicParams(args.s, tuple(args.p1), tuple(args.p2)))
    if args.example == 2:
        _need(args, "p", "alpha")
        return make_erasure_example(args.p, args.alpha)
    _need(args, "abc", "def_")
    if len(args.abc) != 3 or len(args.def_) != 3:
        raise UsageError("--abc and --def take three values each")
    return make_example3(*args.abc, *args.def_)


def _emit(text: str, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    d = load_channel(args)
    report = check_all(d, args.resolution)
    print(json.dumps(report.to_dict(), indent=2))
    return 0 if report.all_passed else 2


def cmd_group(args) -> int:
    d = load_channel(args)
    g = input_symmetry_group(d.t_prime)
    print(f"# input symmetry group of T': order {len(g)}, "
          f"{'transitive' if is_transitive(g) else 'not transitive'}")
    for m in g:
        print(cycle_notation(m))
    return 0


def cmd_degrade(args) -> int:
    if args.fam1 or args.fam2:
        if not (args.fam1 and args.fam2):
            raise UsageError("--fam1 and --fam2 go together")
        fam1, fam2 = io.load_family(args.fam1), io.load_family(args.fam2)
    else:
        d = load_channel(args)
        fam1, fam2 = d.t_family, d.y2_family
    res = find_degrading_channel(fam1, fam2)
    print(json.dumps({
        "feasible": res.feasible,
        "status": res.status,
        "residual": res.residual,
        "t_prime": None if res.t_prime is None else res.t_prime.tolist(),
    }, indent=2))
    return 0 if res.feasible else 2


def _region_comments(d, reg):
    return ["entropies in bits (log base 2)",
            f"eta={io.fmt(reg.eta, 17)}",
            f"tau={io.fmt(reg.tau, 17)}",
            f"x2_tilde={reg.grid['x2_tilde']}",
            f"simplex_res={reg.grid['simplex_res']}",
            f"bins={reg.grid['bins']}",
            f"grid_points={reg.grid['grid_points']}",
            f"seed={reg.grid['seed']}"]


def cmd_region(args) -> int:
    d = load_channel(args)
    reg = capacity_region(d, args.simplex_res, args.bins, args.grid_points, args.seed)
    rows = zip(reg.c, reg.R1, reg.R2, reg.F, reg.envF)
    _emit(io.csv_table(["c", "R1", "R2", "F", "envF"], rows, args.decimals,
                       _region_comments(d, reg)), args.out)
    return 0


def cmd_outer(args) -> int:
    d = load_channel(args)
    report = require_conditions(d)
    tr = trace_F(d, report.x2_tilde, args.simplex_res, args.bins)
    env = lower_convex_envelope(tr)
    tau_ = tau(d.t_prime, seed=args.seed)
    cs = np.linspace(report.eta, math.log2(d.y1_size), args.grid)
    rows = []
    for c in cs:
        sol = outer_bound_solve(d, c, args.restarts, args.seed, tr, report.x2_tilde)
        ub = tau_ - float(env(c))
        rows.append((c, sol.mutual_info, ub, tau_ - float(tr(c)), ub - sol.mutual_info))
    comments = ["entropies in bits (log base 2)",
                f"eta={io.fmt(report.eta, 17)}", f"tau={io.fmt(tau_, 17)}",
                f"simplex_res={tr.simplex_res}", f"bins={tr.bins}",
                f"restarts={args.restarts}", f"seed={args.seed}",
                "slack = (tau - envF) - T_hat; negative beyond -3e-3 contradicts the region"]
    _emit(io.csv_table(["c", "T_hat", "tau_minus_envF", "tau_minus_F", "slack"], rows,
                       args.decimals, comments), args.out)
    return 0


def cmd_sim(args) -> int:
    d = load_channel(args)
    report = require_conditions(d)
    tr = trace_F(d, report.x2_tilde, args.simplex_res, args.bins)
    if args.c is not None:
        if args.r1 is not None or args.r2 is not None:
            raise UsageError("--c excludes --r1/--r2")
        c = args.c
        env = lower_convex_envelope(tr)
        r1 = args.scale * (c - report.eta)
        r2 = args.scale * (tau(d.t_prime, seed=args.seed) - float(env(c)))
    else:
        if args.r1 is None or args.r2 is None:
            raise UsageError("give --c or both --r1 and --r2")
        r1, r2 = args.r1, args.r2
        c = min(max(r1 + report.eta, tr.c_min), tr.c_max)
    px1 = args.px1 if args.px1 is not None else scheme_input(d, c, tr)
    rows = []
    for n in args.n:
        res = simulate_point(d, SimConfig(n, r1, r2, args.trials, args.seed, tuple(px1)))
        rows.append((n, r1, r2, res.m1, res.m2, res.err1, res.err2, *res.ci95))
    comments = [f"seed={args.seed}", f"trials={args.trials}",
                "px1=" + ",".join(io.fmt(v, args.decimals) for v in px1)]
    _emit(io.csv_table(["n", "R1", "R2", "M1", "M2", "err1", "err2", "ci1", "ci2"], rows,
                       args.decimals, comments), args.out)
    return 0


def cmd_dump(args) -> int:
    _emit(io.dumps(load_channel(args)) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ddic", description="Capacity regions of discrete degraded "
                     "interference channels.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="verify conditions 1-5, JSON report")
    _source_args(p)
    p.add_argument("--resolution", type=int, help="coverage grid resolution for condition 5")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("group", help="input symmetry group of T'")
    _source_args(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("degrade", help="find p'(y2|y1) between two channel families")
    _source_args(p)
    p.add_argument("--fam1", help="JSON file with family 'T' [x2][y1][x1]")
    p.add_argument("--fam2", help="JSON file with family 'T' [x2][y2][x1]")
    p.set_defaults(func=cmd_degrade)

    for name, func, helptext in (("region", cmd_region, "capacity region boundary CSV"),
                                 ("outer", cmd_outer, "outer bound T(c) against tau - envF(c)"),
                                 ("sim", cmd_sim, "Monte-Carlo block error rates")):
        p = sub.add_parser(name, help=helptext)
        _source_args(p)
        p.add_argument("--simplex-res", type=int, default=None)
        p.add_argument("--bins", type=int, default=DEFAULT_BINS)
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
        p.add_argument("--decimals", type=int, default=12)
        p.add_argument("--out", help="write CSV here instead of stdout")
        p.set_defaults(func=func)
        if name == "region":
            p.add_argument("--grid-points", type=int, default=101)
        elif name == "outer":
            p.add_argument("--grid", type=int, default=21)
            p.add_argument("--restarts", type=int, default=8)
        else:
            p.add_argument("--c", type=float, help="boundary point H(Y1|X2) to aim at")
            p.add_argument("--scale", type=float, default=0.85)
            p.add_argument("--r1", type=float)
            p.add_argument("--r2", type=float)
            p.add_argument("--px1", type=_floats)
            p.add_argument("--n", type=int, nargs="+", default=[4, 8, 12])
            p.add_argument("--trials", type=int, default=20000)

    p = sub.add_parser("dump", help="write a channel as a spec JSON file")
    _source_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FAILURE as exc:
        print(f"ddic: {exc}", file=sys.stderr)
        return 2
    except (UsageError, DdicError, OSError, ValueError) as exc:
        print(f"ddic: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
