"""Command-line interface.

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure.  Heavy
imports happen inside main() so that FRAMEX_THREADS can cap the BLAS thread
pool before the numerical stack loads.
"""

from __future__ import annotations

import argparse
import os
import sys

_THREAD_VARS = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


def _configure_threads() -> None:
    cap = os.environ.get("FRAMEX_THREADS")
    if not cap:
        return
    for var in _THREAD_VARS:
        os.environ.setdefault(var, cap)


def _parse_n_range(text: str) -> list[int]:
    try:
        first, last, step = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B:STEP, got {text!r}")
    if step < 1 or last < first:
        raise argparse.ArgumentTypeError(f"empty degree range {text!r}")
    return list(range(first, last + 1, step))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framex",
        description="Polynomial frame approximation from equispaced samples: "
                    "fits, sweeps, condition numbers, extremal oracles, figure CSVs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_function_args(p):
        p.add_argument("--function", required=True, help="registry name (use 'osc' with --omega)")
        p.add_argument("--omega", type=float, default=None, help="frequency for osc")

    p = sub.add_parser("approximate", help="fit one function and report its errors")
    add_function_args(p)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", type=int, help="explicit sample parameter")
    group.add_argument("--eta", type=float, help="oversampling ratio m = ceil(eta n)")
    group.add_argument("--scaling", choices=["paper"],
                       help="m from the linear-oversampling rule, degree-adjusted threshold")
    p.add_argument("--grid", type=int, default=50000)
    p.add_argument("--noise", type=float, default=0.0, help="uniform sample noise amplitude")
    p.add_argument("--out", default=None, help="write the record as CSV")

    p = sub.add_parser("sweep", help="error/conditioning sweep over a degree range")
    add_function_args(p)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--eta", type=float)
    group.add_argument("--scaling", choices=["paper"])
    p.add_argument("--n-range", type=_parse_n_range, required=True, metavar="A:B:STEP")
    p.add_argument("--grid", type=int, default=50000)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--out", default=None, help="CSV path (stdout when omitted)")

    p = sub.add_parser("condition", help="condition numbers of one configuration")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--grid", type=int, default=50000)

    p = sub.add_parser("extremal", help="extremal-polynomial oracles")
    esub = p.add_subparsers(dest="oracle", required=True)
    pb = esub.add_parser("bmn", help="exact enumeration oracle (desk scale)")
    pb.add_argument("--m", type=int, required=True)
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("--probe-grid", type=int, default=4001)
    pc = esub.add_parser("cmn", help="lower-bound search with the extended-interval constraint")
    pc.add_argument("--m", type=int, required=True)
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--gamma", type=float, required=True)
    pc.add_argument("--epsilon", type=float, required=True)
    pc.add_argument("--budget", type=int, default=50, help="number of search restarts")

    p = sub.add_parser("markov-check", help="randomized pointwise Markov-inequality check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("figure", help="write the CSVs behind one experiment figure")
    p.add_argument("figure", choices=["fig1", "fig2", "fig3", "fig4"])
    p.add_argument("--scale", choices=["desk", "paper"], default="desk")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--grid", type=int, default=50000)

    return parser


def _resolve_function(args):
    from .functions import lookup

    return lookup(args.function, omega=args.omega)


def _cmd_approximate(args) -> int:
    import math

    import numpy as np

    from .frame import FrameSpec, condition_numbers, epsilon_prime, errors_on_fine_grid, fit, scaling_m_of_n
    from .numerics import equispaced_grid
    from .sweeps import SweepRecord, emit_csv

    func = _resolve_function(args)
    trunc = args.epsilon
    if args.scaling:
        m = scaling_m_of_n(args.n, args.epsilon, args.gamma)
        trunc = epsilon_prime(args.epsilon, args.n, args.gamma)
    elif args.eta is not None:
        if args.eta < 1.0:
            raise ValueError("eta must be >= 1")
        m = math.ceil(args.eta * args.n)
    else:
        m = args.m
    spec = FrameSpec(gamma=args.gamma, n=args.n)
    samples = np.asarray(func.eval(equispaced_grid(m).nodes))
    if args.noise:
        samples = samples + np.random.default_rng(0).uniform(-args.noise, args.noise, samples.shape)
    rfit = fit(spec, m, trunc, samples)
    err_inf, err_l2 = errors_on_fine_grid(rfit, func, args.grid)
    cond_2, cond_inf = condition_numbers(spec, m, trunc, args.grid)
    print(f"function={func.name} n={args.n} m={m} gamma={args.gamma} epsilon={trunc:g}")
    print(f"error_inf={err_inf:.6e} error_l2={err_l2:.6e}")
    print(f"cond_2={cond_2:.6e} cond_inf={cond_inf:.6e} kept={len(rfit.kept)}/{args.n + 1}")
    if args.out:
        record = SweepRecord(function=func.name, n=args.n, m=m, gamma=args.gamma,
                             epsilon=trunc, eta=m / args.n if args.n else float(m),
                             error_inf=err_inf, error_l2=err_l2,
                             cond_2=cond_2, cond_inf=cond_inf)
        emit_csv([record], args.out, {"command": "approximate", "grid": args.grid})
        print(f"wrote {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    from .sweeps import emit_csv, render_csv, sweep_error_vs_n

    func = _resolve_function(args)
    mode = "paper" if args.scaling else args.eta
    records = sweep_error_vs_n(func, args.gamma, args.epsilon, mode, args.n_range,
                               fine_grid=args.grid, noise=args.noise)
    meta = {"command": "sweep", "function": func.name, "gamma": args.gamma,
            "epsilon": args.epsilon, "mode": "paper" if args.scaling else args.eta,
            "grid": args.grid}
    if args.out:
        emit_csv(records, args.out, meta)
        print(f"wrote {args.out} ({len(records)} records)")
    else:
        sys.stdout.write(render_csv(records, meta))
    return 0


def _cmd_condition(args) -> int:
    from .frame import FrameSpec, condition_numbers

    spec = FrameSpec(gamma=args.gamma, n=args.n)
    cond_2, cond_inf = condition_numbers(spec, args.m, args.epsilon, args.grid)
    print(f"cond_2={cond_2:.12e}")
    print(f"cond_inf={cond_inf:.12e}")
    return 0


def _cmd_extremal(args) -> int:
    from .extremal import bmn_oracle, cmn_lower_bound

    if args.oracle == "bmn":
        result = bmn_oracle(args.m, args.n, probe_grid_size=args.probe_grid)
        print(f"B({args.m},{args.n}) = {result.value:.12g} at x = {result.witness_x:.12g}")
    else:
        result = cmn_lower_bound(args.m, args.n, args.gamma, args.epsilon,
                                 search_budget=args.budget)
        print(f"C({args.m},{args.n},{args.gamma:g},{args.epsilon:g}) >= "
              f"{result.value:.12g} at x = {result.witness_x:.12g}")
    print("witness coefficients:", " ".join(f"{c:.12g}" for c in result.witness_coeffs))
    return 0


def _cmd_markov(args) -> int:
    from .extremal import markov_check

    report = markov_check(args.n, args.k, args.delta, args.trials, seed=args.seed)
    print(f"n={report.n} k={report.k} delta={report.delta} trials={report.trials}")
    print(f"max |p^(k)| / markov bound:    {report.max_ratio_markov:.6f}")
    print(f"max |p^(k)| / envelope:        {report.max_ratio_envelope:.6f}")
    print(f"max envelope / markov bound:   {report.max_ratio_dominance:.6f}")
    print(f"violations: {report.violations}")
    return 0


def _cmd_figure(args) -> int:
    from .figures import run_figure

    paths = run_figure(args.figure, scale=args.scale, out_dir=args.out_dir,
                       fine_grid=args.grid)
    for path in paths:
        print(f"wrote {path}")
    return 0


_DISPATCH = {
    "approximate": _cmd_approximate,
    "sweep": _cmd_sweep,
    "condition": _cmd_condition,
    "extremal": _cmd_extremal,
    "markov-check": _cmd_markov,
    "figure": _cmd_figure,
}


def main(argv=None) -> int:
    _configure_threads()
    parser = build_parser()
    args = parser.parse_args(argv)
    from .numerics import NumericalError

    try:
        return _DISPATCH[args.command](args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
