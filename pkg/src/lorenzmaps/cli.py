"""Command-line interface.

Subcommands: entropy, kneading, laps, sweep, compare.  Single-point
commands print JSON to stdout; sweep writes CSV (or JSON) to --out or
stdout.  Numbers may be given as decimals or fractions ("9/19").

Exit codes: 0 success, 2 invalid parameters, 3 no root found,
4 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .errors import LorenzError, NoRootFound, ResourceLimit
from .kneading import detect_period, kneading_prefixes
from .laps import entropy_laps, lap_count
from .maps import UPPER, BranchPair, LorenzMap, make_affine_pair, parse_scalar
from .spectral import LAPS, SPECTRAL, entropy_spectral
from .sweep import (
    compare_methods,
    cross_confirm_features,
    detect_nonmonotonic,
    sweep,
    write_csv,
)


def _add_branch_args(sub):
    sub.add_argument("--b0", help="slope of the left affine branch")
    sub.add_argument("--b1", help="slope of the right affine branch")
    sub.add_argument("--branches", help="JSON file with f0/f1 branch specs")


def _add_mode_arg(sub, default):
    sub.add_argument(
        "--mode",
        choices=("exact", "float"),
        default=default,
        help=f"numeric mode (default: {default})",
    )


def _load_pair(args, exact: bool | None = None) -> BranchPair:
    if exact is None:
        exact = getattr(args, "mode", "exact") == "exact"
    if args.branches:
        if args.b0 or args.b1:
            raise LorenzError("give either --b0/--b1 or --branches, not both")
        with open(args.branches, "r", encoding="utf-8") as handle:
            return BranchPair.from_json_dict(json.load(handle), exact=exact)
    if not (args.b0 and args.b1):
        raise LorenzError("branch slopes missing: give --b0 and --b1, or --branches")
    return make_affine_pair(parse_scalar(args.b0, exact), parse_scalar(args.b1, exact))


def _parse_p(args, exact: bool):
    return parse_scalar(args.p, exact)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def _workers(args) -> int | None:
    if getattr(args, "workers", None) is not None:
        return args.workers
    env = os.environ.get("LORENZ_WORKERS")
    return int(env) if env else None


def _cmd_entropy(args) -> int:
    bp = _load_pair(args)
    exact = args.mode == "exact"
    p = _parse_p(args, exact)
    n = args.n if args.n is not None else (500 if args.method == SPECTRAL else 50)
    if args.method == SPECTRAL:
        est = entropy_spectral(bp, p, n, args.tol)
    else:
        est = entropy_laps(LorenzMap(bp, p, UPPER), n, args.window)
    _emit(
        {
            "p": float(p),
            "entropy": est.entropy,
            "gamma": est.gamma,
            "method": est.method,
            "order": est.order,
            "error_bound": est.error_bound,
            "certified": est.certified,
        }
    )
    return 0


def _cmd_kneading(args) -> int:
    bp = _load_pair(args)
    exact = args.mode == "exact"
    p = _parse_p(args, exact)
    kp = kneading_prefixes(bp, p, args.n)
    alpha_period, beta_period = kp.alpha_period, kp.beta_period
    if not exact:
        # heuristic candidates only; exact mode certifies these instead
        alpha_period = detect_period(bp, p, "lower", args.n, certified=False)
        beta_period = detect_period(bp, p, "upper", args.n, certified=False)
    _emit(
        {
            "p": float(p),
            "n": args.n,
            "alpha": kp.alpha,
            "beta": kp.beta,
            "alpha_period": alpha_period,
            "beta_period": beta_period,
            "mode": args.mode,
        }
    )
    return 0


def _cmd_laps(args) -> int:
    bp = _load_pair(args)
    exact = args.mode == "exact"
    p = _parse_p(args, exact)
    m = LorenzMap(bp, p, UPPER)
    laps, variation = lap_count(m, args.n)
    est = entropy_laps(m, args.n, args.window)
    _emit(
        {
            "p": float(p),
            "order": args.n,
            "window": args.window,
            "laps": str(laps),
            "variation": float(variation),
            "entropy": est.entropy,
            "lap_rate": math.log(laps) / args.n,
            "error_bound": est.error_bound,
        }
    )
    return 0


def _cmd_sweep(args) -> int:
    # grid geometry wants the exact pair; per-point arithmetic follows --mode
    bp = _load_pair(args, exact=True)
    records = sweep(
        bp,
        parse_scalar(args.p_min),
        parse_scalar(args.p_max),
        args.points,
        args.method,
        n=args.n,
        tol=args.tol,
        window=args.window,
        mode=args.mode,
        workers=_workers(args),
    )
    if args.format == "json":
        payload = [
            {
                "p": r.p,
                "entropy": r.estimate.entropy if r.estimate else None,
                "gamma": r.estimate.gamma if r.estimate else None,
                "error_bound": r.estimate.error_bound if r.estimate else None,
                "status": r.status,
            }
            for r in records
        ]
        text = json.dumps(payload)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                handle.write(text + "\n")
        else:
            sys.stdout.write(text + "\n")
    else:
        if args.out:
            write_csv(records, args.out)
        else:
            write_csv(records, sys.stdout)
    if args.features_out:
        features = detect_nonmonotonic(records, args.prominence)
        if args.max_features:
            features = features[: args.max_features]
        if not args.no_confirm:
            features = cross_confirm_features(
                bp,
                records,
                features,
                prominence_tol=args.prominence,
                workers=_workers(args),
            )
        with open(args.features_out, "w", encoding="utf-8", newline="") as handle:
            json.dump(
                [
                    {
                        "p_low": f.p_low,
                        "p_high": f.p_high,
                        "prominence": f.prominence,
                        "direction": f.direction,
                    }
                    for f in features
                ],
                handle,
            )
            handle.write("\n")
    return 0


def _cmd_compare(args) -> int:
    bp = _load_pair(args, exact=True)
    common = dict(workers=_workers(args))
    spectral = sweep(
        bp,
        parse_scalar(args.p_min),
        parse_scalar(args.p_max),
        args.points,
        SPECTRAL,
        n=args.spectral_n,
        tol=args.tol,
        **common,
    )
    laps_records = sweep(
        bp,
        parse_scalar(args.p_min),
        parse_scalar(args.p_max),
        args.points,
        LAPS,
        n=args.laps_n,
        window=args.window,
        **common,
    )
    max_diff, mean_diff, worst_p = compare_methods(spectral, laps_records)
    _emit(
        {
            "points": args.points,
            "spectral_n": args.spectral_n,
            "laps_n": args.laps_n,
            "max_abs_diff": max_diff,
            "mean_abs_diff": mean_diff,
            "worst_p": worst_p,
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorenzmaps",
        description="Topological entropy of Lorenz interval maps",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    entropy = subs.add_parser("entropy", help="entropy at a single p")
    _add_branch_args(entropy)
    entropy.add_argument("--p", required=True)
    entropy.add_argument("--method", choices=(SPECTRAL, LAPS), default=SPECTRAL)
    entropy.add_argument("--n", type=int, default=None)
    entropy.add_argument("--tol", type=float, default=1e-7)
    entropy.add_argument("--window", type=int, default=10)
    _add_mode_arg(entropy, "float")
    entropy.set_defaults(func=_cmd_entropy)

    kneading = subs.add_parser("kneading", help="kneading prefixes and periods at p")
    _add_branch_args(kneading)
    kneading.add_argument("--p", required=True)
    kneading.add_argument("--n", type=int, default=32)
    _add_mode_arg(kneading, "exact")
    kneading.set_defaults(func=_cmd_kneading)

    laps = subs.add_parser("laps", help="lap count, variation and lap entropy at p")
    _add_branch_args(laps)
    laps.add_argument("--p", required=True)
    laps.add_argument("--n", type=int, default=50)
    laps.add_argument("--window", type=int, default=10)
    _add_mode_arg(laps, "exact")
    laps.set_defaults(func=_cmd_laps)

    swp = subs.add_parser("sweep", help="entropy curve over a p range")
    _add_branch_args(swp)
    swp.add_argument("--p-min", required=True)
    swp.add_argument("--p-max", required=True)
    swp.add_argument("--points", type=int, required=True)
    swp.add_argument("--method", choices=(SPECTRAL, LAPS), default=SPECTRAL)
    swp.add_argument("--n", type=int, default=None)
    swp.add_argument("--tol", type=float, default=1e-7)
    swp.add_argument("--window", type=int, default=10)
    swp.add_argument("--mode", choices=("exact", "float"), default=None)
    swp.add_argument("--out", help="CSV/JSON output path (default: stdout)")
    swp.add_argument("--format", choices=("csv", "json"), default="csv")
    swp.add_argument("--workers", type=int, default=None)
    swp.add_argument("--features-out", help="also write detected non-monotone features")
    swp.add_argument("--prominence", type=float, default=1e-5)
    swp.add_argument("--no-confirm", action="store_true", help="skip cross-method confirmation")
    swp.add_argument("--max-features", type=int, default=10,
                     help="confirm at most this many features, most prominent first (0 = all)")
    swp.set_defaults(func=_cmd_sweep)

    comp = subs.add_parser("compare", help="spectral vs lap entropy on a shared grid")
    _add_branch_args(comp)
    comp.add_argument("--p-min", required=True)
    comp.add_argument("--p-max", required=True)
    comp.add_argument("--points", type=int, required=True)
    comp.add_argument("--spectral-n", type=int, default=500)
    comp.add_argument("--laps-n", type=int, default=50)
    comp.add_argument("--tol", type=float, default=1e-7)
    comp.add_argument("--window", type=int, default=10)
    comp.add_argument("--workers", type=int, default=None)
    comp.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except NoRootFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (LorenzError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
