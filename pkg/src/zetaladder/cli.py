"""Command-line interface: ladder construction, verification suites, zeros.

Exit codes: 0 all checks passed, 1 check failures (hard failures and
asymptotic trend drift are both nonzero; the failing family is named on
stderr), 2 usage errors (unknown suite, inadmissible parameters).

A flat key=value config file can predefine any flag (same names, underscores);
command-line flags override file values.  The cache directory resolves as
--cache-dir, else $ZETALADDER_CACHE_DIR, else ./.cache/zetaladder.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import __version__
from .errors import ZetaLadderError
from .harness import ExperimentReport, ReportMeta
from .ladder import EULER_C, LadderConfig, build_ladder
from .suites import SUITES, run_suite, u_from_policy

CACHE_ENV = "ZETALADDER_CACHE_DIR"
USAGE_EXIT = 2


def _read_config_file(path):
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {raw!r}")
        key, val = line.split("=", 1)
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _resolve(args, file_cfg, key, cast, default=None):
    # CLI flag wins over config file, config file over default
    cli_val = getattr(args, key, None)
    if cli_val is not None:
        return cli_val
    if key in file_cfg:
        return cast(file_cfg[key])
    return default


def _cache_dir(args, file_cfg):
    explicit = _resolve(args, file_cfg, "cache_dir", str)
    if explicit:
        return Path(explicit)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(".cache/zetaladder")


def _ladder_for(args, file_cfg, t_max_needed, quiet=False):
    t_min = _resolve(args, file_cfg, "t_min", float, 100.0)
    t_max = _resolve(args, file_cfg, "t_max", float, None) or t_max_needed
    tol = _resolve(args, file_cfg, "tol", float, 1e-12)
    grid_points = int(_resolve(args, file_cfg, "grid_points", int, 2000))
    config = LadderConfig(grid_points=grid_points, newton_tol=tol)
    cache = _cache_dir(args, file_cfg)
    progress = None if quiet else (lambda msg: print(f"  {msg}", file=sys.stderr))
    return build_ladder(t_min, t_max, config, cache_dir=cache, progress=progress), config


def cmd_build_ladder(args):
    file_cfg = _read_config_file(args.config) if args.config else {}
    t_min = _resolve(args, file_cfg, "t_min", float, 100.0)
    t_max = _resolve(args, file_cfg, "t_max", float, None)
    if t_max is None:
        print("error: --t-max is required", file=sys.stderr)
        return USAGE_EXIT
    if t_min >= t_max:
        print("error: need t_min < t_max", file=sys.stderr)
        return USAGE_EXIT
    try:
        model, config = _ladder_for(args, file_cfg, t_max)
    except ZetaLadderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"ladder over [{model.t_min:g}, {model.t_max:g}]")
    print(f"  grid nodes:        {len(model.grid)}")
    print(f"  max residual:      {model.calibration_residual:.3e}")
    print(f"  cache key:         {config.cache_key(model.t_min, model.t_max)}")
    print("  deficit ratios (t - phi1(t)) ln t / ((1-c) t):")
    for t in (1e4, 1e5, 1e6):
        if model.t_min <= t <= model.t_max:
            d = (t - model.value(t)) * math.log(t) / ((1.0 - EULER_C) * t)
            print(f"    t = {t:8.0f}:  {d:.4f}")
    return 0


def cmd_verify(args):
    file_cfg = _read_config_file(args.config) if args.config else {}
    suite = args.suite
    if suite not in SUITES:
        print(f"error: unknown suite {suite!r}; choices: {', '.join(sorted(SUITES))}",
              file=sys.stderr)
        return USAGE_EXIT
    T = _resolve(args, file_cfg, "T", float)
    U = _resolve(args, file_cfg, "U", float)
    policy = _resolve(args, file_cfg, "U_policy", str, "max")
    l = _resolve(args, file_cfg, "l", int)
    n = _resolve(args, file_cfg, "n", int)
    fmt = _resolve(args, file_cfg, "format", str, "csv")
    out = _resolve(args, file_cfg, "out", str)
    if fmt not in ("csv", "json"):
        print("error: --format must be csv or json", file=sys.stderr)
        return USAGE_EXIT

    # working range: cover the sweep tops plus the largest admissible window
    t_top = max([T or 0.0] + ([1e6] if T is None and suite in
                              ("theorem-2.1", "proof-chain", "rh-table") else [1e5]))
    t_needed = t_top + (U or u_from_policy(t_top, "max")) + 1.0
    try:
        model, config = _ladder_for(args, file_cfg, t_needed, quiet=args.quiet)
        records, hard, soft = run_suite(suite, model, T=T, U=U, U_policy=policy,
                                        l=l, n=n)
    except ZetaLadderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    cfg_dict = {"suite": suite, "T": T, "U": U, "U_policy": policy, "l": l,
                "n": n, "t_min": model.t_min, "t_max": model.t_max}
    meta = ReportMeta.create(__version__, cfg_dict,
                             ladder_cache_key=config.cache_key(model.t_min, model.t_max))
    report = ExperimentReport(meta=meta)
    report.add(records)
    text = report.to_json() if fmt == "json" else report.to_csv()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    for msg in hard:
        print(f"HARD FAIL: {msg}", file=sys.stderr)
    for msg in soft:
        print(f"TREND FAIL: {msg}", file=sys.stderr)
    return 1 if (hard or soft) else 0


def cmd_zeros(args):
    from .critical_line import find_zero_pair
    count = args.count
    if count < 0:
        print("error: --count must be >= 0", file=sys.stderr)
        return USAGE_EXIT
    print("gamma,gamma_prime,residual")
    if count == 0:
        return 0
    try:
        t = args.near
        for _ in range(count):
            pair = find_zero_pair(t)
            print(f"{pair.gamma:.12f},{pair.gamma_prime:.12f},{pair.refinement_residual:.3e}")
            t = pair.gamma_prime - 1e-9  # continue from the second zero of the pair
    except ZetaLadderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zetaladder",
        description="Ladder construction and formula verification on the critical line")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("build-ladder", help="construct and cache a ladder model")
    pb.add_argument("--t-min", dest="t_min", type=float)
    pb.add_argument("--t-max", dest="t_max", type=float)
    pb.add_argument("--tol", dest="tol", type=float)
    pb.add_argument("--grid-points", dest="grid_points", type=int)
    pb.add_argument("--cache-dir", dest="cache_dir")
    pb.add_argument("--config", help="flat key=value config file")
    pb.set_defaults(func=cmd_build_ladder)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("--suite", required=True)
    pv.add_argument("--T", dest="T", type=float)
    pv.add_argument("--U", dest="U", type=float)
    pv.add_argument("--U-policy", dest="U_policy", choices=("max", "sqrt", "unit"))
    pv.add_argument("--l", dest="l", type=int)
    pv.add_argument("--n", dest="n", type=int)
    pv.add_argument("--out", dest="out")
    pv.add_argument("--format", dest="format", choices=("csv", "json"))
    pv.add_argument("--t-min", dest="t_min", type=float)
    pv.add_argument("--t-max", dest="t_max", type=float)
    pv.add_argument("--grid-points", dest="grid_points", type=int)
    pv.add_argument("--tol", dest="tol", type=float)
    pv.add_argument("--cache-dir", dest="cache_dir")
    pv.add_argument("--config", help="flat key=value config file")
    pv.add_argument("--quiet", action="store_true")
    pv.set_defaults(func=cmd_verify)

    pz = sub.add_parser("zeros", help="locate consecutive zero pairs")
    pz.add_argument("--near", type=float, required=True)
    pz.add_argument("--count", type=int, default=1)
    pz.set_defaults(func=cmd_zeros)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        raise
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
