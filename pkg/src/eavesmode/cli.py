"""Command-line front end.

Exit status: 0 on success, 1 on runtime failure (including a failed
``verify`` run), 2 on a configuration or usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager
from dataclasses import replace

from . import __version__, oracle
from .config import ConfigError, load_config
from .experiments import default_workers, evaluate_single, fading_sweep, region_map

EXIT_OK, EXIT_RUNTIME, EXIT_CONFIG = 0, 1, 2


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _fmt(v: float) -> str:
    return repr(float(v))


def cmd_evaluate(args) -> int:
    cfg = load_config(args.config)
    scenario = cfg.scenario
    if args.monitor is not None:
        scenario = scenario.with_monitor(tuple(args.monitor))
    result = evaluate_single(scenario, seed=args.seed)
    json.dump(result.diagnostics, sys.stdout, indent=2, allow_nan=False)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_region(args) -> int:
    cfg = load_config(args.config)
    spec = cfg.region
    if args.nx or args.ny:
        spec = replace(spec, nx=args.nx or spec.nx, ny=args.ny or spec.ny)
    rmap = region_map(spec)
    with _open_out(args.out) as fh:
        fh.write(
            f"# eavesmode region x_range={list(spec.x_range)} y_range={list(spec.y_range)}"
            f" nx={spec.nx} ny={spec.ny}\n"
        )
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "mode", "rate"])
        for x, y, mode, rate in rmap.rows():
            w.writerow([_fmt(x), _fmt(y), mode, _fmt(rate)])
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    spec = cfg.sweep
    if args.trials is not None:
        spec = replace(spec, trials=args.trials)
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    rows = fading_sweep(spec, cfg.scenario, workers=args.workers)
    with _open_out(args.out) as fh:
        fh.write(f"# eavesmode sweep y={spec.y!r} trials={spec.trials} seed={spec.seed}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "avg_rate_I", "avg_rate_II", "avg_rate_III", "avg_rate_selected"])
        for r in rows:
            w.writerow([_fmt(v) for v in (r.x, *r.mode_averages, r.avg_rate_selected)])
    return EXIT_OK


def cmd_verify(args) -> int:
    results = oracle.run_verification(
        n_instances=args.instances,
        seed=args.seed,
        rate_tol=args.rate_tol,
        residual_tol=args.residual_tol,
        power_rtol=args.power_rtol,
        grid_1d=args.grid_1d,
        grid_2d=args.grid_2d,
    )
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print("verify: PASS" if ok else "verify: FAIL")
    return EXIT_OK if ok else EXIT_RUNTIME


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="eavesmode",
        description="Eavesdropping-mode selection for a half-duplex monitor on a two-hop relay link.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def config_arg(p):
        p.add_argument("config", nargs="?", help="JSON config (default: bundled reference scenario)")

    p = sub.add_parser("evaluate", help="diagnose one scenario, JSON to stdout")
    config_arg(p)
    p.add_argument("--monitor", nargs=2, type=float, metavar=("X", "Y"), help="override monitor position")
    p.add_argument("--seed", type=int, default=0, help="realisation seed for Rayleigh scenarios")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("region", help="AWGN mode-selection map as CSV")
    config_arg(p)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--nx", type=int, help="override grid points along x")
    p.add_argument("--ny", type=int, help="override grid points along y")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("sweep", help="Rayleigh Monte-Carlo sweep as CSV")
    config_arg(p)
    p.add_argument("--trials", type=int, help="realisations per position (default from config: 10000)")
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument(
        "--workers",
        type=int,
        default=None,
        help="worker processes (default: $EAVESMODE_WORKERS or 1)",
    )
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="closed forms vs brute-force oracles on random instances")
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rate-tol", type=float, default=1e-6, help="bps/Hz")
    p.add_argument("--residual-tol", type=float, default=1e-9, help="bps/Hz")
    p.add_argument("--power-rtol", type=float, default=1e-12)
    p.add_argument("--grid-1d", type=int, default=1_000)
    p.add_argument("--grid-2d", type=int, default=300)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", None) is None and args.command == "sweep":
        args.workers = default_workers()
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"eavesmode: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - report, do not trace, at the CLI boundary
        print(f"eavesmode: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
