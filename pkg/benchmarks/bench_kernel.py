"""Compare the compiled and pure-Python rate kernels.

Usage: python benchmarks/bench_kernel.py [--rows N] [--repeat R]

Times the batched per-mode rate evaluation on random channel rows and on the
default region map, once per available backend, and checks that both
backends return identical arrays.
"""

import argparse
import timeit

import numpy as np

from eavesmode import kernel
from eavesmode.config import load_config
from eavesmode.experiments import region_map


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    cfg = load_config()
    p = cfg.scenario.params
    rng = np.random.default_rng(0)
    gains = np.asarray(cfg.scenario.mean_gains()) * rng.exponential(size=(args.rows, 6))

    backends = kernel.available_backends()
    results = {b: kernel.mode_rates(gains, p, b) for b in backends}
    for b in backends[1:]:
        same = np.array_equal(results[b], results[backends[0]])
        print(f"{b} vs {backends[0]}: {'identical' if same else 'MISMATCH'}")

    print(f"{'backend':<8} {'rows/s':>14} {'region map [s]':>15}")
    timings = {}
    for b in backends:
        t_rows = min(timeit.repeat(lambda: kernel.mode_rates(gains, p, b), number=1, repeat=args.repeat))
        t_map = min(timeit.repeat(lambda: region_map(cfg.region, b), number=1, repeat=args.repeat))
        timings[b] = t_rows
        print(f"{b:<8} {args.rows / t_rows:>14,.0f} {t_map:>15.3f}")
    if "cython" in timings:
        print(f"speed-up: {timings['python'] / timings['cython']:.1f}x")


if __name__ == "__main__":
    main()
