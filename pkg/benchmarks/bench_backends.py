#!/usr/bin/env python3
"""Benchmark the numba kernel against the vectorized numpy fallback.

Both backends consume identical pre-drawn choice matrices, so their outputs
are bit-identical; only wall time differs.  The numba column excludes JIT
compilation (a warm-up call runs first).

Usage: python benchmarks/bench_backends.py [--reps 100000]
"""

import argparse
import time

import numpy as np

from cherryforks import _kernels
from cherryforks.growth import Model, _draw_choices


def bench_case(model: Model, n: int, rooted: bool, reps: int) -> dict:
    rng = np.random.default_rng(0)
    choices = _draw_choices(model, n, rooted, rng, reps)
    pendant_only = model is Model.YHK
    # warm-up compiles the numba kernel and pre-faults the choice matrix
    _kernels.simulate_counts(n, rooted, pendant_only, choices[:64],
                             backend="numba")
    timings = {}
    for backend in ("numba", "numpy"):
        t0 = time.perf_counter()
        a, b = _kernels.simulate_counts(n, rooted, pendant_only, choices,
                                        backend=backend)
        timings[backend] = time.perf_counter() - t0
        timings[f"{backend}_result"] = (int(a.sum()), int(b.sum()))
    assert timings["numba_result"] == timings["numpy_result"]
    return timings


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=100_000)
    args = parser.parse_args()

    print(f"{'model':>6} {'n':>5} {'rooted':>7} {'reps':>9} "
          f"{'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for model in (Model.YHK, Model.PDA):
        for n in (20, 50, 200):
            for rooted in (False, True):
                t = bench_case(model, n, rooted, args.reps)
                print(f"{model.value:>6} {n:>5} {str(rooted):>7} "
                      f"{args.reps:>9} {t['numba']:>10.4f} "
                      f"{t['numpy']:>10.4f} "
                      f"{t['numpy'] / t['numba']:>8.2f}x")


if __name__ == "__main__":
    main()
