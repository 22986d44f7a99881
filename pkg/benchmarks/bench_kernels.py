#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the two hot scans through their public entry points with each backend
forced in turn:

  * point enumeration (perfect-square scan) on a batch of curves
  * the main-lemma divisibility sweep on a reduced parameter grid

Usage: python3 benchmarks/bench_kernels.py [--full]
  --full also runs the complete acceptance-grid sweep (a,u <= 60, b,v <= 30)
  on both backends; expect minutes on the numpy path.
"""

import argparse
import math
import time

from ecap import _kernels
from ecap.curves import ShortWeierstrass
from ecap.points import scan_points
from ecap.progressions import sweep_main_lemma

ENUM_CURVES = [(-1, 0), (0, -2), (0, 17), (1, 1), (-7, 10), (2, 3)]
ENUM_LOG_HEIGHT = math.log(50_000)


def time_enumeration():
    start = time.perf_counter()
    found = 0
    for a, b in ENUM_CURVES:
        found += len(scan_points(ShortWeierstrass(a, b), ENUM_LOG_HEIGHT).points)
    return time.perf_counter() - start, found


def time_sweep(full: bool):
    start = time.perf_counter()
    if full:
        result = sweep_main_lemma()
    else:
        result = sweep_main_lemma(a_max=24, u_max=24, b_max=12, v_max=12,
                                  n_max=40)
    assert result.clean, "sweep reported violations; investigate before timing"
    return time.perf_counter() - start, result.tuples_checked


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="run the full acceptance sweep grid as well")
    args = parser.parse_args()

    rows = []
    for task, runner, unit in [
        ("point enumeration", time_enumeration, "points"),
        ("lemma sweep (reduced)", lambda: time_sweep(False), "tuples"),
    ] + ([("lemma sweep (full)", lambda: time_sweep(True), "tuples")]
         if args.full else []):
        timings = {}
        for backend in ("numba", "numpy"):
            _kernels.set_backend(backend)
            runner()  # warm up (JIT compile, caches)
            elapsed, count = runner()
            timings[backend] = (elapsed, count)
        _kernels.set_backend(None)
        rows.append((task, timings))

    print(f"{'task':<24}{'numba':>12}{'numpy':>12}{'speedup':>10}   work")
    for task, t in rows:
        nb, count = t["numba"]
        np_, _ = t["numpy"]
        print(f"{task:<24}{nb:>11.3f}s{np_:>11.3f}s{np_ / nb:>9.1f}x"
              f"   {count}")


if __name__ == "__main__":
    main()
