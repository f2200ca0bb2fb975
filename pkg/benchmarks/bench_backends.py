#!/usr/bin/env python3
"""Benchmark the compiled quadrature kernel against the pure-numpy fallback.

Runs the shift-average at representative spectrum points (a full sweep worth
of detunings at several coupling strengths) through every available backend
and reports wall time per point and relative speedup.

    python3 benchmarks/bench_backends.py [--points N] [--repeats R]
"""

import argparse
import time

import numpy as np

from rydeit.backend import available_backends


def workload(points):
    """Detuning/strength combinations mimicking a spectrum scan."""
    rows = []
    for omega_c in (1.0, 1.4, 2.0):
        omega_a = 0.35 * (0.04 / omega_c ** 2) ** 2
        for delta in np.linspace(-0.5, 0.5, points):
            for delta_c in (-1.0, 0.0, 1.0):
                rows.append((-delta_c + delta, delta_c, 0.012, omega_c,
                             omega_a))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=101)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    rows = workload(args.points)
    backends = available_backends()
    print(f"{len(rows)} quadrature points, best of {args.repeats} runs\n")
    print(f"{'backend':<10} {'total [s]':>10} {'per point [us]':>16}")

    timings = {}
    reference = None
    for name, fn in sorted(backends.items()):
        best = float("inf")
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            acc = 0.0
            for dp, dc, g0, wc, wa in rows:
                out = fn(dp, dc, g0, wc, wa, 1.0, 1e-8, 1e-12, 10000)
                acc += out[1]
            best = min(best, time.perf_counter() - t0)
        timings[name] = best
        if reference is None:
            reference = acc
        elif abs(acc - reference) > 1e-6 * abs(reference):
            raise SystemExit(f"backend {name} disagrees: {acc} vs {reference}")
        print(f"{name:<10} {best:>10.3f} {1e6 * best / len(rows):>16.1f}")

    if len(timings) == 2:
        speedup = timings["python"] / timings["compiled"]
        print(f"\ncompiled is {speedup:.1f}x faster than the python fallback")
    else:
        print("\n(only one backend available; build the extension to compare)")


if __name__ == "__main__":
    main()
