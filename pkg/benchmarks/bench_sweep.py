#!/usr/bin/env python3
"""Benchmark the compiled slot-walk kernel against the pure-Python fallback.

Both kernels are called directly on identical workloads; outputs are checked
for exact agreement before timing is reported.  Run from an installed tree:

    python3 benchmarks/bench_sweep.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mmwicd import _sweepwalk_py

try:
    from mmwicd import _sweepwalk
except ImportError:
    _sweepwalk = None

# (n_bs, n_ms, beams, k, order, pinned_set)
WORKLOADS = [
    ("default nCI single-beam", (64, 16, 1, 1, 0, -1)),
    ("default nCI 4-beam ms-outer", (64, 16, 4, 1, 1, -1)),
    ("default pinned 4-beam", (64, 16, 4, 1, 0, 2)),
    ("wide k=8 single-beam", (64, 16, 1, 8, 0, -1)),
    ("large 512x128 4-beam", (512, 128, 4, 1, 0, -1)),
    ("large 1024x256 8-beam k=4", (1024, 256, 8, 4, 0, -1)),
    ("huge 2048x512 8-beam", (2048, 512, 8, 1, 1, -1)),
]


def time_kernel(kernel, params, repeats: int) -> tuple[float, np.ndarray, int]:
    n_bs, n_ms, beams, k, order, pinned = params
    out = np.zeros(n_bs * n_ms, dtype=np.int64)
    best = float("inf")
    total = 0
    for _ in range(repeats):
        out[:] = 0
        start = time.perf_counter()
        total = kernel.enumerate_discovery_slots(n_bs, n_ms, beams, k, order, pinned, out)
        best = min(best, time.perf_counter() - start)
    return best, out, total


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats per workload; best is reported")
    args = parser.parse_args()

    if _sweepwalk is None:
        print("compiled kernel not built; showing pure-Python timings only")

    header = f"{'workload':<32} {'targets':>9} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, params in WORKLOADS:
        py_time, py_out, py_slots = time_kernel(_sweepwalk_py, params, args.repeats)
        if _sweepwalk is not None:
            c_time, c_out, c_slots = time_kernel(_sweepwalk, params, args.repeats)
            if not np.array_equal(py_out, c_out) or py_slots != c_slots:
                print(f"MISMATCH between kernels on {name!r}")
                return 1
            speedup = py_time / c_time if c_time > 0 else float("inf")
            print(f"{name:<32} {py_out.size:>9} {py_time * 1e3:>10.3f}ms "
                  f"{c_time * 1e3:>10.3f}ms {speedup:>8.1f}x")
        else:
            print(f"{name:<32} {py_out.size:>9} {py_time * 1e3:>10.3f}ms "
                  f"{'-':>12} {'-':>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
