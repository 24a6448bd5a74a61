#!/usr/bin/env python3
"""Compare the compiled and pure-Python backends on the same inputs.

Runs every operator over one seeded input stream through both backends,
checks that the result checksums agree, and prints per-operator means and
the speedup.  The two backends use different timers (cycle counter vs
perf_counter_ns), so the wall-clock throughput is measured here at the
whole-run level rather than trusting per-call units across backends.

Usage: python benchmarks/backend_compare.py [--pairs N] [--trials T]
"""

import argparse
import time

from tnumlab import get_kernels
from tnumlab.bench import generate_pairs
from tnumlab.ops import OpId


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--pairs", type=int, default=20_000)
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--seed", type=int, default=2)
    args = parser.parse_args()

    try:
        compiled = get_kernels("c")
    except ImportError:
        print("compiled backend not built; run pip install -e . first")
        return 1
    pure = get_kernels("py")

    pv, pm, qv, qm = generate_pairs(64, args.pairs, args.seed)
    import numpy as np
    ks = (qv % np.uint64(65)).astype(np.uint64)

    print(f"{args.pairs} pairs, min of {args.trials} trials per pair, seed "
          f"{args.seed}")
    print(f"{'op':20s} {'compiled':>12s} {'pure-python':>12s} {'speedup':>9s}")
    for op in OpId:
        row = [op.value]
        wall = {}
        for name, backend in (("c", compiled), ("py", pure)):
            t0 = time.perf_counter()
            if op.is_shift:
                _, checksum, _, _ = backend.bench_run_shift(
                    op.code, pv, pm, ks, 64, args.trials, 0)
            else:
                _, checksum, _, _ = backend.bench_run(
                    op.code, pv, pm, qv, qm, 64, args.trials, 0)
            wall[name] = time.perf_counter() - t0
            if name == "c":
                expected = checksum
            elif checksum != expected:
                raise AssertionError(f"backends disagree on {op.value}")
        per_call_c = wall["c"] / (args.pairs * args.trials) * 1e9
        per_call_py = wall["py"] / (args.pairs * args.trials) * 1e9
        print(f"{op.value:20s} {per_call_c:10.0f}ns {per_call_py:10.0f}ns "
              f"{per_call_py / per_call_c:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
