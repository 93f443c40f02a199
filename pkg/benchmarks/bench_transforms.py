"""Benchmark the compiled lattice kernels against the numpy fallback.

Usage: python3 benchmarks/bench_transforms.py [--max-j 20] [--repeats 7]

Times the four in-place sweeps on random vectors of length 2**J for growing J
and reports the median per-call time of each backend plus the speedup.  The
compiled backend is skipped (with a note) when the extension is not built.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from axiometer._kernels import available_backends

SWEEPS = ("zeta_superset_", "moebius_superset_", "zeta_subset_", "moebius_subset_")


def time_call(fn, arr, j, repeats):
    times = []
    for _ in range(repeats):
        work = arr.copy()
        start = time.perf_counter()
        fn(work, j)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-j", type=int, default=20)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    backends = available_backends()
    names = [mod.NAME for mod in backends]
    if len(backends) == 1:
        print("note: compiled kernels not built; benchmarking the fallback only")
    print(f"backends: {', '.join(names)}")
    header = f"{'J':>3} {'sweep':<18}" + "".join(f"{n:>12}" for n in names)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)

    rng = np.random.default_rng(0)
    for j in range(10, args.max_j + 1, 2):
        arr = rng.uniform(-1.0, 1.0, 1 << j)
        for sweep in SWEEPS:
            row = f"{j:>3} {sweep:<18}"
            medians = []
            for mod in backends:
                med = time_call(getattr(mod, sweep), arr, j, args.repeats)
                medians.append(med)
                row += f"{med * 1e3:>10.3f}ms"
            if len(medians) == 2 and medians[0] > 0:
                row += f"{medians[1] / medians[0]:>9.2f}x"
            print(row)


if __name__ == "__main__":
    main()
