"""Compiled vs numpy-fallback kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from capax import _pykernels

try:
    from capax import _ckernels
except ImportError:
    _ckernels = None


def bench(fn, setup, repeat):
    times = []
    for _ in range(repeat):
        arg = setup()
        t = timeit.default_timer()
        fn(arg)
        times.append(timeit.default_timer() - t)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    for n in (12, 16, 20):
        base = rng.random(1 << n)
        for op in ("zeta_inplace", "mobius_inplace", "superset_sum_inplace", "cover_inplace"):
            yield f"{op[:-8]} n={n} float64", op, (lambda b=base: b.copy()), n
    rows = rng.integers(0, 2, size=(16384, 64)).astype(np.int64)
    yield "mobius 16384x64 int64", "mobius_inplace", (lambda: rows.copy()), 6


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'case':34} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, op, setup, n in cases():
        py = bench(lambda a: getattr(_pykernels, op)(a, n), setup, args.repeat)
        if _ckernels is None:
            print(f"{label:34} {py:10.4f}")
            continue
        cy = bench(lambda a: getattr(_ckernels, op)(a, n), setup, args.repeat)
        print(f"{label:34} {py:10.4f} {cy:10.4f} {py / cy:8.1f}")
    for n in (4, 5, 6):
        repeat = 1 if n == 6 else args.repeat
        py = bench(lambda _: _pykernels.enumerate_vertex_tables(n), lambda: None, repeat)
        line = f"{f'vertex enumeration n={n}':34} {py:10.4f}"
        if _ckernels is not None:
            cy = bench(lambda _: _ckernels.enumerate_vertex_tables(n), lambda: None, repeat)
            line += f" {cy:10.4f} {py / cy:8.1f}"
        print(line)


if __name__ == "__main__":
    main()
