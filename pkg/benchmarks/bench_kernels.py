"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--group E6] [--repeat 5]

Numba timings exclude the first (compiling) call.
"""

import argparse
import time

import numpy as np

from flagmotive import _kernels, weyl
from flagmotive.rootsys import build_root_system
from flagmotive.sweep import exponent_grid


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bfs_with(backend, sys):
    saved = weyl.kernels
    weyl.kernels = backend
    try:
        return weyl._bfs(sys, cap=10**8)
    finally:
        weyl.kernels = saved


def workloads(sys):
    table = weyl.weyl_group(sys, cap=10**8)
    perms = np.ascontiguousarray(table.perms)
    gens = np.ascontiguousarray(sys.reflection_perms, dtype=np.int32)
    cols = np.arange(sys.npos, dtype=np.int64)
    simple = table.stabilizer_cols(sys.nodes)
    weights = np.asarray(np.random.default_rng(0).integers(-2, 3, size=len(sys.roots)), dtype=np.int64)
    grid = exponent_grid(9, 3)
    grid_weights = weights[:9]
    return {
        "bfs": lambda k: bfs_with(k, sys),
        "compose_left": lambda k: k.compose_left(gens, perms),
        "count_negative": lambda k: k.count_negative(perms, cols, sys.npos),
        "all_positive": lambda k: k.all_positive(perms, simple, sys.npos),
        "count_positive_weight": lambda k: k.count_positive_weight(perms, cols, weights),
        "scaled_positive_counts": lambda k: k.scaled_positive_counts(grid, grid_weights),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="E6")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    sys = build_root_system(args.group)
    backends = [_kernels.numpy_kernels]
    if _kernels.numba_kernels is not None:
        backends.append(_kernels.numba_kernels)
    print(f"group {args.group}, |W| = {sys.weyl_order}, best of {args.repeat}")
    print(f"{'kernel':<24}" + "".join(f"{b.name:>12}" for b in backends) + f"{'speedup':>10}")
    for name, job in workloads(sys).items():
        for b in backends:
            job(b)  # warm-up / JIT
        secs = [best_of(lambda: job(b), args.repeat) for b in backends]
        speed = f"{secs[0] / secs[-1]:>9.1f}x" if len(secs) > 1 else ""
        print(f"{name:<24}" + "".join(f"{s * 1e3:>10.2f}ms" for s in secs) + speed)


if __name__ == "__main__":
    main()
