#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure-Python twins.

Measures the two hot loops (embedding matcher, GF(2) column reduction) on a
realistic workload and verifies both backends return identical results.

    python3 benchmarks/bench_kernels.py [--graphs 150] [--csv out.csv]
"""

import argparse
import time

import numpy as np

from topomine.kernels import _fallback
from topomine.matching import _index, _pattern_arrays
from topomine.mining import MiningConfig, Pattern, mine_frequent
from topomine.filtration import build_fsf
from topomine.persistence import _boundary_csr
from topomine.synthetic import aids_like

try:
    from topomine.kernels import _speedups
except ImportError:
    _speedups = None


def timeit(fn, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_matcher(ds, union):
    t = _index(union)
    shapes = [
        ([0, 0], [(0, 1)]),
        ([0, 0, 0], [(0, 1), (1, 2)]),
        ([0, 0, 0, 0], [(0, 1), (1, 2), (2, 3)]),
        ([0, 0, 0, 0], [(0, 1), (0, 2), (0, 3)]),
    ]
    args_list = []
    for labels, edges in shapes:
        pl, bp, bf = _pattern_arrays(labels, edges)
        args_list.append((pl, bp, bf, t.indptr, t.indices, t.labels,
                          t.bucket_indptr, t.bucket_vertices, -1))

    def run(mod):
        return [mod.match_image_counts(*args) for args in args_list]

    t_py, r_py = timeit(lambda: run(_fallback))
    row = {"kernel": "matcher", "python_s": t_py}
    if _speedups is not None:
        t_c, r_c = timeit(lambda: run(_speedups))
        for (c1, n1, f1), (c2, n2, f2) in zip(r_c, r_py):
            assert np.array_equal(np.asarray(c1), np.asarray(c2)) and (n1, f1) == (n2, f2)
        row.update(compiled_s=t_c, speedup=t_py / t_c)
    return row


def bench_reduction(ds, patterns):
    csrs = [_boundary_csr(build_fsf(g, patterns, 4)) for g in ds.graphs[:60]]

    def run(mod):
        return [np.asarray(mod.reduce_columns(*csr)) for csr in csrs]

    t_py, r_py = timeit(lambda: run(_fallback))
    row = {"kernel": "reduction", "python_s": t_py}
    if _speedups is not None:
        t_c, r_c = timeit(lambda: run(_speedups))
        for a, b in zip(r_c, r_py):
            assert np.array_equal(a, b)
        row.update(compiled_s=t_c, speedup=t_py / t_c)
    return row


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--graphs", type=int, default=150)
    parser.add_argument("--csv", default=None)
    args = parser.parse_args()

    ds = aids_like(args.graphs, seed=5)
    union, _ = ds.union_graph()
    patterns = mine_frequent(ds, MiningConfig(sigma=max(5, args.graphs // 3), k=4))
    print(f"workload: {args.graphs} graphs, union |V|={union.vertex_count}, "
          f"{len(patterns)} patterns")
    if _speedups is None:
        print("compiled kernels not built; timing the pure backend only")

    rows = [bench_matcher(ds, union), bench_reduction(ds, patterns)]
    print(f"\n{'kernel':<12}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for r in rows:
        compiled = f"{r['compiled_s']:.4f}" if "compiled_s" in r else "-"
        speedup = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['kernel']:<12}{r['python_s']:>12.4f}{compiled:>14}{speedup:>10}")

    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("kernel,python_s,compiled_s,speedup\n")
            for r in rows:
                fh.write(f"{r['kernel']},{r['python_s']:.6f},"
                         f"{r.get('compiled_s', '')},{r.get('speedup', '')}\n")
        print(f"\nwrote {args.csv}")


if __name__ == "__main__":
    main()
