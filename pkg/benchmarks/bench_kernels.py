"""Compiled vs numpy nearest-site kernels.

Workload: the 26 source images of a point of the fundamental domain against
the integer grid of facet G, which is the inner loop of the grid farthest
search.  Run with ``python benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

import numpy as np

from cubefar import kernels
from cubefar.cube import as_delta, src_facet
from cubefar.oracle import _facet_grid, oracle_farthest


def _workload(m: int):
    dp = as_delta((Fraction(2, 5), Fraction(1, 3), Fraction(1, 6), Fraction(0)))
    sites = [img.point for img in src_facet(dp, "G")]
    scale = kernels.common_scale([x for s in sites for x in s] + [Fraction(1, m)])
    site_int = np.array([[int(x * scale) for x in s] for s in sites], dtype=np.int64)
    grid = _facet_grid(m, (3, 1)) * (scale // m)
    return site_int, grid


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grids", type=int, nargs="+", default=[16, 32, 64, 128])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = ["python"] + (["cython"] if kernels._compiled is not None else [])
    print(f"{'grid':>6} {'points':>9} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for m in args.grids:
        sites, grid = _workload(m)
        ref = kernels.nearest_sqdist_int(sites, grid, "python")
        times = []
        for b in backends:
            out = kernels.nearest_sqdist_int(sites, grid, b)
            assert np.array_equal(out[0], ref[0]), f"{b} disagrees with the numpy kernel"
            times.append(_best_of(lambda: kernels.nearest_sqdist_int(sites, grid, b), args.repeat))
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
        print(f"{m:>6} {len(grid):>9} " + " ".join(f"{t * 1e3:9.2f}ms" for t in times) + "  " + speed)

    p = (Fraction(2, 5), Fraction(1, 3), Fraction(1, 6), Fraction(0))
    print("\nend to end: grid farthest search on all facets, step 1/16")
    for b in backends:
        t = _best_of(lambda: oracle_farthest(p, Fraction(1, 16), full=True, backend=b), 1)
        print(f"  {b:>8}: {t:.2f}s")


if __name__ == "__main__":
    main()
