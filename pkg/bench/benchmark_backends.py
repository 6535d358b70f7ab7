"""Benchmark the numba and numpy pair-scan backends against each other.

The dominant cost of cover verification is the all-pairs scan of the group
(|G|^2 additions plus table lookups).  This script times that scan on the
canonical 2-group cover of a chosen model with both backends and reports
the speedup.

    python bench/benchmark_backends.py --p 5 --q 13 --repeats 3 --threads 1
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fusioncover import ModelParams, canonical_cover, fusion_tensor
from fusioncover._kernels import HAVE_NUMBA, scan_pairs_xor
from fusioncover.two_group_cover import GroupContext


def time_backend(backend: str, sec, n, d_flat, threads: int, repeats: int) -> float:
    # warm-up: triggers numba compilation, touches caches
    scan_pairs_xor(sec, n, d_flat, threads=threads, backend=backend)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        scan_pairs_xor(sec, n, d_flat, threads=threads, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=5)
    parser.add_argument("--q", type=int, default=13)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    params = ModelParams(args.p, args.q)
    tensor = fusion_tensor(params)
    cm = canonical_cover(GroupContext(params))
    sec = cm.sector_indices
    d_flat = np.ascontiguousarray(tensor.coefficients.reshape(-1))
    size = len(sec)
    print(f"model ({args.p},{args.q}): |G| = {size}, pairs = {size * size:,}, "
          f"threads = {args.threads}")

    results = {}
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    for backend in backends:
        dt = time_backend(backend, sec, tensor.n, d_flat, args.threads, args.repeats)
        results[backend] = dt
        rate = size * size / dt / 1e6
        print(f"  {backend:6s}: {dt * 1e3:9.2f} ms   ({rate:8.1f} M pairs/s)")
    if "numba" in results:
        print(f"  speedup numba vs numpy: {results['numpy'] / results['numba']:.2f}x")
    else:
        print("  numba not installed; only the numpy backend was timed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
