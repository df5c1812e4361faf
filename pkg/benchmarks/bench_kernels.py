"""Timing comparison of the jit and pure-numpy decision kernels.

Runs both backends over identical inputs near the d=2 transition, where the
verdicts are genuinely mixed, and reports per-call wall time.

    python3 benchmarks/bench_kernels.py --sizes 100,200,400 --repeats 20
"""

import argparse
import os
import time

import numpy as np

from rainbowbip import kernels
from rainbowbip.formulas import sharp_threshold


def make_instances(n: int, count: int, seed: int):
    rng = np.random.default_rng(seed)
    p = 1.5 * sharp_threshold(n, n, 2)
    out = []
    for _ in range(count):
        adj = rng.random((n, n)) < p
        colors = rng.integers(1, 4, size=(n, n)).astype(np.int64)
        out.append((adj, colors))
    return out


def use_backend(name: str) -> str:
    os.environ["RAINBOW_BACKEND"] = name
    kernels.reset_backend()
    return kernels.backend_name()


def time_backend(instances, repeats: int):
    # warm-up pass so jit compilation stays out of the timed region
    adj0, col0 = instances[0]
    kernels.diam_le(adj0, 3)
    kernels.rainbow_k1(adj0, col0, 3, 3)

    t0 = time.perf_counter()
    for _ in range(repeats):
        for adj, _ in instances:
            kernels.diam_le(adj, 3)
    t_diam = (time.perf_counter() - t0) / (repeats * len(instances))

    t0 = time.perf_counter()
    for _ in range(repeats):
        for adj, colors in instances:
            kernels.rainbow_k1(adj, colors, 3, 3)
    t_rainbow = (time.perf_counter() - t0) / (repeats * len(instances))
    return t_diam, t_rainbow


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100,200,400", help="comma-separated side sizes")
    ap.add_argument("--instances", type=int, default=5, help="instances per size")
    ap.add_argument("--repeats", type=int, default=20, help="timed passes per instance")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'n':>6} {'kernel':>10} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in sizes:
        instances = make_instances(n, args.instances, args.seed)
        rows = {}
        for backend in ("numba", "numpy"):
            got = use_backend(backend)
            if got != backend:
                print(f"backend {backend!r} unavailable, got {got!r}")
                return 1
            rows[backend] = time_backend(instances, args.repeats)
        for idx, kernel in enumerate(("diam_le", "rainbow_k1")):
            jit_ms = rows["numba"][idx] * 1e3
            np_ms = rows["numpy"][idx] * 1e3
            print(f"{n:>6} {kernel:>10} {jit_ms:>10.3f} {np_ms:>10.3f} {np_ms / jit_ms:>7.1f}x")
    os.environ.pop("RAINBOW_BACKEND", None)
    kernels.reset_backend()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
