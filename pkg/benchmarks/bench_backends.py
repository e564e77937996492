#!/usr/bin/env python3
"""Time the numba and numpy kernel twins on identical workloads.

The numpy twin vectorizes each refinement level across the whole batch, so
it tends to win the direct quadratures once batches are large; the compiled
twin avoids per-call array overhead and wins the scalar constant quadrature
and small-batch Newton inversions by a wide margin. Run with
`python benchmarks/bench_backends.py` (add --sizes / --repeats to taste).
"""

import argparse
import time

import numpy as np

from pqtrig import kernels

P, Q = 2.0, 3.0
REL_TOL = 1e-12


def best_of(repeats, fn):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(mod, n):
    x = np.linspace(0.005, 0.995, n)
    ph = float(np.asarray(mod.arcsin_batch(np.array([1.0]), P, Q,
                                           REL_TOL)[0])[0])
    ys = np.linspace(0.02, 0.98, n) * ph
    yh = np.linspace(0.02, 0.98, n) * 2.0
    return [
        ("arcsin_batch", lambda: mod.arcsin_batch(x, P, Q, REL_TOL)),
        ("arcsinh_batch", lambda: mod.arcsinh_batch(x, P, Q, REL_TOL)),
        ("sin_batch", lambda: mod.sin_batch(ys, P, Q, REL_TOL, ph)),
        ("sinh_batch", lambda: mod.sinh_batch(yh, P, Q, REL_TOL)),
        ("mstar_quad x100", lambda: [mod.mstar_quad(P, 2.0 * P, REL_TOL)
                                     for _ in range(100)]),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 2000, 20000])
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    mods = {}
    for name in ("numba", "numpy"):
        mods[name] = kernels.use(name)
        if mods[name].__name__.split("_")[-1] != name:
            print(f"note: backend {name!r} unavailable, skipping")
            del mods[name]
    if "numba" in mods:
        for _, fn in workloads(mods["numba"], 8):
            fn()  # pay the jit compile outside the timed region

    hdr = f"{'kernel':<18} {'n':>6}" + "".join(
        f" {name + ' (ms)':>12}" for name in mods)
    if len(mods) == 2:
        hdr += f" {'numpy/numba':>12}"
    print(hdr)
    print("-" * len(hdr))
    for n in args.sizes:
        per = {name: workloads(mod, n) for name, mod in mods.items()}
        for i, (label, _) in enumerate(per[next(iter(mods))]):
            times = [best_of(args.repeats, per[name][i][1]) for name in mods]
            row = f"{label:<18} {n:>6}" + "".join(
                f" {1e3 * t:>12.3f}" for t in times)
            if len(times) == 2:
                row += f" {times[1] / times[0]:>11.2f}x"
            print(row)


if __name__ == "__main__":
    main()
