#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Workloads mirror the two hot loops of the library:

  * phase_sum at sweep scale: ~K d^2 terms per mode over the default
    2001-point grid (the chi product evaluates 40 of these per run).
  * phase_sum at harmonic scale: the sparsified term count seen at
    lam = 400.
  * gamma_sum at the sizes used by the Gaussian surrogate.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from morsebath import _kernels_np

try:
    from morsebath import _kernels as compiled
except ImportError:
    compiled = None


def run_case(name, func_args_by_backend, repeats):
    results = {}
    for backend, (func, args) in func_args_by_backend.items():
        func(*args)  # warm up
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            func(*args)
            best = min(best, time.perf_counter() - start)
        results[backend] = best
    line = f"{name:<38}"
    for backend in ("numpy", "compiled"):
        if backend in results:
            line += f" {results[backend] * 1e3:>10.2f} ms"
        else:
            line += f" {'n/a':>13}"
    if "compiled" in results and "numpy" in results:
        line += f" {results['numpy'] / results['compiled']:>8.2f}x"
    print(line)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    times = np.arange(2001) * 0.01

    cases = []
    for label, n_terms in (("phase_sum, sweep scale (2.6k terms)", 40 * 64),
                           ("phase_sum, harmonic scale (12k terms)", 12_000)):
        w = (rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms))
        f = rng.uniform(-8.0, 8.0, size=n_terms)
        cases.append((label, "phase_sum", (w, f, times)))
    for label, n_terms in (("gamma_sum, sweep scale (2.6k terms)", 40 * 64),
                           ("gamma_sum, harmonic scale (60k terms)", 60_000)):
        w = np.abs(rng.normal(size=n_terms))
        d = rng.uniform(-4.0, 4.0, size=n_terms)
        cases.append((label, "gamma_sum", (w, d, 0.1, times)))

    header = f"{'case':<38} {'numpy':>13} {'compiled':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, func_name, call_args in cases:
        by_backend = {"numpy": (getattr(_kernels_np, func_name), call_args)}
        if compiled is not None:
            by_backend["compiled"] = (getattr(compiled, func_name), call_args)
        run_case(label, by_backend, args.repeats)
    if compiled is None:
        print("\ncompiled extension not built; showing NumPy fallback only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
