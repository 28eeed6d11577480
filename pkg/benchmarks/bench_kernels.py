#!/usr/bin/env python3
"""Benchmark the numba-compiled kernels against the pure-numpy fallbacks.

Run from the repository root after installing the package:

    python benchmarks/bench_kernels.py [--eig-n 200] [--sweep-points 20000]
                                       [--logcosh-n 2000000] [--repeat 5]

Each kernel is timed on both paths inside one process; with
QCAPSIM_NO_NUMBA=1 (or numba missing) only the numpy path is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qcapsim._accel import USE_NUMBA
from qcapsim import capacitance, circulator, linalg


def _best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_eigensolver(n, repeat):
    rng = np.random.default_rng(1)
    a = rng.normal(size=(n, n))
    a = a + a.T

    def numba_path():
        work = a.copy()
        d, e = linalg.tridiagonalize_loops(work)
        e[:-1] = e[1:]
        e[-1] = 0.0
        linalg.ql_eigenvalues(d, e)

    def numpy_path():
        work = a.copy()
        d, e = linalg.tridiagonalize_numpy(work)
        e[:-1] = e[1:]
        e[-1] = 0.0
        linalg._ql_eigenvalues_impl(d, e)

    return numba_path, numpy_path


def bench_sweep(n_points, repeat):
    config = circulator.CirculatorConfig(
        omega=tuple(2 * np.pi * f * 1e9 for f in (1.0, 1.05, 2.05)),
        kappa=(4 * np.pi * 1e9,) * 3,
        g=(2 * np.pi * 1e9,) * 3,
        phi=(np.pi / 2, 0.0, 0.0),
    )
    m = circulator.langevin_matrix(config)
    sqrt_kappa = np.sqrt(np.asarray(config.kappa))
    deltas = np.linspace(-4e9 * 2 * np.pi, 4e9 * 2 * np.pi, n_points)
    s_out = np.empty((n_points, 3, 3), dtype=np.complex128)
    resid = np.empty(n_points)

    def numba_path():
        circulator._sweep_lu_kernel(m, sqrt_kappa, deltas, s_out, resid)

    def numpy_path():
        circulator._sweep_scattering_numpy(m, sqrt_kappa, deltas)

    return numba_path, numpy_path


def bench_logcosh(n, repeat):
    x = np.linspace(-800.0, 800.0, n)
    out = np.empty_like(x)

    def numba_path():
        capacitance._ln_2_plus_2cosh_loops(x, out)

    def numpy_path():
        capacitance._ln_2_plus_2cosh_numpy(x)

    return numba_path, numpy_path


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--eig-n", type=int, default=200)
    parser.add_argument("--sweep-points", type=int, default=20000)
    parser.add_argument("--logcosh-n", type=int, default=2_000_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    cases = [
        (f"symmetric eigensolver (n={args.eig_n})", bench_eigensolver(args.eig_n, args.repeat)),
        (f"scattering sweep ({args.sweep_points} points)", bench_sweep(args.sweep_points, args.repeat)),
        (f"stable log-cosh ({args.logcosh_n} samples)", bench_logcosh(args.logcosh_n, args.repeat)),
    ]

    print(f"numba path active: {USE_NUMBA}")
    header = f"{'kernel':<42} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, (numba_path, numpy_path) in cases:
        t_numpy = _best_of(args.repeat, numpy_path) * 1e3
        if USE_NUMBA:
            numba_path()  # trigger compilation outside the timed region
            t_numba = _best_of(args.repeat, numba_path) * 1e3
            print(f"{name:<42} {t_numpy:>12.3f} {t_numba:>12.3f} {t_numpy / t_numba:>8.1f}x")
        else:
            print(f"{name:<42} {t_numpy:>12.3f} {'-':>12} {'-':>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
