"""Benchmark the numba kernels against the pure-numpy fallback.

Run:

    python benchmarks/bench_kernels.py

When numba is active both implementations are timed in-process; with
CONCBOUND_NO_NUMBA=1 only the fallback exists, so run it twice (with and
without the flag) to compare end-to-end numbers of the roof estimator.
"""
import time

import numpy as np

from concbound import BipartiteState, RoofOptions, roof_estimate
from concbound._accel import USING_NUMBA
from concbound._kernels import run_sweep, run_sweep_numpy


def _bench_sweep(fn, m, n, k, repeats):
    rng = np.random.default_rng(0)
    V0 = rng.standard_normal((k, m * n)) + 1j * rng.standard_normal((k, m * n))
    order = np.array([(i, j) for i in range(k) for j in range(i + 1, k)],
                     dtype=np.int64)
    fn(V0.copy(), m, n, order, 0.5, 32, 32, 6, 40)  # warm up / compile
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(V0.copy(), m, n, order, 0.5, 32, 32, 6, 40)
    return (time.perf_counter() - t0) / repeats


def bench_sweeps():
    print(f"{'case':<22} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for m, n, k, repeats in [(2, 2, 8, 20), (3, 3, 10, 5), (4, 4, 12, 2)]:
        t_np = _bench_sweep(run_sweep_numpy, m, n, k, repeats)
        label = f"sweep {m}x{n}, K={k}"
        if USING_NUMBA:
            t_nb = _bench_sweep(run_sweep, m, n, k, repeats)
            print(f"{label:<22} {t_np * 1e3:>10.2f}ms {t_nb * 1e3:>10.2f}ms "
                  f"{t_np / t_nb:>8.1f}x")
        else:
            print(f"{label:<22} {t_np * 1e3:>10.2f}ms {'n/a':>12} {'':>9}")


def bench_roof():
    rng = np.random.default_rng(1)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    state = BipartiteState(rho, 2, 2)
    opts = RoofOptions(ensemble_size=8, restarts=10)
    roof_estimate(state, opts)  # warm up
    t0 = time.perf_counter()
    res = roof_estimate(state, opts)
    dt = time.perf_counter() - t0
    path = "numba" if USING_NUMBA else "numpy fallback"
    print(f"\nroof_estimate (two-qubit, K=8, 10 restarts) on the {path} path: "
          f"{dt * 1e3:.0f}ms, value {res.value:.8f}")


if __name__ == "__main__":
    print(f"active kernel path: {'numba' if USING_NUMBA else 'pure numpy'}")
    bench_sweeps()
    bench_roof()
