"""Benchmark the measurement-grid kernel: numba JIT vs batched numpy.

The grid objective evaluation dominates the runtime of the discord and
classical-correlation optimizers, so this is the comparison that decides
whether the JIT path earns its keep on a given host.  Run with

    python benchmarks/bench_measurement_grid.py

Set DQC1LAB_DISABLE_NUMBA=1 to confirm the package falls back cleanly.
"""

import time

import numpy as np

from dqc1lab import classical_correlation, rho3
from dqc1lab._kernels import (
    active_backend,
    conditional_entropy_grid_numba,
    conditional_entropy_grid_numpy,
)
from dqc1lab.correlations import _measured_qubit_blocks


def time_call(fn, *args, repeats=10, warmup=2):
    for _ in range(warmup):
        fn(*args)
    start = time.perf_counter()
    for _ in range(repeats):
        result = fn(*args)
    return (time.perf_counter() - start) / repeats, result


def main():
    blocks = _measured_qubit_blocks(rho3(0.5).state, 1)
    print(f"active backend: {active_backend()}")
    print(f"{'grid':>12} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for n_theta, n_phi in ((16, 32), (64, 128), (128, 256)):
        tg, pg = np.meshgrid(
            np.linspace(0, np.pi, n_theta),
            np.linspace(0, 2 * np.pi, n_phi, endpoint=False),
            indexing="ij")
        thetas, phis = tg.ravel(), pg.ravel()
        t_np, ref = time_call(conditional_entropy_grid_numpy, blocks, thetas, phis)
        if conditional_entropy_grid_numba is None:
            print(f"{n_theta}x{n_phi:>8} {t_np * 1e3:>10.2f}ms {'n/a':>12} {'n/a':>9}")
            continue
        t_nb, got = time_call(conditional_entropy_grid_numba, blocks, thetas, phis)
        assert np.abs(got - ref).max() < 1e-12, "backends disagree"
        print(f"{n_theta}x{n_phi:>8} {t_np * 1e3:>10.2f}ms {t_nb * 1e3:>10.2f}ms "
              f"{t_np / t_nb:>8.2f}x")

    t_end2end, _ = time_call(classical_correlation, rho3(0.5).state, 1, repeats=3)
    print(f"\nclassical_correlation end to end ({active_backend()}): "
          f"{t_end2end * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
