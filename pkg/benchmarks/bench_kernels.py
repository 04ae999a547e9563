"""Timing comparison of the numba kernels against the pure-numpy fallback.

Runs the two hot kernels (the banded kick convolution and the standard-map
iterator) over a few problem sizes and prints mean +/- std wall times plus the
speedup of the active fast path over the numpy path.  Run it twice to see both
directions of the dispatch::

    python3 benchmarks/bench_kernels.py
    KICKEDROTOR_NO_NUMBA=1 python3 benchmarks/bench_kernels.py

With the flag set, both columns execute the same numpy code, so the speedup
column should hover around 1.0.
"""

import time

import numpy as np

from kickedrotor import ScaledParams, run_ensemble
from kickedrotor.qsim import EnsembleSpec, kick_weights
from kickedrotor._kernels import (
    backend,
    kick_convolve,
    kick_convolve_numpy,
    standard_map_numpy,
    standard_map_trajectories,
)

N_RUNS = 50
WARMUP = 3


def time_fn(fn, args, n_runs=N_RUNS):
    """Call ``fn(*args)`` repeatedly; return per-call wall times in seconds."""
    for _ in range(WARMUP):
        fn(*args)
    times = []
    for _ in range(n_runs):
        start = time.perf_counter()
        fn(*args)
        end = time.perf_counter()
        times.append(end - start)
    return np.array(times)


def print_results(name, times):
    mean_ms = np.mean(times) * 1000.0
    std_ms = np.std(times) * 1000.0
    min_ms = np.min(times) * 1000.0
    print(f"{name:34s}: {mean_ms:9.3f} ± {std_ms:7.3f} ms (min: {min_ms:8.3f} ms)")
    return np.mean(times)


def bench_kick_convolution():
    print("\nkick convolution (batched banded complex convolution)")
    print("=" * 72)
    rng = np.random.default_rng(7)
    for batch, n_max, phi_d in ((32, 256, 4.8), (32, 2048, 4.8),
                                (256, 2048, 4.8), (32, 2048, 10.0)):
        amps = rng.normal(size=(batch, 2 * n_max + 1)) \
            + 1j * rng.normal(size=(batch, 2 * n_max + 1))
        weights = kick_weights(phi_d)
        print(f"\nbatch={batch}, ladder sites={2 * n_max + 1}, "
              f"band taps={len(weights)} (phi_d={phi_d})")
        print("-" * 72)
        fast = print_results(f"kick_convolve [{backend()}]",
                             time_fn(kick_convolve, (amps, weights)))
        ref = print_results("kick_convolve_numpy",
                            time_fn(kick_convolve_numpy, (amps, weights)))
        print(f"{'speedup (numpy / active)':34s}: {ref / fast:9.2f}x")


def bench_standard_map():
    print("\nstandard map (momentum history for a particle batch)")
    print("=" * 72)
    rng = np.random.default_rng(11)
    for particles, kicks in ((100_000, 5), (100_000, 80), (1_000_000, 5)):
        phi0 = rng.uniform(0.0, 2.0 * np.pi, particles)
        rho0 = rng.uniform(-np.pi, np.pi, particles)
        print(f"\nparticles={particles}, kicks={kicks}")
        print("-" * 72)
        fast = print_results(
            f"standard_map_trajectories [{backend()}]",
            time_fn(standard_map_trajectories, (phi0, rho0, 10.0, kicks),
                    n_runs=20))
        ref = print_results(
            "standard_map_numpy",
            time_fn(standard_map_numpy, (phi0, rho0, 10.0, kicks), n_runs=20))
        print(f"{'speedup (numpy / active)':34s}: {ref / fast:9.2f}x")


def bench_ensemble():
    print("\nend-to-end five-kick quantum ensemble (active backend only)")
    print("=" * 72)
    spec = EnsembleSpec(n_q=32)
    params = ScaledParams(kbar=2.0, phi_d=4.8, kicks=5)
    times = time_fn(run_ensemble, (spec, params), n_runs=20)
    print_results(f"run_ensemble n_q=32 [{backend()}]", times)


def main():
    print("kickedrotor kernel benchmarks")
    print("=" * 72)
    print(f"active backend: {backend()}   numpy {np.__version__}")
    if backend() == "numba":
        import numba
        print(f"numba {numba.__version__} (first call includes no JIT cost: "
              "kernels are cached and warmed up before timing)")
    else:
        print("numba disabled via KICKEDROTOR_NO_NUMBA; both columns run the "
              "numpy path")
    bench_kick_convolution()
    bench_standard_map()
    bench_ensemble()


if __name__ == "__main__":
    main()
