"""Hot numerical kernels with a numba fast path and a pure-numpy fallback.

Set ``KICKEDROTOR_NO_NUMBA=1`` in the environment (before import) to force the
numpy implementations; ``backend()`` reports which path is active and is
recorded in run manifests.  Both paths perform the same arithmetic in the same
order, so they agree to floating-point roundoff (see tests/test_kernels.py).
"""

from __future__ import annotations

import os

import numpy as np

_TWO_PI = 2.0 * np.pi

_FORCE_NUMPY = os.environ.get("KICKEDROTOR_NO_NUMBA", "").strip() not in ("", "0")

if not _FORCE_NUMPY:
    try:
        import numba
    except ImportError:  # pragma: no cover - depends on environment
        numba = None
        _FORCE_NUMPY = True
else:
    numba = None


def backend() -> str:
    """Name of the active kernel implementation: 'numba' or 'numpy'."""
    return "numpy" if _FORCE_NUMPY else "numba"


# ---------------------------------------------------------------------------
# kick convolution: out[s, n] = sum_j weights[j] * amps[s, n - (j - W)]
# (banded convolution of every ladder in the batch with the kick's
# Bessel-coefficient row; out-of-range ladder sites are zero)
# ---------------------------------------------------------------------------

def _kick_convolve_numpy(amps: np.ndarray, weights: np.ndarray) -> np.ndarray:
    S, M = amps.shape
    W = (len(weights) - 1) // 2
    out = np.zeros_like(amps)
    for j in range(len(weights)):
        m = j - W  # output site n draws from input site n - m
        if m >= M or m <= -M:
            continue  # transfer larger than the whole ladder
        w = weights[j]
        if m >= 0:
            out[:, m:] += w * amps[:, : M - m]
        else:
            out[:, : M + m] += w * amps[:, -m:]
    return out


def _kick_convolve_loop(amps, weights, out):  # pragma: no cover - numba path
    S, M = amps.shape
    K = weights.shape[0]
    W = (K - 1) // 2
    for s in range(S):
        for n in range(M):
            acc = 0.0 + 0.0j
            for j in range(K):
                src = n - (j - W)
                if 0 <= src < M:
                    acc += weights[j] * amps[s, src]
            out[s, n] = acc


if not _FORCE_NUMPY:
    # nogil (rather than parallel=True): the harness parallelizes across sweep
    # grid points with threads, and concurrent entry into numba's parallel
    # runtime is unsafe on the workqueue threading layer.  Sequential kernels
    # that release the GIL give deterministic arithmetic and scale at the
    # grid-point level instead.
    _kick_convolve_jit = numba.njit(cache=True, nogil=True)(_kick_convolve_loop)

    def _kick_convolve_numba(amps: np.ndarray, weights: np.ndarray) -> np.ndarray:
        out = np.empty_like(amps)
        _kick_convolve_jit(amps, weights, out)
        return out


def kick_convolve(amps: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Convolve a batch of ladder amplitude rows with a kick-coefficient row.

    ``amps``: complex128 array (batch, 2*n_max+1); ``weights``: complex128
    array of odd length 2W+1 holding coefficients for momentum transfer
    m = -W..W.  Returns a new array; inputs are not modified.
    """
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    weights = np.ascontiguousarray(weights, dtype=np.complex128)
    if _FORCE_NUMPY:
        return _kick_convolve_numpy(amps, weights)
    return _kick_convolve_numba(amps, weights)


# ---------------------------------------------------------------------------
# classical standard map: rho' = rho + kappa*sin(phi); phi' = (phi + rho') mod 2pi
# ---------------------------------------------------------------------------

def _standard_map_numpy(phi0, rho0, kappa, kicks):
    N = phi0.shape[0]
    rho_out = np.empty((kicks + 1, N))
    phi = phi0.copy()
    rho = rho0.copy()
    rho_out[0] = rho
    for k in range(kicks):
        rho = rho + kappa * np.sin(phi)
        phi = phi + rho
        phi = phi - _TWO_PI * np.floor(phi / _TWO_PI)
        rho_out[k + 1] = rho
    return rho_out


def _standard_map_loop(phi0, rho0, kappa, kicks, rho_out):  # pragma: no cover
    # kick-major so every write lands in a contiguous history row; this is
    # ~2x faster than iterating per particle (strided writes)
    N = phi0.shape[0]
    phi = phi0.copy()
    rho = rho0.copy()
    for i in range(N):
        rho_out[0, i] = rho[i]
    for k in range(kicks):
        for i in range(N):
            r = rho[i] + kappa * np.sin(phi[i])
            p = phi[i] + r
            p = p - _TWO_PI * np.floor(p / _TWO_PI)
            rho[i] = r
            phi[i] = p
            rho_out[k + 1, i] = r


if not _FORCE_NUMPY:
    _standard_map_jit = numba.njit(cache=True, nogil=True)(_standard_map_loop)


def standard_map_trajectories(phi0: np.ndarray, rho0: np.ndarray,
                              kappa: float, kicks: int) -> np.ndarray:
    """Iterate the standard map for a particle batch.

    Returns the momentum history as an array of shape (kicks+1, particles);
    row 0 is the initial momentum.  Trajectories depend only on
    (phi0, rho0, kappa), never on scheduling.
    """
    phi0 = np.ascontiguousarray(phi0, dtype=np.float64)
    rho0 = np.ascontiguousarray(rho0, dtype=np.float64)
    if _FORCE_NUMPY:
        return _standard_map_numpy(phi0, rho0, float(kappa), int(kicks))
    rho_out = np.empty((kicks + 1, phi0.shape[0]))
    _standard_map_jit(phi0, rho0, float(kappa), int(kicks), rho_out)
    return rho_out


# both implementations exposed for the cross-path agreement tests/benchmarks
kick_convolve_numpy = _kick_convolve_numpy
standard_map_numpy = _standard_map_numpy
