"""Compiled-kernel vs pure-numpy agreement, and the backend selection flag."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

from kickedrotor import _kernels, backend
from kickedrotor.qsim import kick_weights


def _random_batch(S, n_max, seed):
    rng = np.random.default_rng(seed)
    M = 2 * n_max + 1
    amps = rng.normal(size=(S, M)) + 1j * rng.normal(size=(S, M))
    amps /= np.linalg.norm(amps, axis=1, keepdims=True)
    return amps


class TestKickConvolveAgreement:
    @pytest.mark.parametrize("phi_d", [0.8, 2.0, 4.8])
    @pytest.mark.parametrize("S,n_max", [(1, 32), (7, 48), (16, 96)])
    def test_bitwise_agreement(self, phi_d, S, n_max):
        # The numpy path accumulates offsets in the same ascending order as
        # the compiled loop, so the two are bit-identical, not just close.
        amps = _random_batch(S, n_max, seed=n_max + S)
        weights = kick_weights(phi_d)
        a = _kernels.kick_convolve(amps.copy(), weights)
        b = _kernels.kick_convolve_numpy(amps.copy(), weights)
        np.testing.assert_array_equal(a, b)

    def test_band_wider_than_ladder(self):
        amps = _random_batch(2, 8, seed=5)
        weights = kick_weights(4.8)  # half-width far beyond n_max=8
        a = _kernels.kick_convolve(amps.copy(), weights)
        b = _kernels.kick_convolve_numpy(amps.copy(), weights)
        np.testing.assert_array_equal(a, b)


class TestStandardMapAgreement:
    def test_short_runs_agree_tightly(self):
        # sin() may differ by an ulp between the two backends, so classical
        # cross-path agreement is asserted only over a few kicks where the
        # chaotic map cannot yet amplify a last-bit difference.
        rng = np.random.default_rng(2)
        phi0 = rng.uniform(0, 2 * math.pi, 512)
        rho0 = rng.uniform(0, 2 * math.pi, 512)
        a = _kernels.standard_map_trajectories(phi0, rho0, 6.0, 5)
        b = _kernels.standard_map_numpy(phi0, rho0, 6.0, 5)
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-10)

    def test_history_shape_and_start_row(self):
        phi0 = np.array([0.5, 1.5])
        rho0 = np.array([0.0, 2.0])
        hist = _kernels.standard_map_trajectories(phi0, rho0, 3.0, 4)
        assert hist.shape == (5, 2)
        np.testing.assert_array_equal(hist[0], rho0)


class TestBackendFlag:
    def test_backend_reports_a_known_name(self):
        assert backend() in ("numba", "numpy")

    def test_default_backend_is_compiled_here(self):
        # The test environment has numba installed and the flag unset.
        if os.environ.get("KICKEDROTOR_NO_NUMBA"):
            pytest.skip("suite is running with the fallback forced")
        assert backend() == "numba"

    def test_flag_forces_numpy_fallback(self):
        code = (
            "import kickedrotor, numpy as np\n"
            "from kickedrotor import _kernels\n"
            "from kickedrotor.qsim import kick_weights\n"
            "assert kickedrotor.backend() == 'numpy'\n"
            "rng = np.random.default_rng(3)\n"
            "amps = rng.normal(size=(3, 65)) + 1j * rng.normal(size=(3, 65))\n"
            "out = _kernels.kick_convolve(amps, kick_weights(1.5))\n"
            "ref = _kernels.kick_convolve_numpy(amps, kick_weights(1.5))\n"
            "assert np.array_equal(out, ref)\n"
            "print('fallback-ok')\n"
        )
        env = dict(os.environ, KICKEDROTOR_NO_NUMBA="1")
        proc = subprocess.run([sys.executable, "-c", code], env=env,
                              capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0, proc.stderr
        assert "fallback-ok" in proc.stdout

    def test_flag_zero_means_compiled(self):
        code = "import kickedrotor; print(kickedrotor.backend())"
        env = dict(os.environ, KICKEDROTOR_NO_NUMBA="0")
        proc = subprocess.run([sys.executable, "-c", code], env=env,
                              capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0, proc.stderr
        assert proc.stdout.strip().splitlines()[-1] == "numba"
