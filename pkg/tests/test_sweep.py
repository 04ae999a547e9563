"""Sweep orchestration tests: dispatch, gaps, manifests, replay, parallelism."""

import math

import numpy as np
import pytest

from kickedrotor import (
    ClassicalEnsemble,
    EnsembleSpec,
    ScaledParams,
    config_from_dict,
    emit_manifest,
    replay_manifest,
    run_classical,
    run_config,
    run_ensemble,
)

TWO_PI = 2.0 * math.pi


def _cfg(**overrides):
    raw = {"mode": "analytic", "kbar.list": "0.7,1.9,3.1", "kicks": "1,2,3"}
    raw.update({k: str(v) for k, v in overrides.items()})
    return config_from_dict(raw)


class TestAnalyticMode:
    def test_row_count_and_canonical_order(self):
        res = run_config(_cfg(phi_d="3.4,4.8"))
        assert len(res.rows) == 3 * 2 * 3  # kicks * phi_d * grid
        keys = [(r.kicks, r.method, r.phi_d, r.kbar) for r in res.rows]
        assert keys == sorted(keys)
        assert {r.method for r in res.rows} == {"analytic"}

    def test_two_kick_rows_flat(self):
        res = run_config(_cfg(kicks="2", phi_d="4.8"))
        energies = {r.energy for r in res.rows}
        assert len(energies) == 1
        assert energies.pop() == pytest.approx(2 * 4.8 ** 2, rel=1e-15)

    def test_e0_handling(self):
        lifted = run_config(_cfg(kicks="1", E0="5.0", **{"report.subtract_e0": "false"}))
        assert lifted.rows[0].energy == pytest.approx(5.0 + 4.8 ** 2, rel=1e-15)
        subtracted = run_config(_cfg(kicks="1", E0="5.0"))
        assert subtracted.rows[0].energy == pytest.approx(4.8 ** 2, rel=1e-15)


class TestQuantumMode:
    def test_rows_match_direct_ensemble_run(self):
        cfg = config_from_dict({
            "mode": "quantum", "kicks": "1,3", "phi_d": "2.0",
            "kbar.list": "1.9", "ensemble.n_q": "8",
        })
        res = run_config(cfg)
        series = run_ensemble(EnsembleSpec(n_q=8), ScaledParams(kbar=1.9,
                                                                phi_d=2.0, kicks=3))
        growth = series.growth()
        assert [r.kicks for r in res.rows] == [1, 3]
        assert res.rows[0].energy == float(growth[1])
        assert res.rows[1].energy == float(growth[3])

    def test_truncation_failures_collected_not_fatal(self):
        cfg = config_from_dict({
            "mode": "quantum", "kicks": "1,2,3,4,5", "phi_d": "1.0,4.8",
            "kbar.list": "1.0,2.0", "ensemble.n_q": "4", "quantum.n_max": "24",
        })
        res = run_config(cfg)
        # the strong-kick points blow through n_max=24 and are dropped
        assert {r.phi_d for r in res.rows} == {1.0}
        assert len(res.rows) == 5 * 2
        failures = res.manifest["meta.truncation_failures"]
        assert "phi_d=4.8" in failures
        assert "n_max" in failures

    def test_parallel_equals_serial_bitwise(self):
        base = {
            "mode": "quantum", "kicks": "1,2,3,4", "phi_d": "2.0,3.4",
            "kbar.list": "0.9,1.7,2.8,4.4", "ensemble.n_q": "8",
        }
        serial = run_config(config_from_dict(dict(base)))
        parallel = run_config(config_from_dict(dict(base, **{"run.workers": "4"})))
        assert serial.rows == parallel.rows  # Row tuples compare exactly


class TestClassicalMode:
    def test_rows_match_direct_run(self):
        cfg = config_from_dict({
            "mode": "classical", "kicks": "2,5", "phi_d": "2.0",
            "kbar.list": "5.0", "classical.particles": "1000",
            "classical.seed": "3",
        })
        res = run_config(cfg)
        direct = run_classical(ClassicalEnsemble(particles=1000, seed=3),
                               kappa=10.0, kicks=5, phi_d_for_units=2.0)
        growth = direct.growth()
        assert res.rows[0].energy == float(growth[2])
        assert res.rows[1].energy == float(growth[5])

    def test_workers_do_not_change_monte_carlo_rows(self):
        base = {
            "mode": "classical", "kicks": "1,4", "phi_d": "2.0",
            "kbar.list": "2.0,3.0,5.0", "classical.particles": "5000",
        }
        serial = run_config(config_from_dict(dict(base)))
        parallel = run_config(config_from_dict(dict(base, **{"run.workers": "3"})))
        assert serial.rows == parallel.rows


class TestCompareMode:
    def test_gap_rows_after_each_quantum_row(self):
        cfg = config_from_dict({
            "mode": "compare", "kicks": "1,2", "phi_d": "4.8",
            "kbar.list": repr(TWO_PI), "ensemble.n_q": "64",
        })
        res = run_config(cfg)
        methods = sorted(r.method for r in res.rows)
        assert methods == sorted(["analytic"] * 2 + ["quantum"] * 2
                                 + ["gap_abs"] * 2 + ["gap_rel"] * 2)
        by = {(r.kicks, r.method): r.energy for r in res.rows}
        for n in (1, 2):
            gap = by[(n, "quantum")] - by[(n, "analytic")]
            assert by[(n, "gap_abs")] == gap
            assert by[(n, "gap_rel")] == gap / abs(by[(n, "analytic")])
            # at resonance the cold quantum ensemble hits the closed form
            assert abs(by[(n, "gap_rel")]) < 1e-10


class TestManifest:
    def test_manifest_carries_tooling_metadata(self):
        res = run_config(_cfg())
        m = res.manifest
        assert m["mode"] == "analytic"
        assert m["meta.tool"] == "kickedrotor"
        assert m["meta.backend"] in ("numba", "numpy")
        assert "meta.replay_contract" in m
        assert float(m["meta.wall_time_s"]) >= 0.0
        assert m["meta.calibration_c"] == "2.0"

    @pytest.mark.parametrize("mode_keys", [
        {"mode": "analytic", "spread.delta": "0.1", "spread.points": "11"},
        {"mode": "quantum", "ensemble.n_q": "6",
         "ensemble.initial": "flat_wide",
         "ensemble.energy_reference": "initial_site"},
        {"mode": "classical", "classical.particles": "2000",
         "classical.momentum": "uniform",
         "classical.energy_reference": "initial_momentum", "seed": "11"},
    ])
    def test_replay_reproduces_rows_bitwise(self, tmp_path, mode_keys):
        raw = {"kicks": "1,2,3", "phi_d": "2.0",
               "kbar.min": "0.9", "kbar.max": "4.4", "kbar.points": "5"}
        raw.update(mode_keys)
        first = run_config(config_from_dict(raw))
        path = tmp_path / "manifest.cfg"
        emit_manifest(first, str(path))
        second = replay_manifest(str(path))
        assert first.rows == second.rows
