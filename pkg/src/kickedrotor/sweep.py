"""Sweep orchestration: dispatch a validated config across its parameter grid.

Grid points are independent jobs; with ``run.workers > 1`` they execute on a
thread pool (the hot kernels release the GIL).  Every reduction below the
grid level is a fixed-order sum, so worker count never changes results.
Truncation failures in the quantum evolver are collected per grid point and
reported in the manifest without aborting the remaining points.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Tuple

from . import _kernels
from ._version import __version__
from .analytic import analytic_sweep
from .config import SweepConfig, config_from_dict, config_to_dict, load_config_file
from .csim import run_classical
from .errors import TruncationError
from .qsim import CALIBRATION_C, BOUNDARY_TOLERANCE, run_ensemble
from .result import Row, SweepResult
from .units import ScaledParams

REPLAY_CONTRACT = ("re-running this manifest reproduces every energy to "
                   "1e-12 relative (deterministic quadrature modes) and "
                   "bit-identically (fixed-seed Monte Carlo modes)")


def _analytic_rows(cfg: SweepConfig) -> List[Row]:
    e0 = 0.0 if cfg.subtract_e0 else cfg.e0
    rows: List[Row] = []
    for phi in cfg.phi_d:
        part = analytic_sweep(cfg.kicks, phi, cfg.kbar_grid, E0=e0,
                              spread=cfg.spread, exact_c3=cfg.exact_c3)
        rows.extend(part.rows)
    return rows


def _quantum_point(cfg: SweepConfig, phi: float, kbar: float) -> List[Row]:
    params = ScaledParams(kbar=kbar, phi_d=phi, kicks=cfg.max_kicks)
    series = run_ensemble(cfg.ensemble, params, spread=cfg.spread,
                          n_max=cfg.quantum_n_max,
                          energy_reference=cfg.ensemble_energy_reference)
    energies = series.growth() if cfg.subtract_e0 else series.energies
    return [Row(kbar, phi, k, float(energies[k]), "quantum") for k in cfg.kicks]


def _classical_point(cfg: SweepConfig, phi: float, kbar: float) -> List[Row]:
    series = run_classical(cfg.classical, kappa=kbar * phi, kicks=cfg.max_kicks,
                           phi_d_for_units=phi,
                           energy_reference=cfg.classical_energy_reference)
    energies = series.growth() if cfg.subtract_e0 else series.energies
    return [Row(kbar, phi, k, float(energies[k]), "classical") for k in cfg.kicks]


def _map_points(cfg: SweepConfig, job) -> Tuple[List[Row], List[str]]:
    """Evaluate ``job(cfg, phi, kbar)`` over the grid, merging in grid order.

    Returns the merged rows plus a description of every grid point that
    failed with a truncation error (those points contribute no rows).
    """
    points = [(phi, kbar) for phi in cfg.phi_d for kbar in cfg.kbar_grid]
    rows: List[Row] = []
    failures: List[str] = []

    def _one(point):
        phi, kbar = point
        return job(cfg, phi, float(kbar))

    if cfg.workers == 1:
        outcomes = []
        for point in points:
            try:
                outcomes.append(_one(point))
            except TruncationError as exc:
                outcomes.append(exc)
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_one, point) for point in points]
            outcomes = []
            for future in futures:
                try:
                    outcomes.append(future.result())
                except TruncationError as exc:
                    outcomes.append(exc)

    for (phi, kbar), outcome in zip(points, outcomes):
        if isinstance(outcome, TruncationError):
            failures.append(f"kbar={kbar!r} phi_d={phi!r}: {outcome}")
        else:
            rows.extend(outcome)
    return rows, failures


def _compare_rows(cfg: SweepConfig) -> Tuple[List[Row], List[str]]:
    """Analytic and quantum curves plus per-point absolute/relative gaps."""
    rows = _analytic_rows(cfg)
    qrows, failures = _map_points(cfg, _quantum_point)
    rows.extend(qrows)

    analytic_at: Dict[Tuple[int, float, float], float] = {
        (r.kicks, r.phi_d, r.kbar): r.energy for r in rows if r.method == "analytic"}
    for r in qrows:
        ref = analytic_at[(r.kicks, r.phi_d, r.kbar)]
        gap = r.energy - ref
        rows.append(Row(r.kbar, r.phi_d, r.kicks, gap, "gap_abs"))
        scale = abs(ref) if abs(ref) > 0 else 1.0
        rows.append(Row(r.kbar, r.phi_d, r.kicks, gap / scale, "gap_rel"))
    return rows, failures


def run_config(cfg: SweepConfig) -> SweepResult:
    """Execute a sweep and return rows in canonical order plus the manifest."""
    start = time.monotonic()
    failures: List[str] = []
    if cfg.mode == "analytic":
        rows = _analytic_rows(cfg)
    elif cfg.mode == "quantum":
        rows, failures = _map_points(cfg, _quantum_point)
    elif cfg.mode == "classical":
        rows, failures = _map_points(cfg, _classical_point)
    else:  # compare (config_from_dict guarantees the enum)
        rows, failures = _compare_rows(cfg)

    result = SweepResult(rows=rows)
    result.sort_canonical()

    manifest = config_to_dict(cfg)
    manifest.update({
        "meta.tool": "kickedrotor",
        "meta.version": __version__,
        "meta.backend": _kernels.backend(),
        "meta.calibration_c": repr(CALIBRATION_C),
        "meta.truncation_guard": repr(BOUNDARY_TOLERANCE),
        "meta.replay_contract": REPLAY_CONTRACT,
        "meta.wall_time_s": f"{time.monotonic() - start:.3f}",
    })
    if failures:
        manifest["meta.truncation_failures"] = " ; ".join(failures)
    result.manifest = manifest
    return result


def emit_manifest(result: SweepResult, path: str) -> None:
    """Write the manifest in the config grammar (replayable via --config)."""
    from .config import render_config_text
    from .errors import KickedRotorError
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_config_text(result.manifest))
    except OSError as exc:
        raise KickedRotorError(f"cannot write manifest to {path!r}: {exc}") from exc


def replay_manifest(path: str) -> SweepResult:
    """Re-run a previously emitted manifest (same grammar as config files)."""
    cfg = config_from_dict(load_config_file(path))
    return run_config(cfg)
