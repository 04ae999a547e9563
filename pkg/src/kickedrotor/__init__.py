"""Atom-optics quantum delta-kicked rotor: analytic five-kick energies,
quantum Floquet evolution on a momentum ladder, and the classical
standard-map limit, with a sweep harness for CSV/SVG/manifest artifacts."""

from ._version import __version__
from ._kernels import backend
from .errors import (ConfigError, DomainError, KickCountError,
                     KickedRotorError, TruncationError)
from .units import (PhysicalParams, ScaledParams, period_for_kbar,
                    rabi_effective, scaled_from_physical)
from .bessel import bessel_j
from .analytic import (CALIBRATION_C, EnergyValue, IntensitySpread,
                       analytic_sweep, energy_after_kicks,
                       energy_spread_averaged, kappa_q)
from .qsim import (EnsembleSpec, LadderState, apply_free, apply_kick,
                   default_n_max, energy_of_state, momentum_samples,
                   plane_wave, run_ensemble, run_trajectory)
from .csim import (ClassicalEnsemble, ClassicalParticle, run_classical,
                   standard_map_step)
from .result import EnergySeries, Row, SweepResult
from .config import (SweepConfig, config_from_dict, config_to_dict,
                     load_config_file, parse_config_text, render_config_text)
from .sweep import emit_manifest, replay_manifest, run_config
from .csvio import emit_csv, format_rows, parse_csv, parse_csv_text
from .svg import emit_svg, render_svg

__all__ = [
    "__version__", "backend",
    "ConfigError", "DomainError", "KickCountError", "KickedRotorError",
    "TruncationError",
    "PhysicalParams", "ScaledParams", "period_for_kbar", "rabi_effective",
    "scaled_from_physical",
    "bessel_j",
    "CALIBRATION_C", "EnergyValue", "IntensitySpread", "analytic_sweep",
    "energy_after_kicks", "energy_spread_averaged", "kappa_q",
    "EnsembleSpec", "LadderState", "apply_free", "apply_kick",
    "default_n_max", "energy_of_state", "momentum_samples", "plane_wave",
    "run_ensemble", "run_trajectory",
    "ClassicalEnsemble", "ClassicalParticle", "run_classical",
    "standard_map_step",
    "EnergySeries", "Row", "SweepResult",
    "SweepConfig", "config_from_dict", "config_to_dict", "load_config_file",
    "parse_config_text", "render_config_text",
    "emit_manifest", "replay_manifest", "run_config",
    "emit_csv", "format_rows", "parse_csv", "parse_csv_text",
    "emit_svg", "render_svg",
]
