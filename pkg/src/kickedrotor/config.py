"""Sweep configuration: a line-oriented ``key = value`` text format.

Grammar (documented for external tooling; trivially parseable anywhere):

* encoding UTF-8; one statement per line, terminated by ``\\n``;
* blank lines and lines whose first non-space character is ``#`` are ignored;
* every other line is ``key = value`` — ``key`` is dot-separated identifiers
  (``[A-Za-z_][A-Za-z0-9_]*``, dots forming sections, e.g. ``kbar.points``),
  ``value`` is the rest of the line with surrounding whitespace stripped;
* a key may appear at most once per file;
* keys under ``meta.`` are free-form passthrough (recorded in manifests,
  never interpreted); all other keys must belong to the documented set.

Run manifests use the same grammar, so a manifest file can be fed straight
back through ``--config`` to replay a run.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from .analytic import IntensitySpread
from .errors import ConfigError
from .qsim import EnsembleSpec
from .csim import ClassicalEnsemble

_KEY_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z_][A-Za-z0-9_]*)*$")

_MODES = ("analytic", "quantum", "classical", "compare")

#: All interpretable keys (meta.* passes through in addition).
KNOWN_KEYS = frozenset({
    "mode", "kicks", "phi_d", "E0", "seed",
    "kbar.min", "kbar.max", "kbar.points", "kbar.list",
    "spread.delta", "spread.points", "spread.distribution", "spread.rule",
    "ensemble.n_q", "ensemble.sampling", "ensemble.initial",
    "ensemble.sigma_s", "ensemble.seed", "ensemble.energy_reference",
    "classical.particles", "classical.momentum", "classical.seed",
    "classical.energy_reference",
    "quantum.n_max", "analytic.exact_c3",
    "report.subtract_e0", "run.workers",
    "out.csv", "out.svg", "out.manifest",
})


def parse_config_text(text: str) -> Dict[str, str]:
    """Parse the raw grammar into a flat ``{key: value}`` dict (no validation)."""
    out: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not _KEY_RE.match(key):
            raise ConfigError(f"line {lineno}", f"malformed key {key!r}")
        if key in out:
            raise ConfigError(key, f"duplicate key (second occurrence at line {lineno})")
        out[key] = value
    return out


def load_config_file(path: str) -> Dict[str, str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# typed, validated configuration
# ---------------------------------------------------------------------------

def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(key, f"expected an integer, got {value!r}") from None


def _parse_float(key: str, value: str) -> float:
    try:
        v = float(value)
    except ValueError:
        raise ConfigError(key, f"expected a number, got {value!r}") from None
    if not np.isfinite(v):
        raise ConfigError(key, "must be finite")
    return v


def _parse_bool(key: str, value: str) -> bool:
    low = value.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ConfigError(key, f"expected true/false, got {value!r}")


def _parse_float_list(key: str, value: str) -> Tuple[float, ...]:
    parts = [p.strip() for p in value.split(",") if p.strip()]
    if not parts:
        raise ConfigError(key, "expected a comma-separated list of numbers")
    return tuple(_parse_float(key, p) for p in parts)


def _parse_int_list(key: str, value: str) -> Tuple[int, ...]:
    parts = [p.strip() for p in value.split(",") if p.strip()]
    if not parts:
        raise ConfigError(key, "expected a comma-separated list of integers")
    return tuple(_parse_int(key, p) for p in parts)


@dataclass(frozen=True, eq=False)
class SweepConfig:
    """Fully resolved, validated sweep description.

    Construct via :func:`config_from_dict` (which applies defaults and checks
    every constraint up front — validation is total, nothing runs on a
    malformed config) or build directly for programmatic use.
    """

    mode: str
    kicks: Tuple[int, ...]
    phi_d: Tuple[float, ...]
    kbar_grid: np.ndarray
    spread: IntensitySpread
    ensemble: EnsembleSpec
    ensemble_energy_reference: str
    classical: ClassicalEnsemble
    classical_energy_reference: str
    e0: float = 0.0
    subtract_e0: bool = True
    exact_c3: bool = False
    quantum_n_max: int = 0
    workers: int = 1
    seed: int = 0
    out_csv: Optional[str] = None
    out_svg: Optional[str] = None
    out_manifest: Optional[str] = None
    meta: Dict[str, str] = field(default_factory=dict)
    grid_spec: Optional[Tuple[float, float, int]] = None  # (min, max, points) if gridded

    @property
    def max_kicks(self) -> int:
        return max(self.kicks)


def config_from_dict(raw: Dict[str, str], mode_override: Optional[str] = None
                     ) -> SweepConfig:
    """Validate a flat key/value mapping into a SweepConfig.

    Raises :class:`ConfigError` naming the offending key and constraint for
    any unknown key, malformed value, or violated invariant.
    """
    raw = dict(raw)
    meta = {k: v for k, v in raw.items() if k.startswith("meta.")}
    for k in meta:
        raw.pop(k)
    unknown = sorted(set(raw) - KNOWN_KEYS)
    if unknown:
        raise ConfigError(unknown[0], "unknown configuration key")

    mode = mode_override or raw.get("mode", "")
    if mode not in _MODES:
        raise ConfigError("mode", f"must be one of {_MODES}, got {mode!r}")

    kicks = _parse_int_list("kicks", raw.get("kicks", "1,2,3,4,5"))
    if len(set(kicks)) != len(kicks):
        raise ConfigError("kicks", "kick counts must be distinct")
    kicks = tuple(sorted(kicks))
    limit = 5 if mode in ("analytic", "compare") else 80
    for k in kicks:
        if not (1 <= k <= limit):
            raise ConfigError(
                "kicks",
                f"kick counts must lie in 1..{limit} for mode {mode!r}, got {k}")

    phi_d = _parse_float_list("phi_d", raw.get("phi_d", "4.8"))
    for v in phi_d:
        if v <= 0:
            raise ConfigError("phi_d", f"kick strengths must be positive, got {v}")

    # kbar grid: explicit list, or linspace(min, max, points)
    grid_spec = None
    if "kbar.list" in raw:
        for k in ("kbar.min", "kbar.max", "kbar.points"):
            if k in raw:
                raise ConfigError(k, "cannot combine kbar.list with gridded kbar keys")
        grid = np.array(_parse_float_list("kbar.list", raw["kbar.list"]))
    else:
        lo = _parse_float("kbar.min", raw.get("kbar.min", "0.05"))
        hi = _parse_float("kbar.max", raw.get("kbar.max", repr(2.4 * np.pi)))
        pts = _parse_int("kbar.points", raw.get("kbar.points", "256"))
        if pts < 1:
            raise ConfigError("kbar.points", "must be >= 1")
        if pts == 1:
            if hi < lo:
                raise ConfigError("kbar.max", "must be >= kbar.min")
            grid = np.array([lo])
        else:
            if hi <= lo:
                raise ConfigError("kbar.max", "must exceed kbar.min")
            grid = np.linspace(lo, hi, pts)
        grid_spec = (lo, hi, pts)
    if grid[0] <= 0:
        raise ConfigError("kbar.min" if grid_spec else "kbar.list",
                          "kbar values must be positive")
    if np.any(np.diff(grid) <= 0):
        raise ConfigError("kbar.list", "kbar values must be strictly increasing")

    seed = _parse_int("seed", raw.get("seed", "0"))

    try:
        spread = IntensitySpread(
            relative_width=_parse_float("spread.delta", raw.get("spread.delta", "0")),
            quadrature_points=_parse_int("spread.points", raw.get("spread.points", "51")),
            distribution=raw.get("spread.distribution", "uniform"),
            rule=raw.get("spread.rule", "gauss-legendre"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("spread", str(exc)) from None

    try:
        ensemble = EnsembleSpec(
            n_q=_parse_int("ensemble.n_q", raw.get("ensemble.n_q", "32")),
            q_sampling=raw.get("ensemble.sampling", "midpoint_quadrature"),
            initial_dist=raw.get("ensemble.initial", "cold"),
            sigma_s=_parse_float("ensemble.sigma_s", raw.get("ensemble.sigma_s", "0")),
            seed=_parse_int("ensemble.seed", raw.get("ensemble.seed", str(seed))),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("ensemble", str(exc)) from None

    ens_ref = raw.get("ensemble.energy_reference", "absolute")
    if ens_ref not in ("absolute", "initial_site"):
        raise ConfigError("ensemble.energy_reference",
                          "must be 'absolute' or 'initial_site'")

    try:
        classical = ClassicalEnsemble(
            particles=_parse_int("classical.particles",
                                 raw.get("classical.particles", "100000")),
            momentum_dist=raw.get("classical.momentum", "zero"),
            seed=_parse_int("classical.seed", raw.get("classical.seed", str(seed))),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("classical", str(exc)) from None

    cls_ref = raw.get("classical.energy_reference", "absolute")
    if cls_ref not in ("absolute", "initial_momentum"):
        raise ConfigError("classical.energy_reference",
                          "must be 'absolute' or 'initial_momentum'")

    n_max = _parse_int("quantum.n_max", raw.get("quantum.n_max", "0"))
    if n_max < 0 or n_max == 1:
        raise ConfigError("quantum.n_max", "must be 0 (automatic) or >= 2")

    workers = _parse_int("run.workers", raw.get("run.workers", "1"))
    if workers < 1:
        raise ConfigError("run.workers", "must be >= 1")

    return SweepConfig(
        mode=mode,
        kicks=kicks,
        phi_d=phi_d,
        kbar_grid=grid,
        spread=spread,
        ensemble=ensemble,
        ensemble_energy_reference=ens_ref,
        classical=classical,
        classical_energy_reference=cls_ref,
        e0=_parse_float("E0", raw.get("E0", "0")),
        subtract_e0=_parse_bool("report.subtract_e0",
                                raw.get("report.subtract_e0", "true")),
        exact_c3=_parse_bool("analytic.exact_c3",
                             raw.get("analytic.exact_c3", "false")),
        quantum_n_max=n_max,
        workers=workers,
        seed=seed,
        out_csv=raw.get("out.csv") or None,
        out_svg=raw.get("out.svg") or None,
        out_manifest=raw.get("out.manifest") or None,
        meta=meta,
        grid_spec=grid_spec,
    )


def config_to_dict(cfg: SweepConfig) -> Dict[str, str]:
    """Render a SweepConfig back to grammar values that reparse identically.

    Floats use ``repr`` (shortest round-trip), so replaying the rendered
    mapping reconstructs bit-identical numeric inputs.
    """
    out: Dict[str, str] = {
        "mode": cfg.mode,
        "kicks": ",".join(str(k) for k in cfg.kicks),
        "phi_d": ",".join(repr(float(v)) for v in cfg.phi_d),
        "E0": repr(float(cfg.e0)),
        "seed": str(cfg.seed),
        "spread.delta": repr(float(cfg.spread.relative_width)),
        "spread.points": str(cfg.spread.quadrature_points),
        "spread.distribution": cfg.spread.distribution,
        "spread.rule": cfg.spread.rule,
        "ensemble.n_q": str(cfg.ensemble.n_q),
        "ensemble.sampling": cfg.ensemble.q_sampling,
        "ensemble.initial": cfg.ensemble.initial_dist,
        "ensemble.sigma_s": repr(float(cfg.ensemble.sigma_s)),
        "ensemble.seed": str(cfg.ensemble.seed),
        "ensemble.energy_reference": cfg.ensemble_energy_reference,
        "classical.particles": str(cfg.classical.particles),
        "classical.momentum": cfg.classical.momentum_dist,
        "classical.seed": str(cfg.classical.seed),
        "classical.energy_reference": cfg.classical_energy_reference,
        "quantum.n_max": str(cfg.quantum_n_max),
        "analytic.exact_c3": "true" if cfg.exact_c3 else "false",
        "report.subtract_e0": "true" if cfg.subtract_e0 else "false",
        "run.workers": str(cfg.workers),
    }
    if cfg.grid_spec is not None:
        lo, hi, pts = cfg.grid_spec
        out["kbar.min"] = repr(float(lo))
        out["kbar.max"] = repr(float(hi))
        out["kbar.points"] = str(pts)
    else:
        out["kbar.list"] = ",".join(repr(float(v)) for v in cfg.kbar_grid)
    if cfg.out_csv:
        out["out.csv"] = cfg.out_csv
    if cfg.out_svg:
        out["out.svg"] = cfg.out_svg
    if cfg.out_manifest:
        out["out.manifest"] = cfg.out_manifest
    out.update(cfg.meta)
    return out


def render_config_text(mapping: Dict[str, str]) -> str:
    """Serialize a flat mapping in the config grammar, keys sorted."""
    lines = [f"{k} = {mapping[k]}" for k in sorted(mapping)]
    return "\n".join(lines) + "\n"
