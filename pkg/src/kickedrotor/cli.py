"""Command-line interface.

Subcommands::

    kickedrotor analytic-sweep   closed-form five-kick energy curves
    kickedrotor quantum-sweep    momentum-ladder Floquet ensembles
    kickedrotor classical-sweep  standard-map Monte Carlo
    kickedrotor compare          analytic vs quantum with gap columns
    kickedrotor convert-units    laboratory <-> dimensionless parameters

Sweep subcommands accept ``--config FILE`` (the documented ``key = value``
grammar; run manifests replay through the same flag), ``--set KEY=VALUE``
overrides (repeatable, highest precedence), convenience flags mirroring the
most common keys, and ``--out-csv/--out-svg/--out-manifest`` destinations.
Exit codes: 0 success, 2 configuration/usage error, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Dict, List, Optional

from .config import config_from_dict, load_config_file
from .csvio import emit_csv
from .errors import ConfigError, DomainError, KickedRotorError
from .svg import emit_svg
from .sweep import emit_manifest, run_config
from .units import (PhysicalParams, period_for_kbar, rabi_effective,
                    scaled_from_physical)
from ._version import __version__

_SWEEP_MODES = {
    "analytic-sweep": "analytic",
    "quantum-sweep": "quantum",
    "classical-sweep": "classical",
    "compare": "compare",
}

# convenience flag -> config key (values pass through the normal validator)
_FLAG_KEYS = (
    ("--kicks", "kicks", "comma-separated kick counts, e.g. 2,3,4,5"),
    ("--phi-d", "phi_d", "comma-separated kick strengths phi_d"),
    ("--kbar-min", "kbar.min", "grid start (dimensionless kbar)"),
    ("--kbar-max", "kbar.max", "grid end"),
    ("--kbar-points", "kbar.points", "grid size"),
    ("--kbar-list", "kbar.list", "explicit comma-separated kbar values"),
    ("--spread-delta", "spread.delta", "relative half-width of the kick-strength spread"),
    ("--seed", "seed", "master seed for sampled ensembles"),
    ("--workers", "run.workers", "thread-pool size across grid points"),
)


def _add_sweep_parser(sub, name: str) -> None:
    p = sub.add_parser(name, help=f"run a {_SWEEP_MODES[name]} sweep")
    p.add_argument("--config", metavar="FILE",
                   help="config or manifest file in the key = value grammar")
    p.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                   dest="overrides", help="override any config key (repeatable)")
    for flag, _key, help_text in _FLAG_KEYS:
        p.add_argument(flag, metavar="V", help=help_text)
    p.add_argument("--out-csv", metavar="FILE", help="write rows as CSV")
    p.add_argument("--out-svg", metavar="FILE", help="write the figure as SVG")
    p.add_argument("--out-manifest", metavar="FILE", help="write the run manifest")


def _sweep_mapping(args) -> Dict[str, str]:
    mapping: Dict[str, str] = {}
    if args.config:
        mapping.update(load_config_file(args.config))
    for flag, key, _help in _FLAG_KEYS:
        value = getattr(args, flag.lstrip("-").replace("-", "_"))
        if value is not None:
            mapping[key] = value
    for item in args.overrides:
        if "=" not in item:
            raise ConfigError("--set", f"expected KEY=VALUE, got {item!r}")
        key, _, value = item.partition("=")
        mapping[key.strip()] = value.strip()
    if args.out_csv:
        mapping["out.csv"] = args.out_csv
    if args.out_svg:
        mapping["out.svg"] = args.out_svg
    if args.out_manifest:
        mapping["out.manifest"] = args.out_manifest
    return mapping


def _run_sweep(mode: str, args) -> int:
    mapping = _sweep_mapping(args)
    cfg = config_from_dict(mapping, mode_override=mode)
    result = run_config(cfg)
    failures = result.manifest.get("meta.truncation_failures")
    if failures:
        for chunk in failures.split(" ; "):
            print(f"warning: truncation failure at {chunk}", file=sys.stderr)
    wrote = []
    if cfg.out_csv:
        emit_csv(result, cfg.out_csv)
        wrote.append(cfg.out_csv)
    if cfg.out_svg:
        emit_svg(result, cfg.out_svg)
        wrote.append(cfg.out_svg)
    if cfg.out_manifest:
        emit_manifest(result, cfg.out_manifest)
        wrote.append(cfg.out_manifest)
    print(f"{len(result.rows)} rows ({cfg.mode} mode)"
          + (f" -> {', '.join(wrote)}" if wrote else ""), file=sys.stderr)
    if not wrote:
        # no destination requested: print the CSV to stdout for piping
        from .csvio import format_rows
        sys.stdout.write(format_rows(result))
    return 0


def _add_convert_parser(sub) -> None:
    p = sub.add_parser(
        "convert-units",
        help="map laboratory parameters to (kbar, phi_d, kappa) and back")
    p.add_argument("--omega-r", type=float, required=True, metavar="RAD_S",
                   help="recoil frequency omega_r (rad/s)")
    p.add_argument("--tau-p", type=float, metavar="S", help="pulse length (s)")
    p.add_argument("--period", type=float, metavar="S", help="kick period T (s)")
    p.add_argument("--omega-eff", type=float, metavar="RAD_S",
                   help="effective Rabi frequency Omega_R (rad/s)")
    p.add_argument("--omega", type=float, metavar="RAD_S",
                   help="bare Rabi frequency (requires --delta)")
    p.add_argument("--delta", type=float, metavar="RAD_S",
                   help="detuning (requires --omega)")
    p.add_argument("--kbar", type=float, metavar="V",
                   help="target kbar; with --omega-r alone, prints the period T")


def _run_convert(args) -> int:
    lines: List[str] = []
    if args.kbar is not None and args.period is None:
        T = period_for_kbar(args.omega_r, args.kbar)
        lines.append(f"T = {T!r}")
        lines.append(f"kbar = {args.kbar!r}")
    else:
        if args.period is None:
            raise ConfigError("--period", "required unless --kbar is given")
        omega_eff: Optional[float] = args.omega_eff
        if args.omega is not None or args.delta is not None:
            if args.omega is None or args.delta is None:
                raise ConfigError("--omega", "--omega and --delta must be given together")
            derived = rabi_effective(args.omega, args.delta)
            if omega_eff is None:
                omega_eff = derived
        if omega_eff is None:
            raise ConfigError("--omega-eff",
                              "required (or derive it via --omega/--delta)")
        if args.tau_p is None:
            raise ConfigError("--tau-p", "required to compute phi_d")
        phys = PhysicalParams(omega_r=args.omega_r, Omega_R=omega_eff,
                              tau_p=args.tau_p, T=args.period,
                              Omega=args.omega, Delta=args.delta)
        scaled = scaled_from_physical(phys)
        lines.append(f"kbar = {scaled.kbar!r}")
        lines.append(f"phi_d = {scaled.phi_d!r}")
        lines.append(f"kappa = {scaled.kappa!r}")
        lines.append(f"Omega_R = {omega_eff!r}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kickedrotor",
        description="Atom-optics kicked rotor: closed-form five-kick energies, "
                    "quantum Floquet ensembles, classical standard-map limits.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _SWEEP_MODES:
        _add_sweep_parser(sub, name)
    _add_convert_parser(sub)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in _SWEEP_MODES:
            return _run_sweep(_SWEEP_MODES[args.command], args)
        return _run_convert(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KickedRotorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
