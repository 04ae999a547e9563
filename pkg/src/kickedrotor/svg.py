"""Deterministic SVG rendering of sweep results.

One polyline per (kicks, method, phi_d) curve, energy against kbar, with
axes, tick labels, and a legend.  The byte output is a pure function of the
row data: no timestamps, no environment lookups, fixed float formatting.
"""

from __future__ import annotations

import math
from typing import Dict, List, Tuple

from .errors import DomainError, KickedRotorError
from .result import Row, SweepResult

_WIDTH, _HEIGHT = 800, 560
_ML, _MR, _MT, _MB = 72, 180, 24, 56  # margins; right margin hosts the legend

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2")


def _fmt(v: float) -> str:
    """Fixed, locale-free coordinate formatting (2 decimal places)."""
    return f"{v:.2f}"


def _fmt_tick(v: float) -> str:
    return f"{v:.6g}"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> List[float]:
    """Round tick positions covering [lo, hi] (deterministic arithmetic)."""
    if hi <= lo:
        return [lo]
    span = hi - lo
    step = 10.0 ** math.floor(math.log10(span / max(target, 2)))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0, 20.0):
        if span / (step * mult) <= target:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * span:
        ticks.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return ticks or [lo]


def render_svg(result: SweepResult) -> bytes:
    """Render rows to SVG bytes; raises a domain error for empty results."""
    rows = [r for r in result.rows if math.isfinite(r.energy) and math.isfinite(r.kbar)]
    if not rows:
        raise DomainError("result", "cannot render an empty sweep result")

    curves: Dict[Tuple[int, str, float], List[Row]] = {}
    for r in rows:
        curves.setdefault((r.kicks, r.method, r.phi_d), []).append(r)
    curve_keys = sorted(curves)
    many_phi = len({k[2] for k in curve_keys}) > 1

    xs = [r.kbar for r in rows]
    ys = [r.energy for r in rows]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    # 4% breathing room so extreme points do not sit on the frame
    x_pad, y_pad = 0.04 * (x_hi - x_lo), 0.04 * (y_hi - y_lo)
    x_lo, x_hi = x_lo - x_pad, x_hi + x_pad
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    plot_w = _WIDTH - _ML - _MR
    plot_h = _HEIGHT - _MT - _MB

    def px(x: float) -> float:
        return _ML + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MT + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts: List[str] = []
    parts.append('<?xml version="1.0" encoding="UTF-8"?>')
    parts.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
                 f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">')
    parts.append(f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>')
    parts.append(f'<rect x="{_ML}" y="{_MT}" width="{plot_w}" height="{plot_h}" '
                 'fill="none" stroke="black" stroke-width="1"/>')

    for t in _nice_ticks(x_lo, x_hi):
        x = px(t)
        parts.append(f'<line x1="{_fmt(x)}" y1="{_MT + plot_h}" x2="{_fmt(x)}" '
                     f'y2="{_MT + plot_h + 5}" stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{_fmt(x)}" y="{_MT + plot_h + 20}" font-size="12" '
                     f'font-family="monospace" text-anchor="middle">{_fmt_tick(t)}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        y = py(t)
        parts.append(f'<line x1="{_ML - 5}" y1="{_fmt(y)}" x2="{_ML}" '
                     f'y2="{_fmt(y)}" stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{_ML - 8}" y="{_fmt(y + 4)}" font-size="12" '
                     f'font-family="monospace" text-anchor="end">{_fmt_tick(t)}</text>')

    parts.append(f'<text x="{_ML + plot_w / 2:.1f}" y="{_HEIGHT - 12}" font-size="14" '
                 'font-family="monospace" text-anchor="middle">'
                 'kbar (scaled Planck constant, dimensionless)</text>')
    parts.append(f'<text x="18" y="{_MT + plot_h / 2:.1f}" font-size="14" '
                 'font-family="monospace" text-anchor="middle" '
                 f'transform="rotate(-90 18 {_MT + plot_h / 2:.1f})">'
                 'energy (two-photon recoil convention)</text>')

    for idx, key in enumerate(curve_keys):
        kicks, method, phi_d = key
        pts = sorted(curves[key], key=lambda r: r.kbar)
        color = _PALETTE[idx % len(_PALETTE)]
        if len(pts) == 1:
            r = pts[0]
            parts.append(f'<circle cx="{_fmt(px(r.kbar))}" cy="{_fmt(py(r.energy))}" '
                         f'r="3.5" fill="{color}"/>')
        else:
            coords = " ".join(f"{_fmt(px(r.kbar))},{_fmt(py(r.energy))}" for r in pts)
            parts.append(f'<polyline points="{coords}" fill="none" '
                         f'stroke="{color}" stroke-width="1.5"/>')
        label = f"{kicks} kick{'s' if kicks != 1 else ''} ({method})"
        if many_phi:
            label += f" phi_d={_fmt_tick(phi_d)}"
        ly = _MT + 16 + 18 * idx
        lx = _WIDTH - _MR + 10
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 28}" y="{ly}" font-size="12" '
                     f'font-family="monospace">{label}</text>')

    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def emit_svg(result: SweepResult, path: str) -> None:
    """Write the rendered figure to ``path`` (byte-deterministic)."""
    data = render_svg(result)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise KickedRotorError(f"cannot write SVG to {path!r}: {exc}") from exc
