"""Minimal SVG line-chart writer for simulation results.

Produces standalone SVG files with axes, ticks, a legend, and one or more
time series, without any plotting dependency. Intended for the report
artifacts, not for interactive use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass
class Series:
    """One polyline: x and y arrays plus a legend label."""

    x: np.ndarray
    y: np.ndarray
    label: str

    def __post_init__(self) -> None:
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if self.x.shape != self.y.shape or self.x.ndim != 1:
            raise ValueError("series x and y must be 1-D arrays of equal length")


@dataclass
class ChartLayout:
    width: int = 720
    height: int = 420
    margin_left: int = 64
    margin_right: int = 16
    margin_top: int = 40
    margin_bottom: int = 48
    stroke_width: float = 1.3
    colors: Sequence[str] = field(default_factory=lambda: PALETTE)


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering [lo, hi] at a 1/2/5 step."""
    if not math.isfinite(lo) or not math.isfinite(hi):
        return [0.0]
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(target, 2)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * mag
        if raw <= step:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks or [lo]


def _fmt(value: float) -> str:
    if value == 0:
        return "0"
    if abs(value) >= 1000 or abs(value) < 0.01:
        return f"{value:.2g}"
    return f"{value:.4g}"


def render_chart(series: Sequence[Series], title: str, xlabel: str, ylabel: str,
                 layout: Optional[ChartLayout] = None) -> str:
    """Render the series as one SVG document string."""
    if not series:
        raise ValueError("at least one series is required")
    lay = layout or ChartLayout()
    finite_x = np.concatenate([s.x[np.isfinite(s.x)] for s in series])
    finite_y = np.concatenate([s.y[np.isfinite(s.y)] for s in series])
    if finite_x.size == 0 or finite_y.size == 0:
        raise ValueError("series contain no finite samples")
    x_lo, x_hi = float(finite_x.min()), float(finite_x.max())
    y_lo, y_hi = float(finite_y.min()), float(finite_y.max())
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0
    if y_hi <= y_lo:
        pad = max(abs(y_lo), 1.0) * 0.1
        y_lo, y_hi = y_lo - pad, y_hi + pad
    else:
        pad = 0.05 * (y_hi - y_lo)
        y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = lay.width - lay.margin_left - lay.margin_right
    plot_h = lay.height - lay.margin_top - lay.margin_bottom

    def sx(x: float) -> float:
        return lay.margin_left + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return lay.margin_top + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{lay.width}" '
        f'height="{lay.height}" viewBox="0 0 {lay.width} {lay.height}">',
        f'<rect width="{lay.width}" height="{lay.height}" fill="white"/>',
        f'<text x="{lay.width / 2:.1f}" y="22" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]

    axis_style = 'stroke="#444" stroke-width="1"'
    grid_style = 'stroke="#ddd" stroke-width="0.7"'
    label_style = 'font-family="sans-serif" font-size="11" fill="#333"'

    for t in _nice_ticks(x_lo, x_hi):
        px = sx(t)
        parts.append(f'<line x1="{px:.1f}" y1="{lay.margin_top}" x2="{px:.1f}" '
                     f'y2="{lay.margin_top + plot_h}" {grid_style}/>')
        parts.append(f'<text x="{px:.1f}" y="{lay.margin_top + plot_h + 16}" '
                     f'text-anchor="middle" {label_style}>{_fmt(t)}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        py = sy(t)
        parts.append(f'<line x1="{lay.margin_left}" y1="{py:.1f}" '
                     f'x2="{lay.margin_left + plot_w}" y2="{py:.1f}" {grid_style}/>')
        parts.append(f'<text x="{lay.margin_left - 6}" y="{py + 4:.1f}" '
                     f'text-anchor="end" {label_style}>{_fmt(t)}</text>')

    parts.append(f'<rect x="{lay.margin_left}" y="{lay.margin_top}" width="{plot_w}" '
                 f'height="{plot_h}" fill="none" {axis_style}/>')
    parts.append(f'<text x="{lay.margin_left + plot_w / 2:.1f}" '
                 f'y="{lay.height - 10}" text-anchor="middle" {label_style}>'
                 f'{xlabel}</text>')
    parts.append(f'<text x="16" y="{lay.margin_top + plot_h / 2:.1f}" '
                 f'text-anchor="middle" {label_style} '
                 f'transform="rotate(-90 16 {lay.margin_top + plot_h / 2:.1f})">'
                 f'{ylabel}</text>')

    for i, s in enumerate(series):
        color = lay.colors[i % len(lay.colors)]
        ok = np.isfinite(s.x) & np.isfinite(s.y)
        pts = " ".join(f"{sx(px):.2f},{sy(py):.2f}"
                       for px, py in zip(s.x[ok], s.y[ok]))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="{lay.stroke_width}"/>')
        lx = lay.margin_left + plot_w - 150
        ly = lay.margin_top + 14 + 16 * i
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 28}" y="{ly}" {label_style}>{s.label}</text>')

    parts.append("</svg>")
    return "\n".join(parts)


def write_chart(path, series: Sequence[Series], title: str, xlabel: str,
                ylabel: str, layout: Optional[ChartLayout] = None,
                max_points: int = 3000) -> None:
    """Write a chart to ``path``, decimating long series for file size."""
    thinned = []
    for s in series:
        if s.x.size > max_points:
            idx = np.linspace(0, s.x.size - 1, max_points).astype(int)
            thinned.append(Series(s.x[idx], s.y[idx], s.label))
        else:
            thinned.append(s)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_chart(thinned, title, xlabel, ylabel, layout))
