"""Minimal self-contained SVG line plots.

Hand-rolled on purpose: the figures are simple ratio curves with error
bars, and emitting the SVG directly keeps files tiny, byte-deterministic,
and free of external references.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 64, 20, 36, 48
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass
class Series:
    x: Sequence[float]
    y: Sequence[float]
    label: str = ""
    yerr: Optional[Sequence[float]] = None
    dashed: bool = False
    markers: bool = True


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def line_plot_svg(
    path,
    series: Sequence[Series],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
):
    """Write a fixed-size line plot with axes, ticks, legend, and optional
    error bars."""
    xs = np.concatenate([np.asarray(s.x, dtype=float) for s in series])
    ys = []
    for s in series:
        y = np.asarray(s.y, dtype=float)
        ys.append(y)
        if s.yerr is not None:
            e = np.asarray(s.yerr, dtype=float)
            ys.extend([y - e, y + e])
    ys = np.concatenate(ys)
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def sx(v):
        return _ML + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(v):
        return _MT + (1.0 - (v - y_lo) / (y_hi - y_lo)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>',
    ]
    if title:
        out.append(f'<text x="{_W / 2:.1f}" y="20" text-anchor="middle" font-size="14">{title}</text>')

    for i in range(6):
        xv = x_lo + i * (x_hi - x_lo) / 5
        yv = y_lo + i * (y_hi - y_lo) / 5
        xp, yp = sx(xv), sy(yv)
        out.append(f'<line x1="{xp:.1f}" y1="{_MT + ph}" x2="{xp:.1f}" y2="{_MT + ph + 4}" stroke="#333"/>')
        out.append(f'<text x="{xp:.1f}" y="{_MT + ph + 16}" text-anchor="middle">{_fmt(xv)}</text>')
        out.append(f'<line x1="{_ML - 4}" y1="{yp:.1f}" x2="{_ML}" y2="{yp:.1f}" stroke="#333"/>')
        out.append(f'<text x="{_ML - 6}" y="{yp + 4:.1f}" text-anchor="end">{_fmt(yv)}</text>')
    if xlabel:
        out.append(f'<text x="{_ML + pw / 2:.1f}" y="{_H - 10}" text-anchor="middle">{xlabel}</text>')
    if ylabel:
        out.append(
            f'<text x="16" y="{_MT + ph / 2:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {_MT + ph / 2:.1f})">{ylabel}</text>'
        )

    for si, s in enumerate(series):
        color = _COLORS[si % len(_COLORS)]
        x = np.asarray(s.x, dtype=float)
        y = np.asarray(s.y, dtype=float)
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
        dash = ' stroke-dasharray="6 4"' if s.dashed else ""
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>')
        if s.yerr is not None:
            for a, b, e in zip(x, y, np.asarray(s.yerr, dtype=float)):
                out.append(
                    f'<line x1="{sx(a):.2f}" y1="{sy(b - e):.2f}" x2="{sx(a):.2f}" '
                    f'y2="{sy(b + e):.2f}" stroke="{color}" stroke-width="1"/>'
                )
        if s.markers:
            for a, b in zip(x, y):
                out.append(f'<circle cx="{sx(a):.2f}" cy="{sy(b):.2f}" r="2.5" fill="{color}"/>')
        if s.label:
            ly = _MT + 14 + 16 * si
            out.append(f'<line x1="{_ML + 8}" y1="{ly - 4}" x2="{_ML + 28}" y2="{ly - 4}" stroke="{color}" stroke-width="1.5"{dash}/>')
            out.append(f'<text x="{_ML + 32}" y="{ly}">{s.label}</text>')

    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")
