"""Minimal static SVG rendering of Lorenz curves.

A convenience view only; the CSV files are the data of record.
"""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

from pie.lorenz import LorenzCurve

SIZE = 800
MARGIN = 60
MAX_POINTS = 400

COLORS = {
    "natural": "#1f77b4",
    "income": "#e6b800",
    "income_post_tax": "#2ca02c",
    "wealth": "#ff7f0e",
}


def _xy(p: float, r: float) -> tuple[float, float]:
    span = SIZE - 2 * MARGIN
    return MARGIN + p * span, SIZE - MARGIN - r * span


def _thin(curve: LorenzCurve) -> list[tuple[float, float]]:
    pts = curve.points
    if len(pts) <= MAX_POINTS:
        return pts
    step = (len(pts) - 1) / (MAX_POINTS - 1)
    return [pts[round(i * step)] for i in range(MAX_POINTS)]


def lorenz_svg(series: Sequence[tuple[str, str, LorenzCurve]], title: str = "Lorenz curves") -> str:
    """Render ``(label, category, curve)`` triples as one SVG document."""
    lo, hi = MARGIN, SIZE - MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<text x="{SIZE / 2:.0f}" y="30" text-anchor="middle" font-family="sans-serif" font-size="20">{escape(title)}</text>',
        f'<rect x="{lo}" y="{lo}" width="{hi - lo}" height="{hi - lo}" fill="none" stroke="#888"/>',
        f'<line x1="{lo}" y1="{hi}" x2="{hi}" y2="{lo}" stroke="#d62728" stroke-width="2"/>',
        f'<text x="{SIZE / 2:.0f}" y="{SIZE - 20}" text-anchor="middle" font-family="sans-serif" font-size="14">cumulative share of population</text>',
        f'<text x="20" y="{SIZE / 2:.0f}" text-anchor="middle" font-family="sans-serif" font-size="14" '
        f'transform="rotate(-90 20 {SIZE / 2:.0f})">cumulative share of resource</text>',
    ]
    for label, category, curve in series:
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (_xy(p, r) for p, r in _thin(curve)))
        color = COLORS.get(category, "#555555")
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}">'
            f"<title>{escape(label)}</title></polyline>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_lorenz_svg(series, path, title: str = "Lorenz curves") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(lorenz_svg(series, title))
