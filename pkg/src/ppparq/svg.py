"""Byte-stable SVG line charts from sweep rows.

Only string formatting is involved, so equal input gives equal bytes.
"""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .sweep import NUMERIC, SchemaError

WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 80, 190, 40, 60
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")
DASHES = ("", "6,4", "2,3", "8,3,2,3")


def _num(x: float) -> str:
    return f"{x:.2f}"


def _label(x: float) -> str:
    return format(x, ".3g")


class _Axis:
    def __init__(self, lo, hi, log, pix_lo, pix_hi):
        if log:
            lo, hi = math.log10(lo), math.log10(hi)
        if hi == lo:
            lo, hi = lo - 0.5, hi + 0.5
        self.lo, self.hi, self.log = lo, hi, log
        self.pix_lo, self.pix_hi = pix_lo, pix_hi

    def __call__(self, v):
        t = math.log10(v) if self.log else v
        return self.pix_lo + (t - self.lo) / (self.hi - self.lo) * (self.pix_hi - self.pix_lo)

    def ticks(self):
        if self.log:
            return [10.0**e for e in range(math.ceil(self.lo - 1e-9), math.floor(self.hi + 1e-9) + 1)]
        raw = (self.hi - self.lo) / 5
        step = 10 ** math.floor(math.log10(raw))
        for mult in (1, 2, 5, 10):
            if raw <= mult * step:
                step *= mult
                break
        first = math.ceil(self.lo / step)
        return [k * step for k in range(first, int(math.floor(self.hi / step)) + 1)]


def _series_label(axis: str, series: float, mode: str) -> str:
    other = "epsilon" if axis == "lambda" else "lambda"
    return f"{other}={_label(series)} {mode}"


def render_svg(rows, y: str, logx: bool = True, logy: bool = True, title: str = "") -> str:
    """One polyline per (series, mode) group, in order of first appearance."""
    if not rows:
        raise SchemaError("no rows to plot")
    if y not in NUMERIC:
        raise SchemaError(f"unknown y column {y!r}; choose from {', '.join(NUMERIC)}")
    axis = rows[0].axis
    groups: dict = {}
    for r in rows:
        if r.axis != axis:
            raise SchemaError("rows mix different sweep axes")
        yv = getattr(r, y)
        if not math.isfinite(yv) or (logy and yv <= 0) or (logx and r.value <= 0):
            continue
        groups.setdefault((r.series, r.mode), []).append((r.value, yv))
    pts = [p for g in groups.values() for p in g]
    if not pts:
        raise SchemaError(f"column {y!r} has no plottable values")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    fx = _Axis(min(xs), max(xs), logx, LEFT, WIDTH - RIGHT)
    fy = _Axis(min(ys), max(ys), logy, HEIGHT - BOTTOM, TOP)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{WIDTH - LEFT - RIGHT}" height="{HEIGHT - TOP - BOTTOM}" '
        'fill="none" stroke="black"/>',
    ]
    for t in fx.ticks():
        px = _num(fx(t))
        out.append(f'<line x1="{px}" y1="{HEIGHT - BOTTOM}" x2="{px}" y2="{HEIGHT - BOTTOM + 5}" stroke="black"/>')
        out.append(f'<text x="{px}" y="{HEIGHT - BOTTOM + 18}" text-anchor="middle">{_label(t)}</text>')
    for t in fy.ticks():
        py = _num(fy(t))
        out.append(f'<line x1="{LEFT - 5}" y1="{py}" x2="{LEFT}" y2="{py}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{py}" text-anchor="end" dominant-baseline="middle">{_label(t)}</text>')
    cx = _num((LEFT + WIDTH - RIGHT) / 2)
    cy = _num((TOP + HEIGHT - BOTTOM) / 2)
    out.append(f'<text x="{cx}" y="{HEIGHT - 15}" text-anchor="middle">{escape(axis)}</text>')
    out.append(f'<text x="20" y="{cy}" text-anchor="middle" transform="rotate(-90 20 {cy})">{escape(y)}</text>')
    if title:
        out.append(f'<text x="{cx}" y="24" text-anchor="middle" font-size="14">{escape(title)}</text>')

    for i, ((series, mode), g) in enumerate(groups.items()):
        color = PALETTE[i % len(PALETTE)]
        dash = DASHES[(i // len(PALETTE)) % len(DASHES)] if mode != "unlimited" else "4,2"
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        coords = " ".join(f"{_num(fx(x))},{_num(fy(v))}" for x, v in g)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{coords}"/>')
        ly = TOP + 10 + 16 * i
        lx = WIDTH - RIGHT + 10
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="1.5"{dash_attr}/>')
        out.append(f'<text x="{lx + 30}" y="{ly}" dominant-baseline="middle">'
                   f'{escape(_series_label(axis, series, mode))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
