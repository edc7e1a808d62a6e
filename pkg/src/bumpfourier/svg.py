"""Minimal, byte-deterministic SVG line plots with optional log axes."""

import math
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["emit_svg_lineplot", "render_svg_lineplot"]

_COLORS = ("#e66101", "#1f78b4", "#33a02c", "#6a3d9a", "#b15928", "#e31a1c")
_W, _H = 640, 420
_LEFT, _RIGHT, _TOP, _BOTTOM = 72, 160, 36, 52


def _fmt(v):
    return f"{v:.2f}"


def _nice_ticks(lo, hi, target=6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    start = math.ceil(lo / step - 1e-9) * step
    ticks = []
    v = start
    while v <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return ticks


def _tick_label(v, log):
    if log:
        return f"1e{int(round(v))}"
    return f"{v:.6g}"


def _axis(values, log, name):
    arr = np.asarray(values, dtype=float)
    if log:
        if np.any(arr <= 0):
            raise ValueError(f"non-positive value on log-scaled {name} axis")
        arr = np.log10(arr)
    return arr


def render_svg_lineplot(series, log_x=False, log_y=False, title="", xlabel="", ylabel=""):
    """Return the SVG document as a string. See :func:`emit_svg_lineplot`."""
    if not series:
        raise ValueError("no series to plot")
    prepared = []
    for name, (x, y) in series.items():
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.size == 0 or x.shape != y.shape:
            raise ValueError(f"series {name!r} is empty or has mismatched x/y")
        prepared.append((name, _axis(x, log_x, "x"), _axis(y, log_y, "y")))

    xs = np.concatenate([p[1] for p in prepared])
    ys = np.concatenate([p[2] for p in prepared])
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    if log_x:
        x_lo, x_hi = math.floor(x_lo), math.ceil(x_hi)
    if log_y:
        y_lo, y_hi = math.floor(y_lo), math.ceil(y_hi)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM

    def px(v):
        return _LEFT + (v - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return _TOP + ph - (v - y_lo) / (y_hi - y_lo) * ph

    def ticks(lo, hi, log):
        if log:
            step = max(1, math.ceil((hi - lo) / 10))
            return [float(d) for d in range(int(lo), int(hi) + 1, step)]
        return _nice_ticks(lo, hi)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<rect x="{_LEFT}" y="{_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for v in ticks(x_lo, x_hi, log_x):
        X = px(v)
        out.append(f'<line x1="{_fmt(X)}" y1="{_TOP + ph}" x2="{_fmt(X)}" y2="{_TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{_fmt(X)}" y="{_TOP + ph + 18}" text-anchor="middle">'
                   f'{escape(_tick_label(v, log_x))}</text>')
    for v in ticks(y_lo, y_hi, log_y):
        Y = py(v)
        out.append(f'<line x1="{_LEFT - 5}" y1="{_fmt(Y)}" x2="{_LEFT}" y2="{_fmt(Y)}" stroke="black"/>')
        out.append(f'<text x="{_LEFT - 8}" y="{_fmt(Y + 4)}" text-anchor="end">'
                   f'{escape(_tick_label(v, log_y))}</text>')
    if title:
        out.append(f'<text x="{_LEFT + pw / 2:.2f}" y="20" text-anchor="middle" font-size="13">'
                   f'{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{_LEFT + pw / 2:.2f}" y="{_H - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(f'<text x="16" y="{_TOP + ph / 2:.2f}" text-anchor="middle" '
                   f'transform="rotate(-90 16 {_TOP + ph / 2:.2f})">{escape(ylabel)}</text>')
    for i, (name, x, y) in enumerate(prepared):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(x, y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>')
        ly = _TOP + 14 + 16 * i
        lx = _W - _RIGHT + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly + 4}">{escape(str(name))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_lineplot(series, path, log_x=False, log_y=False, title="", xlabel="", ylabel=""):
    """Write a line plot of named ``(x, y)`` series to ``path``.

    Raises
    ------
    ValueError
        For an empty ``series`` or a non-positive value on a log axis.
    """
    text = render_svg_lineplot(series, log_x, log_y, title, xlabel, ylabel)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path
