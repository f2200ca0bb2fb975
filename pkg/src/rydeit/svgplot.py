"""Minimal deterministic SVG line plots.

Hand-rolled on purpose: the output must be byte-identical for identical
inputs, which rules out plotting libraries that embed ids, hashes or dates.
Data series are drawn as <polyline> elements (axes and ticks use <line>), so
consumers can count series reliably.
"""

import math
from dataclasses import dataclass, field

_COLORS = ("#c62828", "#1565c0", "#2e7d32", "#ef6c00", "#6a1b9a", "#00838f",
           "#ad1457", "#4e342e")
_DASHES = ("none", "6,4", "2,3", "8,3,2,3")


@dataclass(frozen=True)
class PlotStyle:
    width: int = 640
    height: int = 480
    margin: int = 54
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    show_legend: bool = True
    series_names: tuple = field(default=())


def _fmt(v):
    return f"{v:.2f}"


def _nice_ticks(lo, hi, target=6):
    """Round tick positions covering [lo, hi]."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("non-finite axis range")
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    span = hi - lo
    step = 10.0 ** math.floor(math.log10(span / target))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if span / (step * mult) <= target:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * span:
        ticks.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return ticks


def emit_plot(columns, rows, style: PlotStyle | None = None) -> str:
    """Render a table as an SVG line chart.

    The first column is the x axis; every other column becomes one series
    with a distinct colour/dash style.  Raises ValueError on an empty table,
    fewer than two columns, or non-numeric cells.
    """
    style = style or PlotStyle()
    if not rows:
        raise ValueError("empty table: nothing to plot")
    if len(columns) < 2:
        raise ValueError("plot needs an x column and at least one y column")
    try:
        data = [[float(v) for v in row] for row in rows]
    except (TypeError, ValueError) as exc:
        raise ValueError(f"non-numeric table cell: {exc}") from None

    xs = [r[0] for r in data]
    n_series = len(columns) - 1
    finite_y = [r[k + 1] for r in data for k in range(n_series)
                if math.isfinite(r[k + 1])]
    if not finite_y:
        raise ValueError("no finite y values")
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(finite_y), max(finite_y)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_lo == y_hi:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.04 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    m = style.margin
    w, h = style.width, style.height
    px = lambda x: m + (x - x_lo) / (x_hi - x_lo) * (w - 2 * m)
    py = lambda y: h - m - (y - y_lo) / (y_hi - y_lo) * (h - 2 * m)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
        f'<rect x="{m}" y="{m}" width="{w - 2 * m}" height="{h - 2 * m}" '
        'fill="none" stroke="#444" stroke-width="1"/>',
    ]
    if style.title:
        parts.append(f'<text x="{w // 2}" y="{m - 16}" text-anchor="middle" '
                     f'font-size="14" font-family="sans-serif">{style.title}</text>')
    for t in _nice_ticks(x_lo, x_hi):
        x = px(t)
        parts.append(f'<line x1="{_fmt(x)}" y1="{h - m}" x2="{_fmt(x)}" '
                     f'y2="{h - m + 5}" stroke="#444" stroke-width="1"/>')
        parts.append(f'<text x="{_fmt(x)}" y="{h - m + 18}" text-anchor="middle" '
                     f'font-size="11" font-family="sans-serif">{t:g}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        y = py(t)
        parts.append(f'<line x1="{m - 5}" y1="{_fmt(y)}" x2="{m}" '
                     f'y2="{_fmt(y)}" stroke="#444" stroke-width="1"/>')
        parts.append(f'<text x="{m - 8}" y="{_fmt(y)}" text-anchor="end" '
                     f'dominant-baseline="middle" font-size="11" '
                     f'font-family="sans-serif">{t:g}</text>')
    if style.x_label:
        parts.append(f'<text x="{w // 2}" y="{h - 12}" text-anchor="middle" '
                     f'font-size="12" font-family="sans-serif">{style.x_label}</text>')
    if style.y_label:
        parts.append(f'<text x="14" y="{h // 2}" text-anchor="middle" '
                     f'font-size="12" font-family="sans-serif" '
                     f'transform="rotate(-90 14 {h // 2})">{style.y_label}</text>')

    names = style.series_names or tuple(columns[1:])
    for k in range(n_series):
        color = _COLORS[k % len(_COLORS)]
        dash = _DASHES[(k // len(_COLORS) + k) % len(_DASHES)]
        pts = " ".join(
            f"{_fmt(px(r[0]))},{_fmt(py(r[k + 1]))}"
            for r in data if math.isfinite(r[k + 1]))
        dash_attr = "" if dash == "none" else f' stroke-dasharray="{dash}"'
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'stroke-width="1.5"{dash_attr} points="{pts}"/>')
        if style.show_legend:
            ly = m + 14 + 16 * k
            lx = w - m - 150
            parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 26}" '
                         f'y2="{ly - 4}" stroke="{color}" stroke-width="1.5"'
                         f'{dash_attr}/>')
            parts.append(f'<text x="{lx + 32}" y="{ly}" font-size="11" '
                         f'font-family="sans-serif">{names[k]}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
