"""Static SVG rendering of curves and phase-diagram heat maps.

Hand-rolled SVG with fixed-precision coordinates, so identical input data
produces byte-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

WIDTH, HEIGHT = 640, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 72, 16, 16, 48

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
# three-stop gradient, dark violet -> teal -> yellow
HEAT_STOPS = ((68, 1, 84), (33, 145, 140), (253, 231, 37))


def _c(x: float) -> str:
    return "%.2f" % x


def _tick(x: float) -> str:
    return "%.4g" % x


def _span(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


class _Canvas:
    def __init__(self):
        self.parts: list[str] = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        ]

    def add(self, element: str) -> None:
        self.parts.append(element)

    def text(
        self, x: float, y: float, s: str, anchor: str = "middle", rotate: bool = False
    ) -> None:
        transform = (
            f' transform="rotate(-90 {_c(x)} {_c(y)})"' if rotate else ""
        )
        self.add(
            f'<text x="{_c(x)}" y="{_c(y)}" font-family="sans-serif" '
            f'font-size="12" text-anchor="{anchor}"{transform}>{s}</text>'
        )

    def line(self, x1: float, y1: float, x2: float, y2: float) -> None:
        self.add(
            f'<line x1="{_c(x1)}" y1="{_c(y1)}" x2="{_c(x2)}" y2="{_c(y2)}" '
            'stroke="black" stroke-width="1"/>'
        )

    def write(self, path: str | Path) -> None:
        self.parts.append("</svg>")
        Path(path).write_text("\n".join(self.parts) + "\n")


def _mappers(xlo, xhi, ylo, yhi):
    x0, x1 = MARGIN_L, WIDTH - MARGIN_R
    y0, y1 = HEIGHT - MARGIN_B, MARGIN_T

    def px(x: float) -> float:
        return x0 + (x - xlo) / (xhi - xlo) * (x1 - x0)

    def py(y: float) -> float:
        return y0 + (y - ylo) / (yhi - ylo) * (y1 - y0)

    return px, py


def _draw_axes(canvas: _Canvas, px, py, xlo, xhi, ylo, yhi, xlabel: str, ylabel: str):
    """Frame, five ticks per axis, and axis labels."""
    x0, x1 = MARGIN_L, WIDTH - MARGIN_R
    y0, y1 = HEIGHT - MARGIN_B, MARGIN_T
    canvas.line(x0, y0, x1, y0)
    canvas.line(x0, y0, x0, y1)
    for k in range(5):
        xv = xlo + (xhi - xlo) * k / 4
        yv = ylo + (yhi - ylo) * k / 4
        canvas.line(px(xv), y0, px(xv), y0 + 4)
        canvas.text(px(xv), y0 + 18, _tick(xv))
        canvas.line(x0 - 4, py(yv), x0, py(yv))
        canvas.text(x0 - 8, py(yv) + 4, _tick(yv), anchor="end")
    canvas.text((x0 + x1) / 2, HEIGHT - 10, xlabel)
    canvas.text(18, (y0 + y1) / 2, ylabel, rotate=True)


def render_curves_svg(
    path: str | Path,
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    xlabel: str,
    ylabel: str,
) -> None:
    """Line plot with one polyline and one legend entry per labelled series."""
    if not series or any(len(xs) == 0 for _, xs, _ in series):
        raise ValueError("need at least one non-empty series")
    canvas = _Canvas()
    xlo, xhi = _span([x for _, xs, _ in series for x in xs])
    ylo, yhi = _span([y for _, _, ys in series for y in ys])
    px, py = _mappers(xlo, xhi, ylo, yhi)
    _draw_axes(canvas, px, py, xlo, xhi, ylo, yhi, xlabel, ylabel)
    for k, (label, xs, ys) in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{_c(px(x))},{_c(py(y))}" for x, y in zip(xs, ys))
        canvas.add(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        ly = MARGIN_T + 16 + 16 * k
        lx = WIDTH - MARGIN_R - 130
        canvas.add(
            f'<line x1="{_c(lx)}" y1="{_c(ly - 4)}" x2="{_c(lx + 24)}" '
            f'y2="{_c(ly - 4)}" stroke="{color}" stroke-width="1.5"/>'
        )
        canvas.text(lx + 30, ly, label, anchor="start")
    canvas.write(path)


def _heat_color(t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    if t <= 0.5:
        a, b, u = HEAT_STOPS[0], HEAT_STOPS[1], 2.0 * t
    else:
        a, b, u = HEAT_STOPS[1], HEAT_STOPS[2], 2.0 * t - 1.0
    rgb = tuple(round(ca + (cb - ca) * u) for ca, cb in zip(a, b))
    return "#%02x%02x%02x" % rgb


def render_heatmap_svg(
    path: str | Path,
    x_centers: Sequence[float],
    y_centers: Sequence[float],
    values: Sequence[Sequence[float]],
    xlabel: str,
    ylabel: str,
) -> None:
    """Rectangular heat map: values[i][j] at (x_centers[i], y_centers[j]).

    One rect per grid cell, colored on a fixed gradient scaled to the data
    range.
    """
    if not x_centers or not y_centers:
        raise ValueError("need non-empty grids")
    if len(values) != len(x_centers) or any(
        len(row) != len(y_centers) for row in values
    ):
        raise ValueError("values must have shape (len(x_centers), len(y_centers))")
    flat = [v for row in values for v in row]
    vlo, vhi = min(flat), max(flat)
    scale = (vhi - vlo) if vhi > vlo else 1.0

    def edges(centers: Sequence[float]) -> list[float]:
        if len(centers) == 1:
            return [centers[0] - 0.5, centers[0] + 0.5]
        mids = [(a + b) / 2 for a, b in zip(centers, centers[1:])]
        first = centers[0] - (mids[0] - centers[0])
        last = centers[-1] + (centers[-1] - mids[-1])
        return [first, *mids, last]

    xe, ye = edges(list(x_centers)), edges(list(y_centers))
    canvas = _Canvas()
    px, py = _mappers(xe[0], xe[-1], ye[0], ye[-1])
    for i in range(len(x_centers)):
        for j in range(len(y_centers)):
            x, w = px(xe[i]), px(xe[i + 1]) - px(xe[i])
            y, h = py(ye[j + 1]), py(ye[j]) - py(ye[j + 1])
            color = _heat_color((values[i][j] - vlo) / scale)
            canvas.add(
                f'<rect x="{_c(x)}" y="{_c(y)}" width="{_c(w)}" '
                f'height="{_c(h)}" fill="{color}"/>'
            )
    _draw_axes(canvas, px, py, xe[0], xe[-1], ye[0], ye[-1], xlabel, ylabel)
    canvas.write(path)
