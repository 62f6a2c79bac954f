"""Static SVG line charts rendered straight from CSV files.

No plotting dependency: the chart is a standalone SVG 1.1 document built
from polylines, so every figure is reproducible from published CSV data
alone.  Values in a column named "gme" are clamped at zero for display
(the stored CSV keeps the raw bound, which may be negative).
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

WIDTH = 680
HEIGHT = 420
MARGIN_LEFT = 62.0
MARGIN_RIGHT = 180.0
MARGIN_TOP = 18.0
MARGIN_BOTTOM = 46.0

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


class PlotDataError(ValueError):
    """CSV input unusable for plotting (missing column, no rows)."""


def read_csv_columns(path: str | Path) -> dict[str, list[float]]:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise PlotDataError(f"{path}: empty CSV")
        columns: dict[str, list[float]] = {name: [] for name in reader.fieldnames}
        for row in reader:
            for name in reader.fieldnames:
                columns[name].append(float(row[name]))
    if not columns or not next(iter(columns.values())):
        raise PlotDataError(f"{path}: no data rows")
    return columns


def emit_svg_plot(csv_paths, columns, out_path: str | Path) -> Path:
    """Write one SVG containing a polyline per (csv file, column) pair.

    All CSVs must share a "tau" column, which becomes the x axis.
    """
    series = []
    for path in csv_paths:
        table = read_csv_columns(path)
        if "tau" not in table:
            raise PlotDataError(f"{path}: missing 'tau' column")
        taus = table["tau"]
        for column in columns:
            if column not in table:
                have = ", ".join(sorted(table))
                raise PlotDataError(f"{path}: missing column {column!r} (have: {have})")
            values = table[column]
            if column == "gme":
                values = [max(0.0, v) for v in values]  # display clamp only
            series.append((f"{Path(path).stem}:{column}", taus, values))

    xs = [x for _, taus, _ in series for x in taus]
    ys = [y for _, _, values in series for y in values]
    x_lo, x_hi = _expand(min(xs), max(xs))
    y_lo, y_hi = _expand(min(ys), max(ys))

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)

    def py(y: float) -> float:
        return HEIGHT - MARGIN_BOTTOM - (y - y_lo) / (y_hi - y_lo) * (
            HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]

    axis_style = 'stroke="black" stroke-width="1" fill="none"'
    x0, y0 = px(x_lo), py(y_lo)
    x1, y1 = px(x_hi), py(y_hi)
    parts.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}" {axis_style}/>')
    parts.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{y1:.2f}" {axis_style}/>')

    for tick in _ticks(x_lo, x_hi):
        tx = px(tick)
        parts.append(f'<line x1="{tx:.2f}" y1="{y0:.2f}" x2="{tx:.2f}" y2="{y0 + 5:.2f}" {axis_style}/>')
        parts.append(f'<text x="{tx:.2f}" y="{y0 + 18:.2f}" font-size="11" '
                     f'text-anchor="middle">{tick:g}</text>')
    for tick in _ticks(y_lo, y_hi):
        ty = py(tick)
        parts.append(f'<line x1="{x0 - 5:.2f}" y1="{ty:.2f}" x2="{x0:.2f}" y2="{ty:.2f}" {axis_style}/>')
        parts.append(f'<text x="{x0 - 8:.2f}" y="{ty + 4:.2f}" font-size="11" '
                     f'text-anchor="end">{tick:g}</text>')
    parts.append(f'<text x="{(x0 + x1) / 2:.2f}" y="{HEIGHT - 8}" font-size="12" '
                 f'text-anchor="middle">tau</text>')

    legend_x = WIDTH - MARGIN_RIGHT + 14.0
    for index, (label, taus, values) in enumerate(series):
        color = PALETTE[index % len(PALETTE)]
        if len(taus) == 1:
            parts.append(f'<circle cx="{px(taus[0]):.2f}" cy="{py(values[0]):.2f}" '
                         f'r="3" fill="{color}"/>')
        else:
            points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(taus, values))
            parts.append(f'<polyline points="{points}" fill="none" stroke="{color}" '
                         f'stroke-width="1.5"/>')
        ly = MARGIN_TOP + 14.0 + 18.0 * index
        parts.append(f'<line x1="{legend_x:.2f}" y1="{ly - 4:.2f}" '
                     f'x2="{legend_x + 22:.2f}" y2="{ly - 4:.2f}" '
                     f'stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{legend_x + 27:.2f}" y="{ly:.2f}" font-size="11">'
                     f'{_escape(label)}</text>')

    parts.append("</svg>")
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(parts) + "\n", encoding="utf-8", newline="\n")
    return out


def _expand(lo: float, hi: float) -> tuple[float, float]:
    if hi > lo:
        pad = 0.04 * (hi - lo)
        return lo - pad, hi + pad
    # flat series: open a unit window around the value
    return lo - 0.5, hi + 0.5


def _ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    """Roughly `target` ticks on a 1/2/2.5/5 x 10^k grid."""
    span = hi - lo
    raw = span / max(target - 1, 1)
    magnitude = 10.0 ** math.floor(math.log10(raw))
    step = 10.0 * magnitude
    for mult in (1.0, 2.0, 2.5, 5.0):
        if mult * magnitude >= raw:
            step = mult * magnitude
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + 1e-9 * span:
        ticks.append(0.0 if abs(value) < 1e-12 * span else value)
        value += step
    return ticks


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))
