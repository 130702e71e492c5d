"""Self-contained deterministic SVG charts for experiment reports.

Three kinds: ``line_by_scale`` (metric value vs scale factor, one line per
label/metric), ``grouped_bars`` (one bar per label/metric, using the
report's first transform column when present, raw values otherwise), and
``box_by_group`` (value distributions per group and metric; a row label of
the form ``group:member`` contributes to box group ``group``).

Output is byte-deterministic for identical reports: no timestamps, no
generated ids, fixed float formatting.
"""
from __future__ import annotations

import math
from pathlib import Path
from typing import Literal

import numpy as np

from .core import DataError
from .report import ExperimentReport

__all__ = ["write_plot", "render_plot"]

PlotKind = Literal["line_by_scale", "grouped_bars", "box_by_group"]

_W, _H = 720, 440
_ML, _MR, _MT, _MB = 64, 168, 28, 52
_PW, _PH = _W - _ML - _MR, _H - _MT - _MB

_LINE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                "#9467bd", "#8c564b", "#17becf", "#7f7f7f")
# box plots follow the group-comparison convention: first group red, second blue
_BOX_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e")


def _esc(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace('"', "&quot;"))


class _Svg:
    def __init__(self, width: int, height: int):
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        ]

    def line(self, x1, y1, x2, y2, stroke="#000000", width=1.0):
        self.parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{stroke}" stroke-width="{width:.2f}"/>')

    def rect(self, x, y, w, h, fill, stroke="none"):
        self.parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" '
            f'fill="{fill}" stroke="{stroke}"/>')

    def circle(self, cx, cy, r, fill):
        self.parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="{fill}"/>')

    def polyline(self, points, stroke, width=1.5):
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        self.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width:.2f}"/>')

    def text(self, x, y, content, size=11, anchor="start", fill="#000000"):
        self.parts.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-size="{size}" text-anchor="{anchor}" '
            f'fill="{fill}">{_esc(content)}</text>')

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _y_range(values: list[float]) -> tuple[float, float]:
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        raise DataError("no finite values to plot")
    lo, hi = min(finite), max(finite)
    if lo == hi:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _y_axis(svg: _Svg, lo: float, hi: float):
    def to_y(v):
        return _MT + _PH * (1.0 - (v - lo) / (hi - lo))

    svg.line(_ML, _MT, _ML, _MT + _PH, "#333333")
    for tick in np.linspace(lo, hi, 5):
        y = to_y(tick)
        svg.line(_ML - 4, y, _ML, y, "#333333")
        svg.text(_ML - 8, y + 3.5, f"{tick:.4g}", size=10, anchor="end")
    return to_y


def render_plot(report: ExperimentReport, kind: PlotKind) -> str:
    if not report.rows:
        raise DataError("empty report")
    if kind == "line_by_scale":
        return _render_lines(report)
    if kind == "grouped_bars":
        return _render_bars(report)
    if kind == "box_by_group":
        return _render_boxes(report)
    raise ValueError(f"unknown plot kind: {kind!r}")


def write_plot(report: ExperimentReport, kind: PlotKind, path: str | Path) -> None:
    Path(path).write_text(render_plot(report, kind), encoding="utf-8")


def _render_lines(report: ExperimentReport) -> str:
    scales = sorted({r.scale for r in report.rows})
    if len(scales) < 2:
        raise DataError("line_by_scale needs rows at two or more scales")
    svg = _Svg(_W, _H)
    lo, hi = _y_range([r.value for r in report.rows])
    to_y = _y_axis(svg, lo, hi)
    # x axis positioned by scale value, not index
    smin, smax = scales[0], scales[-1]
    span = (smax - smin) or 1

    def to_x(s):
        return _ML + _PW * (s - smin) / span

    svg.line(_ML, _MT + _PH, _ML + _PW, _MT + _PH, "#333333")
    for s in scales:
        x = to_x(s)
        svg.line(x, _MT + _PH, x, _MT + _PH + 4, "#333333")
        svg.text(x, _MT + _PH + 16, str(s), size=10, anchor="middle")
    svg.text(_ML + _PW / 2, _H - 12, "scale factor", size=11, anchor="middle")

    keys = []
    for r in report.rows:
        k = (r.label, r.metric)
        if k not in keys:
            keys.append(k)
    multi_metric = len({m for _, m in keys}) > 1
    for i, (label, metric) in enumerate(keys):
        pts = [(to_x(r.scale), to_y(r.value)) for r in report.rows
               if r.label == label and r.metric == metric and math.isfinite(r.value)]
        color = _LINE_COLORS[i % len(_LINE_COLORS)]
        svg.polyline(pts, color)
        for x, y in pts:
            svg.circle(x, y, 2.4, color)
        name = f"{label} / {metric}" if multi_metric else label
        ly = _MT + 14 + 16 * i
        svg.line(_ML + _PW + 10, ly - 4, _ML + _PW + 30, ly - 4, color, 2.0)
        svg.text(_ML + _PW + 36, ly, name, size=10)
    return svg.render()


def _render_bars(report: ExperimentReport) -> str:
    labels = report.labels()
    metrics = report.metrics()
    if report.transforms:
        column = next(iter(report.transforms))
        raw = report.transforms[column]
        y_label = column
    else:
        raw = [r.value for r in report.rows]
        y_label = "value"
    # one bar per (label, metric); first occurrence wins if scales repeat
    heights: dict[tuple[str, str], float] = {}
    for row, v in zip(report.rows, raw):
        heights.setdefault((row.label, row.metric), float(v))
    svg = _Svg(_W, _H)
    vals = [v for v in heights.values() if math.isfinite(v)]
    lo, hi = _y_range(vals + [0.0])
    to_y = _y_axis(svg, lo, hi)
    svg.line(_ML, _MT + _PH, _ML + _PW, _MT + _PH, "#333333")
    group_w = _PW / len(labels)
    bar_w = group_w * 0.8 / max(len(metrics), 1)
    y0 = to_y(0.0)
    for gi, label in enumerate(labels):
        gx = _ML + gi * group_w
        svg.text(gx + group_w / 2, _MT + _PH + 16, label, size=10, anchor="middle")
        for mi, metric in enumerate(metrics):
            v = heights.get((label, metric))
            if v is None or not math.isfinite(v):
                continue
            x = gx + group_w * 0.1 + mi * bar_w
            y = to_y(v)
            top, height = (y, y0 - y) if v >= 0 else (y0, y - y0)
            svg.rect(x, top, bar_w * 0.92, height, _LINE_COLORS[mi % len(_LINE_COLORS)])
    for mi, metric in enumerate(metrics):
        ly = _MT + 14 + 16 * mi
        svg.rect(_ML + _PW + 10, ly - 9, 12, 10, _LINE_COLORS[mi % len(_LINE_COLORS)])
        svg.text(_ML + _PW + 28, ly, metric, size=10)
    svg.text(14, _MT + 10, y_label, size=10)
    return svg.render()


def _group_of(label: str) -> str:
    return label.split(":", 1)[0]


def _render_boxes(report: ExperimentReport) -> str:
    groups: dict[tuple[str, str], list[float]] = {}
    for r in report.rows:
        if math.isfinite(r.value):
            groups.setdefault((_group_of(r.label), r.metric), []).append(r.value)
    if not groups:
        raise DataError("no finite values to plot")
    group_names = []
    metric_names = []
    for g, m in groups:
        if g not in group_names:
            group_names.append(g)
        if m not in metric_names:
            metric_names.append(m)
    svg = _Svg(_W, _H)
    lo, hi = _y_range([v for vals in groups.values() for v in vals])
    to_y = _y_axis(svg, lo, hi)
    svg.line(_ML, _MT + _PH, _ML + _PW, _MT + _PH, "#333333")
    slots = [(m, g) for m in metric_names for g in group_names if (g, m) in groups]
    slot_w = _PW / len(slots)
    for si, (metric, group) in enumerate(slots):
        vals = np.array(sorted(groups[(group, metric)]))
        q1, med, q3 = (float(np.percentile(vals, q)) for q in (25, 50, 75))
        iqr = q3 - q1
        lo_w = float(vals[vals >= q1 - 1.5 * iqr].min())
        hi_w = float(vals[vals <= q3 + 1.5 * iqr].max())
        color = _BOX_COLORS[group_names.index(group) % len(_BOX_COLORS)]
        cx = _ML + slot_w * (si + 0.5)
        bw = slot_w * 0.5
        svg.line(cx, to_y(lo_w), cx, to_y(q1), color)
        svg.line(cx, to_y(q3), cx, to_y(hi_w), color)
        svg.line(cx - bw / 4, to_y(lo_w), cx + bw / 4, to_y(lo_w), color)
        svg.line(cx - bw / 4, to_y(hi_w), cx + bw / 4, to_y(hi_w), color)
        svg.rect(cx - bw / 2, to_y(q3), bw, to_y(q1) - to_y(q3), "none", color)
        svg.line(cx - bw / 2, to_y(med), cx + bw / 2, to_y(med), color, 2.0)
        for v in vals[(vals < q1 - 1.5 * iqr) | (vals > q3 + 1.5 * iqr)]:
            svg.circle(cx, to_y(float(v)), 2.0, color)
        label = f"{metric}" if len(group_names) > 1 else f"{group} {metric}"
        svg.text(cx, _MT + _PH + 16, label, size=10, anchor="middle")
    for gi, group in enumerate(group_names):
        ly = _MT + 14 + 16 * gi
        svg.rect(_ML + _PW + 10, ly - 9, 12, 10, _BOX_COLORS[gi % len(_BOX_COLORS)])
        svg.text(_ML + _PW + 28, ly, group, size=10)
    return svg.render()
