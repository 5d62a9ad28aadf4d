"""Deterministic SVG and CSV emission for sampled curves.

All numbers are written at 17 significant digits with LF newlines, so a
curve renders to byte-identical output on every run. The world-to-canvas
map is a uniform scale plus translation (y flipped so counterclockwise
stays counterclockwise on screen); aspect ratio is never distorted.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field

from ._fmt import fmt
from .analysis import StressMarker
from .pseudospiral import CurveSample, Pose, SampledCurve

__all__ = [
    "EmptyInput",
    "OrnamentSpec",
    "PlotSpec",
    "curve_from_rows",
    "export_csv",
    "ornament_svg",
    "parse_csv",
    "plot_svg",
]

_HEADER_2D = "s,x,y,theta,kappa"
_HEADER_3D = "s,x,y,z,tx,ty,tz"


class EmptyInput(ValueError):
    """Nothing to render."""


@dataclass(frozen=True)
class PlotSpec:
    """Curves plus canvas geometry for a line plot.

    stroke_widths emits one path per (curve, width) pair, widths kept in
    the given order. annotations maps curve indices to stress markers,
    drawn as arrows. axes draws the world axes when set.
    """

    curves: tuple
    size: tuple = (800, 600)
    margin: float = 40.0
    stroke_widths: tuple = (1.0,)
    annotations: tuple = ()
    axes: bool = False

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        widths = tuple(float(w) for w in self.stroke_widths)
        if not widths or any(w <= 0.0 for w in widths):
            raise ValueError("stroke_widths must be nonempty and positive")
        w, h = self.size
        if not (w > 0 and h > 0):
            raise ValueError("canvas dimensions must be positive")
        object.__setattr__(self, "stroke_widths", widths)
        object.__setattr__(self, "annotations", tuple(self.annotations))


@dataclass(frozen=True)
class OrnamentSpec:
    """Primitives repeated along a path at uniform arc-length stations.

    size_rule "constant" uses size_base * rhythm; the rule
    "proportional_to_radius_of_curvature" multiplies in the local 1/kappa.
    rhythm cycles over stations, palette cycles over fill colors.
    """

    path: SampledCurve
    primitive: str = "circle"
    count: int = 10
    size_base: float = 1.0
    size_rule: str = "constant"
    rhythm: tuple = (1.0,)
    palette: tuple = ("#000000",)
    size: tuple = (800, 600)
    margin: float = 40.0

    def __post_init__(self):
        if self.primitive not in ("circle", "square", "triangle"):
            raise ValueError(f"unknown primitive {self.primitive!r}")
        if self.size_rule not in ("constant", "proportional_to_radius_of_curvature"):
            raise ValueError(f"unknown size rule {self.size_rule!r}")
        if self.count < 1:
            raise EmptyInput("count must be at least 1")
        if not self.size_base > 0.0:
            raise ValueError("size_base must be positive")
        rhythm = tuple(float(r) for r in self.rhythm)
        palette = tuple(str(c) for c in self.palette)
        if not rhythm or any(r <= 0.0 for r in rhythm):
            raise ValueError("rhythm must be nonempty and positive")
        if not palette:
            raise ValueError("palette must be nonempty")
        object.__setattr__(self, "rhythm", rhythm)
        object.__setattr__(self, "palette", palette)


class _CanvasMap:
    """Uniform-scale world-to-canvas transform fitting a bounding box."""

    def __init__(self, points, size, margin):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = min(ys), max(ys)
        w, h = size
        span_x = x_hi - x_lo
        span_y = y_hi - y_lo
        avail_x = w - 2.0 * margin
        avail_y = h - 2.0 * margin
        if avail_x <= 0.0 or avail_y <= 0.0:
            raise ValueError("margin leaves no drawable area")
        candidates = []
        if span_x > 0.0:
            candidates.append(avail_x / span_x)
        if span_y > 0.0:
            candidates.append(avail_y / span_y)
        self.k = min(candidates) if candidates else 1.0
        self.cx = 0.5 * (x_lo + x_hi)
        self.cy = 0.5 * (y_lo + y_hi)
        self.ox = 0.5 * w
        self.oy = 0.5 * h

    def point(self, x, y):
        return (
            self.ox + self.k * (x - self.cx),
            self.oy - self.k * (y - self.cy),
        )

    def angle(self, theta):
        return -theta  # y flip reverses angles


def _svg_open(size):
    w, h = size
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fmt(w)}" height="{fmt(h)}" '
        f'viewBox="0 0 {fmt(w)} {fmt(h)}">'
    )


def _path_d(canvas_points):
    parts = [f"M {fmt(canvas_points[0][0])} {fmt(canvas_points[0][1])}"]
    parts.extend(f"L {fmt(x)} {fmt(y)}" for x, y in canvas_points[1:])
    return " ".join(parts)


def _arrow(tip, angle, length, color):
    """Arrow pointing at tip from direction angle (canvas radians)."""
    ax = tip[0] - length * math.cos(angle)
    ay = tip[1] - length * math.sin(angle)
    head = 0.25 * length
    left = (
        tip[0] - head * math.cos(angle - 0.4),
        tip[1] - head * math.sin(angle - 0.4),
    )
    right = (
        tip[0] - head * math.cos(angle + 0.4),
        tip[1] - head * math.sin(angle + 0.4),
    )
    line = (
        f'<path d="M {fmt(ax)} {fmt(ay)} L {fmt(tip[0])} {fmt(tip[1])}" '
        f'fill="none" stroke="{color}" stroke-width="1.5"/>'
    )
    tri = (
        f'<polygon points="{fmt(tip[0])},{fmt(tip[1])} '
        f'{fmt(left[0])},{fmt(left[1])} {fmt(right[0])},{fmt(right[1])}" '
        f'fill="{color}"/>'
    )
    return line + "\n" + tri


def _interpolate(curve: SampledCurve, s: float) -> CurveSample:
    """Linear interpolation of a sample record at arc length s."""
    pts = curve.samples
    svals = [p.s for p in pts]
    if s <= svals[0]:
        return pts[0]
    if s >= svals[-1]:
        return pts[-1]
    j = bisect_right(svals, s)
    a, b = pts[j - 1], pts[j]
    f = (s - a.s) / (b.s - a.s)
    return CurveSample(
        s,
        a.x + f * (b.x - a.x),
        a.y + f * (b.y - a.y),
        a.theta + f * (b.theta - a.theta),
        a.kappa + f * (b.kappa - a.kappa),
    )


def plot_svg(spec: PlotSpec) -> str:
    """Render curves as polyline paths; deterministic byte-for-byte."""
    if not spec.curves:
        raise EmptyInput("no curves to plot")
    world = [(p.x, p.y) for c in spec.curves for p in c.samples]
    cmap = _CanvasMap(world, spec.size, spec.margin)

    lines = [_svg_open(spec.size)]
    if spec.axes:
        w, h = spec.size
        x0, y0 = cmap.point(0.0, 0.0)
        lines.append(
            f'<path d="M 0 {fmt(y0)} L {fmt(w)} {fmt(y0)} M {fmt(x0)} 0 '
            f'L {fmt(x0)} {fmt(h)}" fill="none" stroke="#888888" stroke-width="1"/>'
        )
    for curve in spec.curves:
        pts = [cmap.point(p.x, p.y) for p in curve.samples]
        d = _path_d(pts)
        for width in spec.stroke_widths:
            lines.append(
                f'<path d="{d}" fill="none" stroke="#000000" '
                f'stroke-width="{fmt(width)}"/>'
            )
    for index, marker in spec.annotations:
        curve = spec.curves[index]
        for s, color, tilt in (
            (marker.s_at_max_kappa, "#c43b3b", 0.75 * math.pi),
            (marker.s_at_max_kappa_slope, "#3b5fc4", 0.25 * math.pi),
        ):
            p = _interpolate(curve, s)
            tip = cmap.point(p.x, p.y)
            lines.append(_arrow(tip, tilt, 28.0, color))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def ornament_svg(spec: OrnamentSpec) -> str:
    """Place primitives along the path at uniform arc-length stations."""
    path = spec.path
    if len(path.samples) < 2:
        raise EmptyInput("path needs at least two samples")
    s0 = path.samples[0].s
    s1 = path.samples[-1].s
    if spec.count == 1:
        stations = [s0]
    else:
        stations = [s0 + (s1 - s0) * j / (spec.count - 1) for j in range(spec.count)]

    records = []
    for j, s in enumerate(stations):
        p = _interpolate(path, s)
        size = spec.size_base * spec.rhythm[j % len(spec.rhythm)]
        if spec.size_rule == "proportional_to_radius_of_curvature":
            if p.kappa == 0.0:
                raise ValueError(
                    "proportional size rule needs nonzero curvature along the path"
                )
            size *= 1.0 / abs(p.kappa)
        color = spec.palette[j % len(spec.palette)]
        records.append((p, size, color))

    world = [(p.x, p.y) for p in path.samples]
    cmap = _CanvasMap(world, spec.size, spec.margin)
    lines = [_svg_open(spec.size)]
    pts = [cmap.point(q.x, q.y) for q in path.samples]
    lines.append(
        f'<path d="{_path_d(pts)}" fill="none" stroke="#bbbbbb" stroke-width="1"/>'
    )
    for p, size, color in records:
        cx, cy = cmap.point(p.x, p.y)
        r = cmap.k * size
        ang = cmap.angle(p.theta)
        if spec.primitive == "circle":
            lines.append(
                f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(r)}" fill="{color}"/>'
            )
        else:
            corner_count = 4 if spec.primitive == "square" else 3
            offset = math.pi / 4.0 if spec.primitive == "square" else 0.0
            corners = []
            for k in range(corner_count):
                a = ang + offset + k * math.tau / corner_count
                corners.append((cx + r * math.cos(a), cy + r * math.sin(a)))
            point_str = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in corners)
            lines.append(f'<polygon points="{point_str}" fill="{color}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_csv(data) -> str:
    """Serialize samples to CSV.

    A SampledCurve writes the 2D header s,x,y,theta,kappa; an iterable of
    7-field records writes the 3D header s,x,y,z,tx,ty,tz. Floats are
    formatted for exact round-trips; newlines are LF.
    """
    if isinstance(data, SampledCurve):
        rows = [(p.s, p.x, p.y, p.theta, p.kappa) for p in data.samples]
        header = _HEADER_2D
    else:
        rows = [tuple(float(v) for v in row) for row in data]
        header = _HEADER_3D
        for row in rows:
            if len(row) != 7:
                raise ValueError("3D records need exactly 7 fields")
    if not rows:
        raise EmptyInput("no samples to export")
    out = [header]
    out.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"


def parse_csv(text: str):
    """Parse CSV produced by export_csv: returns (field_names, rows)."""
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise EmptyInput("empty CSV")
    fields = tuple(lines[0].strip().split(","))
    if fields not in (tuple(_HEADER_2D.split(",")), tuple(_HEADER_3D.split(","))):
        raise ValueError(f"unrecognized CSV header: {lines[0]!r}")
    rows = []
    for ln in lines[1:]:
        values = tuple(float(v) for v in ln.split(","))
        if len(values) != len(fields):
            raise ValueError(f"row width {len(values)} does not match header")
        rows.append(values)
    return fields, rows


def curve_from_rows(rows) -> SampledCurve:
    """Rebuild a SampledCurve from parsed 2D CSV rows."""
    samples = tuple(CurveSample(*row) for row in rows)
    if not samples:
        raise EmptyInput("no rows")
    first = samples[0]
    return SampledCurve(None, samples, Pose(first.x, first.y, first.theta))
