"""Raster, phase, ratio, pattern-duration and rhythm-triangle plots as SVG.

Each plot has a ``*_data`` function that computes everything that gets drawn
(coordinates, density curves, axis transforms) and a renderer that only
formats it. Rendering is deterministic: same data and ``PlotSpec`` give the
same bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from ..clustering import NOISE, ClusterLabeling
from ..core import Segment
from ..network import TransitionNetwork
from .kde import DensityCurve, kde
from .svg import SVG, Axis, fmt

__all__ = [
    "PlotSpec",
    "PALETTE",
    "min_duration_boundary",
    "max_duration_boundary",
    "ternary_xy",
    "ratio_curve",
    "RatioData",
    "ratio_data",
    "ratio_plot",
    "RasterData",
    "raster_data",
    "raster_plot",
    "PhaseData",
    "phase_data",
    "phase_plot",
    "PatternDurationData",
    "pattern_duration_data",
    "pattern_duration_plot",
    "TriangleData",
    "triangle_data",
    "triangle_plot",
]

# tab10
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
NOISE_COLOR = "#9e9e9e"
# viridis anchors
_VIRIDIS = (
    (68, 1, 84), (72, 40, 120), (62, 74, 137), (49, 104, 142), (38, 130, 142),
    (31, 158, 137), (53, 183, 121), (109, 205, 89), (180, 222, 44), (253, 231, 37),
)
_SQRT3_2 = np.sqrt(3) / 2


@dataclass(frozen=True)
class PlotSpec:
    """Canvas size, margins, axis ranges and styling shared by all plots.

    ``x_range``/``y_range`` of ``None`` mean automatic. ``quantum`` switches
    duration axes to multiples of the quantum. ``bandwidth`` of ``None``
    means Silverman's rule.
    """

    width: int = 480
    height: int = 400
    margin_left: float = 56
    margin_right: float = 16
    margin_top: float = 24
    margin_bottom: float = 44
    x_range: tuple[float, float] | None = None
    y_range: tuple[float, float] | None = None
    point_radius: float = 2.5
    palette: tuple[str, ...] = PALETTE
    quantum: float | None = None
    annotation_max: int = 6
    bandwidth: float | None = None
    grid_points: int = 512
    marginal_size: float = 56
    title: str | None = None

    @property
    def inner(self) -> tuple[float, float, float, float]:
        """``(left, top, right, bottom)`` of the plotting area in pixels."""
        return (
            self.margin_left,
            self.margin_top,
            self.width - self.margin_right,
            self.height - self.margin_bottom,
        )


def _color(spec: PlotSpec, label: int) -> str:
    return NOISE_COLOR if label == NOISE else spec.palette[label % len(spec.palette)]


def _viridis(t: float) -> str:
    t = min(max(t, 0.0), 1.0) * (len(_VIRIDIS) - 1)
    i = min(int(t), len(_VIRIDIS) - 2)
    f = t - i
    rgb = [round(a + (b - a) * f) for a, b in zip(_VIRIDIS[i], _VIRIDIS[i + 1])]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    mag = 10 ** np.floor(np.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = np.ceil(lo / step - 1e-9) * step
    ticks = np.arange(first, hi + step * 1e-9, step)
    return [float(np.round(t, 10)) for t in ticks]


def _tick_label(v: float) -> str:
    s = f"{v:g}"
    return "0" if s == "-0" else s


def _check_lengths(segments: Sequence[Segment], n: int) -> None:
    bad = sorted({len(s) for s in segments} - {n})
    if bad:
        raise ValueError(f"expected length-{n} segments, got lengths {bad}")


def _start(spec: PlotSpec) -> SVG:
    svg = SVG(spec.width, spec.height)
    svg.add("rect", x=0.0, y=0.0, width=spec.width, height=spec.height, fill="#ffffff")
    if spec.title:
        svg.text(spec.width / 2, 16.0, spec.title, text_anchor="middle", font_size=13, font_family="sans-serif")
    return svg


def _frame(svg: SVG, xa: Axis, ya: Axis, xlabel: str, ylabel: str | None, yticks: bool = True) -> None:
    left, right = xa.px_lo, xa.px_hi
    bottom, top = ya.px_lo, ya.px_hi
    svg.add("rect", x=float(left), y=float(top), width=float(right - left), height=float(bottom - top),
            fill="none", stroke="#333333", stroke_width=0.8)
    for t in _nice_ticks(xa.lo, xa.hi):
        x = xa(t)
        svg.line(x, bottom, x, bottom + 4, stroke="#333333", stroke_width=0.8)
        svg.text(x, bottom + 16, _tick_label(t), text_anchor="middle", font_size=10, font_family="sans-serif")
    if yticks:
        for t in _nice_ticks(ya.lo, ya.hi):
            y = ya(t)
            svg.line(left - 4, y, left, y, stroke="#333333", stroke_width=0.8)
            svg.text(left - 6, y + 3.5, _tick_label(t), text_anchor="end", font_size=10, font_family="sans-serif")
    svg.text((left + right) / 2, bottom + 34, xlabel, text_anchor="middle", font_size=11, font_family="sans-serif")
    if ylabel:
        cy = (top + bottom) / 2
        svg.text(14.0, cy, ylabel, text_anchor="middle", font_size=11, font_family="sans-serif",
                 transform=f"rotate(-90 14.00 {fmt(cy)})")


def _curve(svg: SVG, xs: np.ndarray, ys: np.ndarray, **attrs) -> None:
    svg.polyline(xs, ys, **attrs)


def min_duration_boundary(r: np.ndarray | float, i_min: float):
    """Smallest segment duration at ratio ``r`` when every interval is >= ``i_min``."""
    r = np.asarray(r, dtype=float)
    return i_min / np.minimum(r, 1 - r)


def max_duration_boundary(r: np.ndarray | float, i_max: float):
    """Largest segment duration at ratio ``r`` when every interval is <= ``i_max``."""
    r = np.asarray(r, dtype=float)
    return i_max / np.maximum(r, 1 - r)


def _segments_array(segments: Sequence[Segment], n: int) -> np.ndarray:
    if not segments:
        return np.empty((0, n))
    return np.asarray([s.values for s in segments], dtype=float)


def _successor_pairs(segments: Sequence[Segment]) -> list[tuple[int, int]]:
    where = {s.origin: i for i, s in enumerate(segments) if s.origin is not None}
    pairs = []
    for i, s in enumerate(segments):
        if s.origin is None:
            continue
        j = where.get((s.origin[0], s.origin[1] + 1))
        if j is not None:
            pairs.append((i, j))
    return pairs


# ratio plot ----------------------------------------------------------------

def ratio_curve(segments: Sequence[Segment], spec: PlotSpec = PlotSpec()) -> DensityCurve:
    """Density of rhythm ratios over the rhythm line ``[0, 1]``."""
    _check_lengths(segments, 2)
    if len(segments) < 2:
        raise ValueError(f"a ratio plot needs at least 2 segments, got {len(segments)}")
    r = [s.values[0] / (s.values[0] + s.values[1]) for s in segments]
    return kde(r, spec.bandwidth, grid=(0.0, 1.0), points=spec.grid_points)


@dataclass(frozen=True)
class RatioData:
    curve: DensityCurve
    x_axis: Axis
    y_axis: Axis


def ratio_data(segments: Sequence[Segment], spec: PlotSpec = PlotSpec()) -> RatioData:
    curve = ratio_curve(segments, spec)
    left, top, right, bottom = spec.inner
    ymax = spec.y_range[1] if spec.y_range else float(curve.density.max()) * 1.05
    return RatioData(curve, Axis(0.0, 1.0, left, right), Axis(0.0, ymax, bottom, top))


def ratio_plot(segments: Sequence[Segment], spec: PlotSpec = PlotSpec()) -> str:
    data = ratio_data(segments, spec)
    xa, ya = data.x_axis, data.y_axis
    svg = _start(spec)
    _frame(svg, xa, ya, "rhythm ratio", "density")
    svg.line(xa(0.5), ya.px_lo, xa(0.5), ya.px_hi, stroke="#999999", stroke_dasharray="4 3", class_="ref")
    _curve(svg, xa(data.curve.grid), ya(data.curve.density), stroke="#1f77b4", stroke_width=1.5, class_="kde")
    return svg.render()


# raster plot ---------------------------------------------------------------

@dataclass(frozen=True)
class RasterData:
    """Rows sorted by duration; ``left = -min(a, b)``, ``right = max(a, b)``."""

    order: np.ndarray
    left: np.ndarray
    right: np.ndarray
    x_axis: Axis
    y_axis: Axis


def raster_data(segments: Sequence[Segment], spec: PlotSpec = PlotSpec()) -> RasterData:
    _check_lengths(segments, 2)
    X = _segments_array(segments, 2)
    order = np.argsort(X.sum(axis=1), kind="stable")
    S = X[order]
    left, right = -S.min(axis=1), S.max(axis=1)
    lo, top, hi, bottom = spec.inner
    if spec.x_range:
        xr = spec.x_range
    else:
        m = float(right.max()) * 1.05 if len(S) else 1.0
        xr = (-m, m)
    rows = max(len(S) - 1, 1)
    return RasterData(order, left, right, Axis(xr[0], xr[1], lo, hi), Axis(0.0, float(rows), bottom, top))


def raster_plot(segments: Sequence[Segment], spec: PlotSpec = PlotSpec()) -> str:
    """Segments stacked by duration (fastest at the bottom), shorter interval left."""
    data = raster_data(segments, spec)
    xa, ya = data.x_axis, data.y_axis
    svg = _start(spec)
    _frame(svg, xa, ya, "interval (s); shorter left, longer right", "segments sorted by duration", yticks=False)
    svg.line(xa(0.0), ya.px_lo, xa(0.0), ya.px_hi, stroke="#cccccc", class_="center")
    r = min(spec.point_radius, 1.5)
    for row, (a, b) in enumerate(zip(data.left, data.right)):
        y = ya(float(row))
        svg.circle(xa(a), y, r, fill="#1f77b4", class_="pt left")
        svg.circle(xa(b), y, r, fill="#d62728", class_="pt right")
    return svg.render()


# phase plot ----------------------------------------------------------------

@dataclass(frozen=True)
class PhaseData:
    points: np.ndarray
    trajectories: list[tuple[int, int]]
    x_axis: Axis
    y_axis: Axis


def phase_data(segments: Sequence[Segment], spec: PlotSpec = PlotSpec(), trajectories: bool = False) -> PhaseData:
    _check_lengths(segments, 2)
    X = _segments_array(segments, 2)
    left, top, right, bottom = spec.inner
    m = float(X.max()) * 1.05 if len(X) else 1.0
    xr = spec.x_range or (0.0, m)
    yr = spec.y_range or (0.0, m)
    pairs = _successor_pairs(segments) if trajectories else []
    return PhaseData(X, pairs, Axis(xr[0], xr[1], left, right), Axis(yr[0], yr[1], bottom, top))


def phase_plot(
    segments: Sequence[Segment],
    spec: PlotSpec = PlotSpec(),
    trajectories: bool = False,
    labeling: ClusterLabeling | None = None,
) -> str:
    """First interval against second; optional light lines between successive segments."""
    data = phase_data(segments, spec, trajectories)
    xa, ya = data.x_axis, data.y_axis
    svg = _start(spec)
    _frame(svg, xa, ya, "first interval (s)", "second interval (s)")
    for i, j in data.trajectories:
        (a, b), (c, d) = data.points[i], data.points[j]
        svg.line(xa(a), ya(b), xa(c), ya(d), stroke="#d0d0d0", stroke_width=0.5, class_="traj")
    _scatter(svg, spec, xa(data.points[:, 0]), ya(data.points[:, 1]), labeling)
    return svg.render()


def _scatter(svg: SVG, spec: PlotSpec, px: np.ndarray, py: np.ndarray,
             labeling: ClusterLabeling | None, colors: Sequence[str] | None = None) -> None:
    labels = labeling.labels if labeling is not None else None
    if labels is not None and len(labels) != len(px):
        raise ValueError(f"{len(labels)} labels for {len(px)} segments")
    for k, (x, y) in enumerate(zip(px, py)):
        if labels is not None and labels[k] == NOISE:
            svg.plus(x, y, spec.point_radius + 0.5, stroke=NOISE_COLOR, stroke_width=0.8, class_="pt noise")
            continue
        if colors is not None:
            fill = colors[k]
        elif labels is not None:
            fill = _color(spec, labels[k])
        else:
            fill = "#1f77b4"
        svg.circle(x, y, spec.point_radius, fill=fill, fill_opacity=0.7, class_="pt")


# pattern-duration plot -------------------------------------------------------

@dataclass(frozen=True)
class PatternDurationData:
    """Scatter coordinates in axis units plus both marginal densities."""

    r: np.ndarray
    d: np.ndarray
    top: DensityCurve | None
    side: DensityCurve | None
    x_axis: Axis
    y_axis: Axis
    unit: float = 1.0
    annotations: list[tuple[str, float, float]] = field(default_factory=list)


def pattern_duration_data(
    segments: Sequence[Segment],
    spec: PlotSpec = PlotSpec(),
    quantum: float | None = None,
    interval_bounds: tuple[float | None, float | None] | None = None,
) -> PatternDurationData:
    _check_lengths(segments, 2)
    q = quantum if quantum is not None else spec.quantum
    if q is not None and not q > 0:
        raise ValueError(f"quantum must be positive, got {q!r}")
    unit = q or 1.0
    X = _segments_array(segments, 2)
    dur = X.sum(axis=1)
    r = X[:, 0] / dur if len(X) else np.empty(0)
    d = dur / unit
    if spec.y_range:
        yr = spec.y_range
    else:
        top_d = float(d.max()) * 1.08 if len(d) else 1.0
        if interval_bounds and interval_bounds[1] is not None and len(d) == 0:
            top_d = 2 * interval_bounds[1] / unit
        yr = (0.0, top_d)
    left, top, right, bottom = spec.inner
    gap = 6.0
    xa = Axis(0.0, 1.0, left, right - spec.marginal_size - gap)
    ya = Axis(yr[0], yr[1], bottom, top + spec.marginal_size + gap)
    top_curve = side_curve = None
    if len(r) >= 2:
        top_curve = kde(r, spec.bandwidth, grid=(0.0, 1.0), points=spec.grid_points)
        side_curve = kde(d, None, grid=yr, points=spec.grid_points)
    ann = []
    if q is not None:
        for m in range(1, spec.annotation_max + 1):
            for k in range(1, spec.annotation_max + 1):
                if yr[0] <= m + k <= yr[1]:
                    ann.append((f"{m}:{k}", m / (m + k), float(m + k)))
    return PatternDurationData(r, d, top_curve, side_curve, xa, ya, unit, ann)


def _edge_widths(counts: Sequence[int]) -> list[float]:
    if not counts:
        return []
    lo, hi = min(counts), max(counts)
    if hi == lo:
        return [3.25] * len(counts)
    return [0.5 + 5.5 * (c - lo) / (hi - lo) for c in counts]


def _draw_network(svg: SVG, network: TransitionNetwork, spec: PlotSpec, pos: dict[int, tuple[float, float]]) -> None:
    svg.raw(
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="9" markerHeight="9" '
        'markerUnits="userSpaceOnUse" orient="auto"><path d="M0 0L10 5L0 10z" fill="#333333"/></marker></defs>'
    )
    widths = _edge_widths([e.count for e in network.edges])
    for e, w in zip(network.edges, widths):
        x1, y1 = pos[e.source]
        x2, y2 = pos[e.target]
        if e.source == e.target:
            svg.circle(x1, y1 - 9, 9.0, fill="none", stroke="#333333", stroke_width=w,
                       stroke_opacity=0.6, class_="edge loop")
            continue
        # stop at the rim of the target node marker
        length = float(np.hypot(x2 - x1, y2 - y1)) or 1.0
        shrink = min(6.0 / length, 0.5)
        x2, y2 = x2 - (x2 - x1) * shrink, y2 - (y2 - y1) * shrink
        svg.line(x1, y1, x2, y2, stroke="#333333", stroke_width=w, stroke_opacity=0.6,
                 marker_end="url(#arrow)", class_="edge")
    for nd in network.nodes:
        x, y = pos[nd.id]
        svg.circle(x, y, 5.0, fill=_color(spec, nd.id), stroke="#000000", stroke_width=1.2, class_="node")
        if nd.label:
            svg.text(x + 7, y - 7, nd.label, font_size=10, font_weight="bold", font_family="sans-serif",
                     class_="node-label")


def pattern_duration_plot(
    segments: Sequence[Segment],
    labeling: ClusterLabeling | None = None,
    network: TransitionNetwork | None = None,
    quantum: float | None = None,
    spec: PlotSpec = PlotSpec(),
    interval_bounds: tuple[float | None, float | None] | None = None,
    trajectories: bool = False,
) -> str:
    """Rhythm ratio against duration with marginal densities on top and at the side.

    Durations are shown in quanta when a quantum is given, in which case all
    ``m:k`` segments up to ``spec.annotation_max`` are annotated.
    ``interval_bounds=(i_min, i_max)`` draws the minimum-duration (dashed) and
    maximum-duration (dotted) boundaries.
    """
    data = pattern_duration_data(segments, spec, quantum, interval_bounds)
    xa, ya = data.x_axis, data.y_axis
    svg = _start(spec)
    in_quanta = quantum is not None or spec.quantum is not None
    ylabel = "duration (quanta)" if in_quanta else "duration (s)"
    _frame(svg, xa, ya, "rhythm ratio", ylabel)
    clip = (f'<clipPath id="pd-area"><rect x="{fmt(xa.px_lo)}" y="{fmt(ya.px_hi)}" '
            f'width="{fmt(xa.px_hi - xa.px_lo)}" height="{fmt(ya.px_lo - ya.px_hi)}"/></clipPath>')
    svg.raw(f"<defs>{clip}</defs>")
    svg.open("g", clip_path="url(#pd-area)")
    svg.line(xa(0.5), ya.px_lo, xa(0.5), ya.px_hi, stroke="#dddddd", class_="ref")
    for text, ar, ad in data.annotations:
        x, y = xa(ar), ya(ad)
        svg.circle(x, y, 1.2, fill="#555555", class_="ann-dot")
        svg.text(x + 2, y - 2, text, font_size=7, fill="#555555", font_family="sans-serif", class_="ann")
    if interval_bounds:
        rr = np.linspace(0.005, 0.995, 199)
        i_min, i_max = interval_bounds
        if i_min is not None:
            _curve(svg, xa(rr), ya(min_duration_boundary(rr, i_min) / data.unit),
                   stroke="#333333", stroke_dasharray="5 3", class_="boundary-min")
        if i_max is not None:
            _curve(svg, xa(rr), ya(max_duration_boundary(rr, i_max) / data.unit),
                   stroke="#333333", stroke_dasharray="1 2", class_="boundary-max")
    if trajectories:
        for i, j in _successor_pairs(segments):
            svg.line(xa(data.r[i]), ya(data.d[i]), xa(data.r[j]), ya(data.d[j]),
                     stroke="#d0d0d0", stroke_width=0.5, class_="traj")
    _scatter(svg, spec, xa(data.r), ya(data.d), labeling)
    if network is not None:
        pos = {nd.id: (xa(nd.r), ya(nd.duration / data.unit)) for nd in network.nodes}
        _draw_network(svg, network, spec, pos)
    svg.close("g")
    if data.top is not None:
        base = ya.px_hi - 6
        h = spec.marginal_size - 4
        scale = h / float(data.top.density.max())
        _curve(svg, xa(data.top.grid), base - data.top.density * scale,
               stroke="#1f77b4", stroke_width=1.2, class_="marginal-top")
    if data.side is not None:
        base = xa.px_hi + 6
        h = spec.marginal_size - 4
        scale = h / float(data.side.density.max())
        _curve(svg, base + data.side.density * scale, ya(data.side.grid),
               stroke="#1f77b4", stroke_width=1.2, class_="marginal-side")
    return svg.render()


# rhythm triangle ---------------------------------------------------------------

def ternary_xy(weights: np.ndarray) -> np.ndarray:
    """Cartesian position in a unit-side triangle.

    First weight pulls toward the bottom-left corner ``(0, 0)``, second toward
    bottom-right ``(1, 0)``, third toward the top ``(1/2, sqrt(3)/2)``.
    """
    W = np.atleast_2d(np.asarray(weights, dtype=float))
    x = W[:, 1] + 0.5 * W[:, 2]
    y = _SQRT3_2 * W[:, 2]
    return np.column_stack([x, y])


@dataclass(frozen=True)
class TriangleData:
    xy: np.ndarray
    duration: np.ndarray
    x_axis: Axis
    y_axis: Axis
    duration_range: tuple[float, float]

    def to_px(self, weights) -> np.ndarray:
        p = ternary_xy(weights)
        return np.column_stack([self.x_axis(p[:, 0]), self.y_axis(p[:, 1])])


def triangle_data(
    segments: Sequence[Segment],
    spec: PlotSpec = PlotSpec(),
    quantum: float | None = None,
) -> TriangleData:
    _check_lengths(segments, 3)
    q = quantum if quantum is not None else spec.quantum
    unit = q or 1.0
    X = _segments_array(segments, 3)
    dur = X.sum(axis=1)
    W = X / dur[:, None] if len(X) else np.empty((0, 3))
    left, top, right, bottom = spec.inner
    right -= 80  # color bar
    side = min(right - left, (bottom - top) / _SQRT3_2)
    x0 = left + (right - left - side) / 2
    y0 = bottom - ((bottom - top) - side * _SQRT3_2) / 2
    xa = Axis(0.0, 1.0, x0, x0 + side)
    ya = Axis(0.0, _SQRT3_2, y0, y0 - side * _SQRT3_2)
    d = dur / unit
    dr = (float(d.min()), float(d.max())) if len(d) else (0.0, 1.0)
    return TriangleData(ternary_xy(W) if len(W) else np.empty((0, 2)), d, xa, ya, dr)


def triangle_plot(
    segments: Sequence[Segment],
    labeling: ClusterLabeling | None = None,
    network: TransitionNetwork | None = None,
    quantum: float | None = None,
    spec: PlotSpec = PlotSpec(),
) -> str:
    """Length-3 patterns in the rhythm triangle, colored by segment duration."""
    data = triangle_data(segments, spec, quantum)
    xa, ya = data.x_axis, data.y_axis
    svg = _start(spec)
    corners = ternary_xy(np.eye(3))
    cx, cy = xa(corners[:, 0]), ya(corners[:, 1])
    svg.add("polygon", points=" ".join(f"{fmt(x)},{fmt(y)}" for x, y in zip(cx, cy)),
            fill="none", stroke="#333333", stroke_width=0.8, class_="simplex")
    for t in (0.25, 0.5, 0.75):
        for i in range(3):
            # iso-lines where weight i equals t
            a, b = [j for j in range(3) if j != i]
            w1 = np.zeros(3)
            w1[i], w1[a] = t, 1 - t
            w2 = np.zeros(3)
            w2[i], w2[b] = t, 1 - t
            p = ternary_xy(np.vstack([w1, w2]))
            svg.line(xa(p[0, 0]), ya(p[0, 1]), xa(p[1, 0]), ya(p[1, 1]), stroke="#e0e0e0", stroke_width=0.6,
                     class_="grid")
    for name, x, y, anchor, dy in zip(("first", "second", "third"), cx, cy, ("end", "start", "middle"),
                                      (14.0, 14.0, -6.0)):
        svg.text(x, y + dy, name, text_anchor=anchor, font_size=10, font_family="sans-serif")
    lo, hi = data.duration_range
    span = hi - lo if hi > lo else 1.0
    colors = [_viridis((v - lo) / span) for v in data.duration]
    labels = labeling.labels if labeling is not None else None
    px, py = xa(data.xy[:, 0]), ya(data.xy[:, 1])
    if labeling is not None:
        for c in labeling.clusters:
            idx = [k for k, v in enumerate(labels) if v == c.id]
            pts = np.column_stack([px[idx], py[idx]])
            try:
                hull = ConvexHull(pts)
            except (QhullError, ValueError):
                continue
            ring = pts[hull.vertices]
            svg.add("polygon", points=" ".join(f"{fmt(x)},{fmt(y)}" for x, y in ring),
                    fill=_color(spec, c.id), fill_opacity=0.12, stroke=_color(spec, c.id), stroke_width=0.8,
                    class_="hull")
    _scatter(svg, spec, px, py, labeling, colors=colors)
    iso = data.to_px([1 / 3, 1 / 3, 1 / 3])[0]
    svg.plus(iso[0], iso[1], 5.0, stroke="#000000", stroke_width=1.2, class_="isochrony")
    if network is not None:
        pos = {}
        for nd in network.nodes:
            p = data.to_px(nd.pattern)[0]
            pos[nd.id] = (p[0], p[1])
        _draw_network(svg, network, spec, pos)
    # duration color bar
    bx, by0, by1 = spec.width - spec.margin_right - 30, ya.px_lo, ya.px_hi
    steps = 32
    hstep = (by0 - by1) / steps
    for k in range(steps):
        svg.add("rect", x=float(bx), y=float(by0 - (k + 1) * hstep), width=10.0, height=float(hstep) + 0.2,
                fill=_viridis((k + 0.5) / steps), stroke="none")
    unit = "quanta" if (quantum is not None or spec.quantum is not None) else "s"
    svg.text(bx + 5, by0 + 14, f"{lo:.3g}", text_anchor="middle", font_size=9, font_family="sans-serif")
    svg.text(bx + 5, by1 - 4, f"{hi:.3g}", text_anchor="middle", font_size=9, font_family="sans-serif")
    svg.text(bx + 10, by1 - 16, f"duration ({unit})", text_anchor="end", font_size=9, font_family="sans-serif")
    return svg.render()
