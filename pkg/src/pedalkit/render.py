"""CSV and SVG output.

CSV columns are fixed per curve kind (floats at 17 significant digits,
enough to round-trip doubles).  SVG output is deterministic: the same
inputs produce byte-identical files.  Sampled curves are drawn as
polylines split at non-ok samples; the viewBox fits all finite overlay
points with a 5% margin and strokes are 0.5% of the viewport diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Optional, Sequence

import numpy as np

from .curve import CurveDef, position_xy, sample_grid
from .envelope import LineFamily
from .errors import RangeError
from .frontal import LegendrianCurve, SampledFrontal
from .transforms import FLAG_NAMES, FLAG_OK, MappedCurve

MIN_PLOT_SAMPLES = 1024

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#17becf", "#7f7f7f")


def write_mapped_csv(mc: MappedCurve, fh: IO[str]) -> None:
    fh.write("t,x,y,flag\n")
    for t, (x, y), flag in zip(mc.grid, mc.points, mc.flags):
        fh.write(f"{t:.17g},{x:.17g},{y:.17g},{FLAG_NAMES[flag]}\n")


def write_legendrian_csv(lc: LegendrianCurve, fh: IO[str]) -> None:
    pts = position_xy(lc.curve, lc.ts)
    fh.write("t,x,y,nu_x,nu_y,ell,beta,flag\n")
    for i, t in enumerate(lc.ts):
        fh.write(f"{t:.17g},{pts[i, 0]:.17g},{pts[i, 1]:.17g},"
                 f"{lc.nu_grid[i, 0]:.17g},{lc.nu_grid[i, 1]:.17g},"
                 f"{lc.ell_grid[i]:.17g},{lc.beta_grid[i]:.17g},ok\n")


# ---------------------------------------------------------------------------
# SVG


@dataclass(frozen=True)
class Overlay:
    """One drawable curve: polyline segments in curve coordinates."""

    segments: tuple[np.ndarray, ...]
    label: str
    color: str
    width_scale: float = 1.0


def _segments_from(points: np.ndarray, keep: np.ndarray, closed: bool) -> tuple[np.ndarray, ...]:
    """Split into maximal runs of kept samples; a fully kept closed
    curve gets its first point appended to close the loop."""
    n = len(points)
    if keep.all():
        if closed:
            return (np.vstack([points, points[:1]]),)
        return (points.copy(),)
    runs = []
    idx = np.flatnonzero(keep)
    if idx.size == 0:
        return ()
    breaks = np.flatnonzero(np.diff(idx) > 1)
    start = 0
    for b in breaks:
        runs.append(idx[start:b + 1])
        start = b + 1
    runs.append(idx[start:])
    # a closed curve whose first and last samples are kept wraps around
    if closed and len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == n - 1:
        runs[0] = np.concatenate([runs[-1], runs[0]])
        runs.pop()
    return tuple(points[r] for r in runs if len(r) >= 2)


def overlay_from_mapped(mc: MappedCurve, label: str | None = None,
                        color: str = PALETTE[0], width_scale: float = 1.0) -> Overlay:
    keep = (mc.flags == FLAG_OK) & np.isfinite(mc.points).all(axis=1)
    segs = _segments_from(mc.points, keep, mc.closed)
    if label is None:
        label = f"{mc.kind.name} of {mc.source_name}"
    return Overlay(segs, label, color, width_scale)


def overlay_from_frontal(sf: SampledFrontal, label: str | None = None,
                         color: str = PALETTE[0], width_scale: float = 1.0) -> Overlay:
    keep = sf.ok & np.isfinite(sf.points).all(axis=1)
    segs = _segments_from(sf.points, keep, sf.closed)
    if label is None:
        label = f"{sf.kind.name} of {sf.source_name}"
    return Overlay(segs, label, color, width_scale)


def overlay_from_curve(curve: CurveDef, label: str | None = None,
                       color: str = PALETTE[0], width_scale: float = 1.0) -> Overlay:
    n = max(curve.samples, MIN_PLOT_SAMPLES)
    ts = sample_grid(curve, n)
    pts = position_xy(curve, ts)
    keep = np.isfinite(pts).all(axis=1)
    segs = _segments_from(pts, keep, curve.closed)
    return Overlay(segs, label or curve.name, color, width_scale)


@dataclass
class PlotSpec:
    overlays: list[Overlay] = field(default_factory=list)
    family: Optional[LineFamily] = None
    family_count: int = 0
    family_color: str = "#bbbbbb"


def _clip_line_to_box(a: tuple[float, float], c: float,
                      box: tuple[float, float, float, float]) -> Optional[tuple]:
    """Segment of { <p, a> = c } inside [x0,x1]x[y0,y1], or None."""
    x0, x1, y0, y1 = box
    ax, ay = a
    pts = []
    if abs(ay) > abs(ax) * 1e-15 and ay != 0.0:
        for x in (x0, x1):
            y = (c - ax * x) / ay
            if y0 - 1e-12 <= y <= y1 + 1e-12:
                pts.append((x, y))
    if ax != 0.0:
        for y in (y0, y1):
            x = (c - ay * y) / ax
            if x0 - 1e-12 <= x <= x1 + 1e-12:
                pts.append((x, y))
    if len(pts) < 2:
        return None
    # the two most distant candidates span the chord
    best = max(((p, q) for p in pts for q in pts),
               key=lambda pq: (pq[0][0] - pq[1][0]) ** 2 + (pq[0][1] - pq[1][1]) ** 2)
    if (best[0][0] - best[1][0]) ** 2 + (best[0][1] - best[1][1]) ** 2 == 0.0:
        return None
    return best


def render_svg(spec: PlotSpec) -> str:
    all_pts = [seg for ov in spec.overlays for seg in ov.segments]
    if not all_pts:
        raise RangeError("nothing to plot: no finite overlay points")
    stacked = np.vstack(all_pts)
    xmin, ymin = stacked.min(axis=0)
    xmax, ymax = stacked.max(axis=0)
    span_x = xmax - xmin
    span_y = ymax - ymin
    pad_x = 0.05 * span_x if span_x > 0 else 0.5
    pad_y = 0.05 * span_y if span_y > 0 else 0.5
    x0, x1 = xmin - pad_x, xmax + pad_x
    y0, y1 = ymin - pad_y, ymax + pad_y
    w, h = x1 - x0, y1 - y0
    stroke = 0.005 * math.hypot(w, h)

    def fmt(v: float) -> str:
        return f"{v:.8g}"

    # SVG y grows downward, so emit (x, -y)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{fmt(x0)} {fmt(-y1)} {fmt(w)} {fmt(h)}">',
    ]
    if spec.family is not None and spec.family_count > 0:
        fam_lines = []
        curve = spec.family.curve
        if curve.closed:
            ts = curve.t_min + (curve.t_max - curve.t_min) * np.arange(spec.family_count) / spec.family_count
        else:
            ts = np.linspace(curve.t_min, curve.t_max, spec.family_count)
        for t in ts:
            ln = spec.family.line_at(float(t))
            seg = _clip_line_to_box((ln.a.x, ln.a.y), ln.c, (x0, x1, y0, y1))
            if seg is None:
                continue
            (px, py), (qx, qy) = seg
            fam_lines.append(
                f'<line x1="{fmt(px)}" y1="{fmt(-py)}" x2="{fmt(qx)}" y2="{fmt(-qy)}"/>')
        lines.append(f'<g data-label="family-lines" stroke="{spec.family_color}" '
                     f'stroke-width="{fmt(0.5 * stroke)}">')
        lines.extend(fam_lines)
        lines.append("</g>")
    for ov in spec.overlays:
        lines.append(f'<g data-label="{ov.label}" fill="none" stroke="{ov.color}" '
                     f'stroke-width="{fmt(stroke * ov.width_scale)}">')
        for seg in ov.segments:
            coords = " ".join(f"{fmt(x)},{fmt(-y)}" for x, y in seg)
            lines.append(f'<polyline points="{coords}"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_to_file(spec: PlotSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_svg(spec))
