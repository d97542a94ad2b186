"""Pedal-type and primitive-type transforms of plane curves.

All transforms sample the source curve on its parameter grid and return
a MappedCurve: points plus a per-sample flag.  Denominator guards use
eps_d = 1e-6 times the source curve's diameter (bounding-box diagonal);
samples where a denominator is smaller than that are flagged
near_singular, samples with no Frenet frame or non-finite values are
undefined.  Formulas (t_hat, n_hat = J t_hat from the source frame):

    pedal            <g, n> n
    contrapedal      <g, t> t
    pedaloid(psi)    <g, cos(psi) t + sin(psi) n> (cos(psi) t + sin(psi) n)
    antipedal        n / <g, n>
    primitive        2 g - (|g|^2 / <g, n>) n
    parallel(r)      r * primitive
    slant(phi)       cos(phi) R(phi) primitive
    primitive_of_perp J primitive   (the primitive of J g)

Everything is sign-invariant under n -> -n, so no orientation
convention leaks into the results.  Transforms of already-sampled
curves (mapped_pedal, mapped_primitive, mapped_slant) rebuild frames
with five-point finite differences on the sample polyline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import expr as ex
from .curve import (REGULAR_EPS, CurveDef, FrenetGrid, frenet, frenet_grid,
                    sample_grid)
from .errors import OriginSingularity, RangeError
from .vec import ORIGIN_EPS, perp_xy, rotate_xy

# denominator guard scale, relative to curve diameter
DENOM_REL_EPS = 1e-6

# |cos(phi)| below this marks the degenerate slant angles pi/2 + n pi
DEGENERATE_ANGLE_EPS = 1e-12

FLAG_OK = 0
FLAG_NEAR_SINGULAR = 1
FLAG_UNDEFINED = 2
FLAG_NAMES = ("ok", "near_singular", "undefined")


@dataclass(frozen=True)
class TransformKind:
    name: str
    angle: Optional[float] = None
    ratio: Optional[float] = None
    degenerate_angle: bool = False

    def label(self) -> str:
        parts = [self.name]
        if self.angle is not None:
            parts.append(f"angle={self.angle:.6g}")
        if self.ratio is not None:
            parts.append(f"ratio={self.ratio:.6g}")
        if self.degenerate_angle:
            parts.append("degenerate-angle")
        return "[" + ", ".join(parts) + "]"


@dataclass(frozen=True)
class MappedCurve:
    source_name: str
    kind: TransformKind
    grid: np.ndarray
    points: np.ndarray
    flags: np.ndarray
    closed: bool

    @property
    def ok(self) -> np.ndarray:
        return self.flags == FLAG_OK

    def replace_points(self, points: np.ndarray, kind: TransformKind) -> "MappedCurve":
        return MappedCurve(self.source_name, kind, self.grid, points,
                           self.flags.copy(), self.closed)


def bbox_diameter(points: np.ndarray) -> float:
    good = np.isfinite(points).all(axis=1)
    if not good.any():
        raise RangeError("no finite points to measure")
    span = points[good].max(axis=0) - points[good].min(axis=0)
    return float(math.hypot(span[0], span[1]))


def _flags_from(fg: FrenetGrid, points: np.ndarray,
                near: np.ndarray | None = None) -> np.ndarray:
    flags = np.full(len(fg.ts), FLAG_OK, dtype=np.uint8)
    if near is not None:
        flags[near] = FLAG_NEAR_SINGULAR
    undefined = ~fg.regular | ~np.isfinite(points).all(axis=1)
    flags[undefined] = FLAG_UNDEFINED
    points[undefined] = np.nan
    return flags


def _grid(curve: CurveDef, ts: np.ndarray | None) -> np.ndarray:
    return sample_grid(curve) if ts is None else np.asarray(ts, dtype=float)


def _check_origin(fg: FrenetGrid, what: str) -> None:
    n2 = (fg.p * fg.p).sum(axis=1)
    hit = np.isfinite(n2) & (n2 < ORIGIN_EPS * ORIGIN_EPS)
    if hit.any():
        t_bad = float(fg.ts[hit][0])
        raise OriginSingularity(
            f"{what} needs the curve away from the origin, but it passes "
            f"through it near t={t_bad:.6g}")


def pedal(curve: CurveDef, ts: np.ndarray | None = None) -> MappedCurve:
    ts = _grid(curve, ts)
    fg = frenet_grid(curve, ts)
    with np.errstate(all="ignore"):
        q = (fg.p * fg.n_hat).sum(axis=1)
        points = q[:, None] * fg.n_hat
    flags = _flags_from(fg, points)
    return MappedCurve(curve.name, TransformKind("pedal"), ts, points, flags, curve.closed)


def contrapedal(curve: CurveDef, ts: np.ndarray | None = None) -> MappedCurve:
    ts = _grid(curve, ts)
    fg = frenet_grid(curve, ts)
    with np.errstate(all="ignore"):
        q = (fg.p * fg.t_hat).sum(axis=1)
        points = q[:, None] * fg.t_hat
    flags = _flags_from(fg, points)
    return MappedCurve(curve.name, TransformKind("contrapedal"), ts, points, flags, curve.closed)


def pedaloid(curve: CurveDef, psi: float, ts: np.ndarray | None = None) -> MappedCurve:
    ts = _grid(curve, ts)
    fg = frenet_grid(curve, ts)
    with np.errstate(all="ignore"):
        direction = math.cos(psi) * fg.t_hat + math.sin(psi) * fg.n_hat
        q = (fg.p * direction).sum(axis=1)
        points = q[:, None] * direction
    flags = _flags_from(fg, points)
    return MappedCurve(curve.name, TransformKind("pedaloid", angle=psi), ts, points,
                       flags, curve.closed)


def antipedal(curve: CurveDef, ts: np.ndarray | None = None) -> MappedCurve:
    ts = _grid(curve, ts)
    fg = frenet_grid(curve, ts)
    eps_d = DENOM_REL_EPS * bbox_diameter(fg.p)
    with np.errstate(all="ignore"):
        den = (fg.p * fg.n_hat).sum(axis=1)
        points = fg.n_hat / den[:, None]
    near = np.abs(den) < eps_d
    flags = _flags_from(fg, points, near)
    return MappedCurve(curve.name, TransformKind("antipedal"), ts, points, flags, curve.closed)


def _primitive_points(fg: FrenetGrid, what: str) -> tuple[np.ndarray, np.ndarray]:
    _check_origin(fg, what)
    eps_d = DENOM_REL_EPS * bbox_diameter(fg.p)
    with np.errstate(all="ignore"):
        den = (fg.p * fg.n_hat).sum(axis=1)
        n2 = (fg.p * fg.p).sum(axis=1)
        points = 2.0 * fg.p - (n2 / den)[:, None] * fg.n_hat
    near = np.abs(den) < eps_d
    return points, _flags_from(fg, points, near)


def primitive(curve: CurveDef, ts: np.ndarray | None = None) -> MappedCurve:
    ts = _grid(curve, ts)
    fg = frenet_grid(curve, ts)
    points, flags = _primitive_points(fg, "primitive")
    return MappedCurve(curve.name, TransformKind("primitive"), ts, points, flags, curve.closed)


def parallel_primitivoid(curve: CurveDef, r: float,
                         ts: np.ndarray | None = None) -> MappedCurve:
    if r == 0.0:
        raise RangeError("parallel primitivoid needs a nonzero ratio")
    ts = _grid(curve, ts)
    fg = frenet_grid(curve, ts)
    points, flags = _primitive_points(fg, "parallel primitivoid")
    return MappedCurve(curve.name, TransformKind("parallel", ratio=r), ts,
                       r * points, flags, curve.closed)


def slant_primitivoid(curve: CurveDef, phi: float,
                      ts: np.ndarray | None = None) -> MappedCurve:
    ts = _grid(curve, ts)
    fg = frenet_grid(curve, ts)
    c = math.cos(phi)
    if abs(c) < DEGENERATE_ANGLE_EPS:
        # the whole image collapses to the origin
        _check_origin(fg, "slant primitivoid")
        points = np.zeros((len(ts), 2))
        flags = _flags_from(fg, points)
        kind = TransformKind("slant", angle=phi, degenerate_angle=True)
        return MappedCurve(curve.name, kind, ts, points, flags, curve.closed)
    points, flags = _primitive_points(fg, "slant primitivoid")
    points = c * rotate_xy(points, phi)
    return MappedCurve(curve.name, TransformKind("slant", angle=phi), ts, points,
                       flags, curve.closed)


def primitive_of_perp(curve: CurveDef, ts: np.ndarray | None = None) -> MappedCurve:
    """Primitive of the rotated curve J g; equals J applied to the
    primitive of g, and is computed that way (J is exact in floating
    point), so the identity holds to the last bit."""
    ts = _grid(curve, ts)
    fg = frenet_grid(curve, ts)
    points, flags = _primitive_points(fg, "primitive of the perp curve")
    return MappedCurve(curve.name, TransformKind("perp-primitive"), ts,
                       perp_xy(points), flags, curve.closed)


def inversion_curvature(curve: CurveDef, t: float) -> float:
    """Curvature of the inverted curve at parameter t:
    -kappa |g|^2 - 2 <g, n>."""
    fr = frenet(curve, t)
    n2 = fr.p.norm_sq()
    if n2 < ORIGIN_EPS * ORIGIN_EPS:
        raise OriginSingularity(f"curve passes through the origin at t={t}")
    return -fr.kappa * n2 - 2.0 * fr.p.dot(fr.n_hat)


def inversion_curvature_grid(curve: CurveDef, ts: np.ndarray | None = None) -> np.ndarray:
    ts = _grid(curve, ts)
    fg = frenet_grid(curve, ts)
    _check_origin(fg, "inversion curvature")
    n2 = (fg.p * fg.p).sum(axis=1)
    return -fg.kappa * n2 - 2.0 * (fg.p * fg.n_hat).sum(axis=1)


# ---------------------------------------------------------------------------
# symbolic curve surgery


def transform_curve(curve: CurveDef, phi: float, lam: float) -> CurveDef:
    """Rotate by phi and scale by lam != 0, symbolically."""
    if lam == 0.0:
        raise RangeError("scale factor must be nonzero")
    c, s = math.cos(phi), math.sin(phi)
    new_x = ex.mul(ex.Num(lam), ex.sub(ex.mul(ex.Num(c), curve.x),
                                       ex.mul(ex.Num(s), curve.y)))
    new_y = ex.mul(ex.Num(lam), ex.add(ex.mul(ex.Num(s), curve.x),
                                       ex.mul(ex.Num(c), curve.y)))
    name = f"{curve.name}~rot{phi:.6g}~scale{lam:.6g}"
    return CurveDef(new_x, new_y, curve.t_min, curve.t_max, name,
                    curve.samples, curve.closed)


def invert_curve(curve: CurveDef) -> CurveDef:
    """The inverted curve g / |g|^2, symbolically."""
    n2 = ex.add(ex.pow_(curve.x, ex.Num(2.0)), ex.pow_(curve.y, ex.Num(2.0)))
    return CurveDef(ex.div(curve.x, n2), ex.div(curve.y, n2),
                    curve.t_min, curve.t_max, f"inv({curve.name})",
                    curve.samples, curve.closed)


# ---------------------------------------------------------------------------
# transforms of sampled curves: frames from five-point finite differences


def polyline_frames(mc: MappedCurve) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(t_hat, n_hat, valid) for a sampled curve.  Five-point central
    differences on the uniform grid; closed grids wrap, open ends and
    any sample whose stencil touches a bad sample are invalid."""
    n = len(mc.grid)
    if n < 5:
        raise RangeError("need at least 5 samples for derived frames")
    h = mc.grid[1] - mc.grid[0]
    p = mc.points
    good = mc.ok & np.isfinite(p).all(axis=1)

    def shift(arr, k):
        if mc.closed:
            return np.roll(arr, -k, axis=0)
        out = np.empty_like(arr)
        if k >= 0:
            out[: n - k] = arr[k:]
            out[n - k:] = arr[-1]
        else:
            out[-k:] = arr[:k]
            out[: -k] = arr[0]
        return out

    with np.errstate(all="ignore"):
        d1 = (shift(p, -2) - 8.0 * shift(p, -1) + 8.0 * shift(p, 1) - shift(p, 2)) / (12.0 * h)
        speed = np.hypot(d1[:, 0], d1[:, 1])
        t_hat = d1 / speed[:, None]
        n_hat = perp_xy(t_hat)

    valid = good.copy()
    for k in (-2, -1, 1, 2):
        valid &= shift(good, k)
    if not mc.closed:
        valid[:2] = False
        valid[-2:] = False
    valid &= np.isfinite(speed) & (speed > REGULAR_EPS)
    t_hat[~valid] = np.nan
    n_hat[~valid] = np.nan
    return t_hat, n_hat, valid


def _mapped_flags(mc: MappedCurve, valid: np.ndarray, points: np.ndarray,
                  near: np.ndarray | None = None) -> np.ndarray:
    flags = np.full(len(mc.grid), FLAG_OK, dtype=np.uint8)
    if near is not None:
        flags[near & valid] = FLAG_NEAR_SINGULAR
    undefined = ~valid | ~np.isfinite(points).all(axis=1)
    flags[undefined] = FLAG_UNDEFINED
    points[undefined] = np.nan
    return flags


def mapped_pedal(mc: MappedCurve) -> MappedCurve:
    _, n_hat, valid = polyline_frames(mc)
    with np.errstate(all="ignore"):
        q = (mc.points * n_hat).sum(axis=1)
        points = q[:, None] * n_hat
    flags = _mapped_flags(mc, valid, points)
    kind = TransformKind(f"pedal of {mc.kind.name}")
    return MappedCurve(mc.source_name, kind, mc.grid, points, flags, mc.closed)


def mapped_primitive(mc: MappedCurve) -> MappedCurve:
    _, n_hat, valid = polyline_frames(mc)
    eps_d = DENOM_REL_EPS * bbox_diameter(mc.points[mc.ok])
    with np.errstate(all="ignore"):
        den = (mc.points * n_hat).sum(axis=1)
        n2 = (mc.points * mc.points).sum(axis=1)
        points = 2.0 * mc.points - (n2 / den)[:, None] * n_hat
    near = np.abs(den) < eps_d
    flags = _mapped_flags(mc, valid, points, near)
    kind = TransformKind(f"primitive of {mc.kind.name}")
    return MappedCurve(mc.source_name, kind, mc.grid, points, flags, mc.closed)


def mapped_slant(mc: MappedCurve, phi: float) -> MappedCurve:
    base = mapped_primitive(mc)
    c = math.cos(phi)
    if abs(c) < DEGENERATE_ANGLE_EPS:
        points = np.zeros_like(base.points)
        kind = TransformKind(f"slant of {mc.kind.name}", angle=phi, degenerate_angle=True)
        flags = base.flags.copy()
        return MappedCurve(mc.source_name, kind, mc.grid, points, flags, mc.closed)
    points = c * rotate_xy(base.points, phi)
    kind = TransformKind(f"slant of {mc.kind.name}", angle=phi)
    return base.replace_points(points, kind)


# ---------------------------------------------------------------------------
# CLI dispatcher


TRANSFORM_KINDS = ("pedal", "contrapedal", "pedaloid", "antipedal", "primitive",
                   "parallel", "slant", "perp-primitive")


def apply_transform(curve: CurveDef, kind: str, angle: float | None = None,
                    ratio: float | None = None,
                    ts: np.ndarray | None = None) -> MappedCurve:
    if kind == "pedal":
        return pedal(curve, ts)
    if kind == "contrapedal":
        return contrapedal(curve, ts)
    if kind == "pedaloid":
        if angle is None:
            raise RangeError("pedaloid needs --angle")
        return pedaloid(curve, angle, ts)
    if kind == "antipedal":
        return antipedal(curve, ts)
    if kind == "primitive":
        return primitive(curve, ts)
    if kind == "parallel":
        if ratio is None:
            raise RangeError("parallel needs --ratio")
        return parallel_primitivoid(curve, ratio, ts)
    if kind == "slant":
        if angle is None:
            raise RangeError("slant needs --angle")
        return slant_primitivoid(curve, angle, ts)
    if kind == "perp-primitive":
        return primitive_of_perp(curve, ts)
    raise RangeError(f"unknown transform kind {kind!r}; choices: {', '.join(TRANSFORM_KINDS)}")
