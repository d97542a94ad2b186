"""Curve definitions, parameter grids and Frenet data.

A CurveDef holds symbolic x(t), y(t) plus a parameter interval; the
first three derivative jets are differentiated symbolically once and
cached.  All Frenet quantities use parametrization-invariant formulas
from the raw jets, so curves need not be unit speed:

    kappa           = cross(d1, d2) / |d1|^3
    dkappa/dt       = cross(d1, d3) / |d1|^3 - 3 kappa <d1, d2> / |d1|^2
    kappa_prime_arc = (dkappa/dt) / |d1|

CurveDefs are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import expr as ex
from .errors import IrregularPoint, ParseError, RangeError
from .vec import Vec2

# speeds below this are treated as singular parameter values
REGULAR_EPS = 1e-8

# closed curves must return to their start this tightly, relative to
# the endpoint magnitude for curves far from unit scale
CLOSURE_EPS = 1e-9

MIN_SAMPLES = 16


@dataclass(frozen=True)
class CurveDef:
    x: ex.Expr
    y: ex.Expr
    t_min: float
    t_max: float
    name: str = "curve"
    samples: int = 1024
    closed: bool = True
    # derivative jets, filled in by __post_init__
    _dx: tuple = field(default=None, repr=False, compare=False)
    _dy: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not (self.t_min < self.t_max):
            raise RangeError(f"empty parameter interval [{self.t_min}, {self.t_max}]")
        if self.samples < MIN_SAMPLES:
            raise RangeError(f"need at least {MIN_SAMPLES} samples, got {self.samples}")
        dx = [self.x]
        dy = [self.y]
        for _ in range(3):
            dx.append(ex.differentiate(dx[-1]))
            dy.append(ex.differentiate(dy[-1]))
        object.__setattr__(self, "_dx", tuple(dx))
        object.__setattr__(self, "_dy", tuple(dy))
        if self.closed:
            p0 = self.point(self.t_min)
            p1 = self.point(self.t_max)
            gap = (p0 - p1).norm()
            if gap > CLOSURE_EPS * max(1.0, p0.norm(), p1.norm()):
                raise RangeError(
                    f"curve {self.name!r} declared closed but endpoints differ by {gap:.3e}")

    def point(self, t: float) -> Vec2:
        return Vec2(ex.evaluate(self.x, t), ex.evaluate(self.y, t))

    def _check_param(self, t: float) -> None:
        slack = 1e-9 * (self.t_max - self.t_min)
        if not (self.t_min - slack <= t <= self.t_max + slack):
            raise RangeError(f"parameter {t} outside [{self.t_min}, {self.t_max}]")


@dataclass(frozen=True)
class CurveJet:
    t: float
    p: Vec2
    d1: Vec2
    d2: Vec2
    d3: Vec2


@dataclass(frozen=True)
class FrenetData:
    t: float
    p: Vec2
    t_hat: Vec2
    n_hat: Vec2
    speed: float
    kappa: float
    kappa_prime_arc: float


def jet(curve: CurveDef, t: float) -> CurveJet:
    """Position and first three derivatives at one parameter."""
    curve._check_param(t)
    xs = [ex.evaluate(e, t) for e in curve._dx]
    ys = [ex.evaluate(e, t) for e in curve._dy]
    return CurveJet(t, Vec2(xs[0], ys[0]), Vec2(xs[1], ys[1]),
                    Vec2(xs[2], ys[2]), Vec2(xs[3], ys[3]))


def frenet(curve: CurveDef, t: float) -> FrenetData:
    """Unit tangent, unit normal (J t_hat), speed, curvature and its
    arc-length derivative at one parameter."""
    j = jet(curve, t)
    speed = j.d1.norm()
    if speed < REGULAR_EPS:
        raise IrregularPoint(f"curve {curve.name!r} is singular at t={t}")
    t_hat = j.d1 / speed
    n_hat = Vec2(-t_hat.y, t_hat.x)
    kappa = j.d1.cross(j.d2) / speed**3
    dkappa_dt = j.d1.cross(j.d3) / speed**3 - 3.0 * kappa * j.d1.dot(j.d2) / speed**2
    return FrenetData(t, j.p, t_hat, n_hat, speed, kappa, dkappa_dt / speed)


def sample_grid(curve: CurveDef, samples: int | None = None) -> np.ndarray:
    """Parameter grid: closed curves omit the duplicate endpoint, open
    curves include both ends."""
    n = curve.samples if samples is None else samples
    if n < MIN_SAMPLES:
        raise RangeError(f"need at least {MIN_SAMPLES} samples, got {n}")
    if curve.closed:
        return curve.t_min + (curve.t_max - curve.t_min) * np.arange(n) / n
    return np.linspace(curve.t_min, curve.t_max, n)


@dataclass(frozen=True)
class FrenetGrid:
    """Vectorized jets and Frenet data over a parameter grid.

    Rows where speed < REGULAR_EPS have t_hat/n_hat/kappa set to nan;
    `regular` marks the usable rows.
    """

    ts: np.ndarray
    p: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    speed: np.ndarray
    t_hat: np.ndarray
    n_hat: np.ndarray
    kappa: np.ndarray
    kappa_prime_arc: np.ndarray
    regular: np.ndarray


def _eval_xy(xe: ex.Expr, ye: ex.Expr, ts: np.ndarray) -> np.ndarray:
    return np.column_stack([ex.evaluate_array(xe, ts), ex.evaluate_array(ye, ts)])


def position_xy(curve: CurveDef, ts: np.ndarray) -> np.ndarray:
    return _eval_xy(curve._dx[0], curve._dy[0], ts)


def velocity_xy(curve: CurveDef, ts: np.ndarray) -> np.ndarray:
    return _eval_xy(curve._dx[1], curve._dy[1], ts)


def jet_grid(curve: CurveDef, ts: np.ndarray) -> tuple[np.ndarray, ...]:
    """(p, d1, d2, d3) arrays, each (n, 2)."""
    return tuple(_eval_xy(curve._dx[k], curve._dy[k], ts) for k in range(4))


def frenet_grid(curve: CurveDef, ts: np.ndarray) -> FrenetGrid:
    p = _eval_xy(curve._dx[0], curve._dy[0], ts)
    d1 = _eval_xy(curve._dx[1], curve._dy[1], ts)
    d2 = _eval_xy(curve._dx[2], curve._dy[2], ts)
    d3 = _eval_xy(curve._dx[3], curve._dy[3], ts)
    speed = np.hypot(d1[:, 0], d1[:, 1])
    regular = np.isfinite(speed) & (speed >= REGULAR_EPS)
    with np.errstate(all="ignore"):
        t_hat = d1 / speed[:, None]
        n_hat = np.column_stack([-t_hat[:, 1], t_hat[:, 0]])
        cross12 = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
        cross13 = d1[:, 0] * d3[:, 1] - d1[:, 1] * d3[:, 0]
        kappa = cross12 / speed**3
        dkappa_dt = cross13 / speed**3 - 3.0 * kappa * (d1 * d2).sum(axis=1) / speed**2
        kappa_prime = dkappa_dt / speed
    for arr in (t_hat, n_hat):
        arr[~regular] = np.nan
    kappa[~regular] = np.nan
    kappa_prime[~regular] = np.nan
    return FrenetGrid(ts, p, d1, d2, d3, speed, t_hat, n_hat, kappa, kappa_prime, regular)


# ---------------------------------------------------------------------------
# curve files:  key = value lines, '#' comments, keys x, y, t_min, t_max,
# name (quoted), samples, closed


_REQUIRED = ("x", "y", "t_min", "t_max")
_KNOWN = _REQUIRED + ("name", "samples", "closed")


def _parse_lines(text: str) -> Iterator[tuple[int, str, str, int]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1, ("'='",))
        key, value = line.split("=", 1)
        if not key.strip():
            raise ParseError("missing key before '='", lineno, 1)
        yield lineno, key.strip(), value.strip(), line.index("=") + 2


def _const_value(text: str, lineno: int, key: str) -> float:
    node = ex.parse_expr(text, line=lineno)
    if ex.depends_on_t(node):
        raise ParseError(f"{key} must be constant, found 't'", lineno, 1)
    return float(ex.evaluate(node, 0.0))


def parse_curve(text: str, name: str = "curve") -> CurveDef:
    """Parse curve-definition text.  See the module docstring of
    `pedalkit.cli` for the file format."""
    seen: dict[str, object] = {}
    for lineno, key, value, vcol in _parse_lines(text):
        if key not in _KNOWN:
            raise ParseError(f"unknown key {key!r}", lineno, 1, _KNOWN)
        if key in seen:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        if key in ("x", "y"):
            seen[key] = ex.parse_expr(value, line=lineno, column=vcol)
        elif key in ("t_min", "t_max"):
            seen[key] = _const_value(value, lineno, key)
        elif key == "name":
            if len(value) < 2 or value[0] != '"' or value[-1] != '"':
                raise ParseError("name must be double-quoted", lineno, vcol)
            seen[key] = value[1:-1]
        elif key == "samples":
            try:
                seen[key] = int(value)
            except ValueError:
                raise ParseError(f"samples must be an integer, got {value!r}",
                                 lineno, vcol) from None
        elif key == "closed":
            if value not in ("true", "false"):
                raise ParseError(f"closed must be true or false, got {value!r}",
                                 lineno, vcol, ("true", "false"))
            seen[key] = value == "true"
    for key in _REQUIRED:
        if key not in seen:
            raise ParseError(f"missing required key {key!r}", 1, 1)
    return CurveDef(
        x=seen["x"], y=seen["y"],
        t_min=seen["t_min"], t_max=seen["t_max"],
        name=seen.get("name", name),
        samples=seen.get("samples", 1024),
        closed=seen.get("closed", True),
    )


def load_curve(path: str | os.PathLike) -> CurveDef:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stem = os.path.splitext(os.path.basename(os.fspath(path)))[0]
    return parse_curve(text, name=stem)


def format_curve(curve: CurveDef) -> str:
    """Canonical text; parse(format(c)) reproduces c."""
    return "\n".join([
        f'name = "{curve.name}"',
        f"x = {ex.to_text(curve.x)}",
        f"y = {ex.to_text(curve.y)}",
        f"t_min = {curve.t_min!r}",
        f"t_max = {curve.t_max!r}",
        f"samples = {curve.samples}",
        f"closed = {'true' if curve.closed else 'false'}",
    ]) + "\n"


# ---------------------------------------------------------------------------
# built-in curves


_BUILTIN_TEXT = {
    "circle": """
        name = "circle"
        x = cos(t)
        y = sin(t)
        t_min = 0
        t_max = 2*pi
    """,
    "ellipse": """
        name = "ellipse"
        x = cos(t)
        y = sin(t)/sqrt(3)
        t_min = 0
        t_max = 2*pi
    """,
    "front": """
        name = "front"
        x = (30*cos(t) - 17*cos(3*t) + 3*cos(5*t))/32
        y = sin(t)*(23 + 4*cos(2*t) - 3*cos(4*t))/(16*sqrt(2))
        t_min = 0
        t_max = 2*pi
    """,
    "offset_circle": """
        name = "offset_circle"
        x = 2 + cos(t)
        y = sin(t)
        t_min = 0
        t_max = 2*pi
    """,
}

BUILTIN_NAMES = tuple(_BUILTIN_TEXT)


def builtin_curve(name: str, samples: int | None = None) -> CurveDef:
    try:
        text = _BUILTIN_TEXT[name]
    except KeyError:
        raise RangeError(f"no built-in curve named {name!r}; "
                         f"choices: {', '.join(BUILTIN_NAMES)}") from None
    curve = parse_curve(text)
    if samples is not None:
        curve = CurveDef(curve.x, curve.y, curve.t_min, curve.t_max,
                         curve.name, samples, curve.closed)
    return curve


def curve_diameter(curve: CurveDef, ts: np.ndarray | None = None) -> float:
    """Bounding-box diagonal of the sampled points; the scale used by
    denominator guards."""
    if ts is None:
        ts = sample_grid(curve)
    p = _eval_xy(curve.x, curve.y, ts)
    good = np.isfinite(p).all(axis=1)
    if not good.any():
        raise RangeError(f"curve {curve.name!r} has no finite samples")
    span = p[good].max(axis=0) - p[good].min(axis=0)
    return float(math.hypot(span[0], span[1]))
