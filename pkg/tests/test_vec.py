import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pedalkit import OriginSingularity, Vec2
from pedalkit.vec import invert, invert_xy, perp, perp_xy, rotate, rotate_xy

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
nonzero_pt = st.tuples(finite, finite).filter(lambda p: math.hypot(*p) > 1e-6)


def test_vec2_basics():
    v = Vec2(3.0, 4.0)
    assert v.norm() == 5.0
    assert v.norm_sq() == 25.0
    assert v.dot(Vec2(1.0, 1.0)) == 7.0
    assert v.cross(Vec2(1.0, 0.0)) == -4.0
    assert ((v + Vec2(1.0, -1.0)).x, (v + Vec2(1.0, -1.0)).y) == (4.0, 3.0)
    assert ((2.0 * v).x, (2.0 * v).y) == (6.0, 8.0)
    assert ((-v).x, (-v).y) == (-3.0, -4.0)


def test_perp_is_quarter_turn():
    v = Vec2(1.0, 2.0)
    assert (perp(v).x, perp(v).y) == (-2.0, 1.0)
    assert (perp(perp(v)).x, perp(perp(v)).y) == (-1.0, -2.0)
    assert v.dot(perp(v)) == 0.0
    assert v.cross(perp(v)) == v.norm_sq()


def test_rotate_known_angles():
    v = Vec2(1.0, 0.0)
    r = rotate(v, math.pi / 2)
    assert abs(r.x) < 1e-16 and abs(r.y - 1.0) < 1e-16
    assert (rotate(v, 0.0).x, rotate(v, 0.0).y) == (1.0, 0.0)


@given(nonzero_pt, st.floats(min_value=-10, max_value=10))
def test_rotate_preserves_norm(p, theta):
    v = Vec2(*p)
    assert rotate(v, theta).norm() == pytest.approx(v.norm(), rel=1e-12)


@given(nonzero_pt)
def test_invert_involution(p):
    v = Vec2(*p)
    w = invert(invert(v))
    assert w.x == pytest.approx(v.x, rel=1e-12, abs=1e-12)
    assert w.y == pytest.approx(v.y, rel=1e-12, abs=1e-12)


@given(nonzero_pt)
def test_invert_norm_reciprocal(p):
    v = Vec2(*p)
    assert invert(v).norm() == pytest.approx(1.0 / v.norm(), rel=1e-12)


def test_invert_rejects_origin():
    with pytest.raises(OriginSingularity):
        invert(Vec2(0.0, 0.0))


def test_array_helpers_match_scalars():
    pts = np.array([[1.0, 2.0], [-0.5, 0.25], [3.0, -4.0]])
    for row, v in zip(perp_xy(pts), pts):
        assert tuple(row) == (perp(Vec2(*v)).x, perp(Vec2(*v)).y)
    for row, v in zip(rotate_xy(pts, 0.3), pts):
        w = rotate(Vec2(*v), 0.3)
        assert row[0] == pytest.approx(w.x, abs=1e-15)
        assert row[1] == pytest.approx(w.y, abs=1e-15)
    for row, v in zip(invert_xy(pts), pts):
        w = invert(Vec2(*v))
        assert row[0] == pytest.approx(w.x, rel=1e-15)
        assert row[1] == pytest.approx(w.y, rel=1e-15)


def test_invert_xy_flags_origin_rows_as_nan():
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    out = invert_xy(pts)
    assert not np.isfinite(out[0]).any()
    assert tuple(out[1]) == (1.0, 0.0)
