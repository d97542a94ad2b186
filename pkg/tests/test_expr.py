import math

import numpy as np
import pytest

import pedalkit.expr as ex
from pedalkit.errors import EvalError, ParseError

from _exprgen import expression_corpus


@pytest.mark.parametrize("text, t, expected", [
    ("2+3*4^2", 0.0, 50.0),
    ("2^3^2", 0.0, 512.0),          # right-associative
    ("-t^2", 3.0, 9.0),             # '^' binds the signed factor
    ("-(t^2)", 3.0, -9.0),
    ("sin(t)^2 + cos(t)^2", 0.7, 1.0),
    ("pi", 0.0, math.pi),
    ("e", 0.0, math.e),
    ("sqrt(3)", 0.0, math.sqrt(3)),
    ("abs(-4) / 2", 0.0, 2.0),
    ("(30*cos(t) - 17*cos(3*t) + 3*cos(5*t))/32", 0.0, 0.5),
])
def test_evaluate_known_values(text, t, expected):
    assert ex.evaluate(ex.parse_expr(text), t) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("bad, fragment", [
    ("sin(", "unexpected end of input"),
    ("t t", "trailing input"),
    ("foo(t)", "unknown identifier 'foo'"),
    ("2 +", "unexpected end of input"),
    ("(t", "expected ')'"),
    ("", "unexpected end of input"),
])
def test_parse_errors_carry_position(bad, fragment):
    with pytest.raises(ParseError) as err:
        ex.parse_expr(bad)
    assert fragment in str(err.value)
    assert "line 1" in str(err.value)


@pytest.mark.parametrize("text, dtext", [
    ("sin(t)", "cos(t)"),
    ("t^3", "3.0*t^2.0"),
    ("sin(t)/sqrt(3)", "cos(t)/sqrt(3.0)"),
])
def test_differentiate_prints_expected(text, dtext):
    assert ex.to_text(ex.differentiate(ex.parse_expr(text))) == dtext


def test_differentiate_chain_and_product():
    d = ex.differentiate(ex.parse_expr("t^2 * exp(sin(t))"))
    f = lambda t: t * t * math.exp(math.sin(t))
    h = 1e-6
    for t in (0.3, 1.1, 2.5):
        fd = (f(t + h) - f(t - h)) / (2 * h)
        assert ex.evaluate(d, t) == pytest.approx(fd, rel=1e-7, abs=1e-9)


def test_abs_derivative_is_sign_away_from_zero():
    d = ex.differentiate(ex.parse_expr("abs(t)"))
    assert ex.evaluate(d, 2.0) == 1.0
    assert ex.evaluate(d, -2.0) == -1.0
    with pytest.raises(EvalError):
        ex.evaluate(d, 0.0)


def test_scalar_domain_errors_raise_but_arrays_yield_nan():
    e = ex.parse_expr("log(t)")
    with pytest.raises(EvalError):
        ex.evaluate(e, -1.0)
    out = ex.evaluate_array(e, np.array([-1.0, 1.0, math.e]))
    assert not np.isfinite(out[0])
    assert out[1] == 0.0
    assert out[2] == pytest.approx(1.0, abs=1e-15)


def test_evaluate_array_matches_scalar_loop():
    e = ex.parse_expr("sin(2*t) + t/(abs(cos(t)) + 1)")
    ts = np.linspace(0.0, 6.0, 37)
    arr = ex.evaluate_array(e, ts)
    for t, v in zip(ts, arr):
        assert v == ex.evaluate(e, float(t))


@pytest.mark.parametrize("text", expression_corpus(seed=1202, count=40))
def test_round_trip_through_text(text):
    parsed = ex.parse_expr(text)
    printed = ex.to_text(parsed)
    again = ex.parse_expr(printed)
    ts = np.linspace(0.15, 2.9, 64)
    a = ex.evaluate_array(parsed, ts)
    b = ex.evaluate_array(again, ts)
    assert np.isfinite(a).all()
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


@pytest.mark.parametrize("text", expression_corpus(seed=1202, count=40))
def test_symbolic_derivative_matches_central_difference(text):
    parsed = ex.parse_expr(text)
    deriv = ex.differentiate(parsed)
    ts = np.linspace(0.15, 2.9, 64)
    h = 1e-5
    sym = ex.evaluate_array(deriv, ts)
    fd = (ex.evaluate_array(parsed, ts + h) - ex.evaluate_array(parsed, ts - h)) / (2 * h)
    scale = np.maximum(1.0, np.abs(sym))
    assert np.isfinite(sym).all()
    assert (np.abs(sym - fd) / scale).max() < 1e-7


def test_simplify_preserves_value():
    e = ex.parse_expr("0*t + 1*(t + 0) + t^1 - 0")
    s = ex.simplify(e)
    for t in (0.0, 1.3, -2.7):
        assert ex.evaluate(s, t) == ex.evaluate(e, t)


def test_depends_on_t():
    assert ex.depends_on_t(ex.parse_expr("sin(t) + 1"))
    assert not ex.depends_on_t(ex.parse_expr("2*pi + e^2"))
