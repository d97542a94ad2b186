"""Symbolic expressions in one parameter t.

Grammar (infix, left-associative except '^' which is right-associative
and whose base may itself carry a unary minus):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := unary ('^' factor)?
    unary  := '-' unary | atom
    atom   := number | 'pi' | 'e' | 't' | ident '(' expr ')' | '(' expr ')'

Note the base rule: "-t^2" parses as (-t)^2.  Functions: sin, cos, tan,
sqrt, exp, log, abs.  Evaluation accepts a float or a numpy array; the
scalar path raises EvalError on domain errors, the array path lets
non-finite values propagate so callers can flag samples.  differentiate()
returns a new tree (abs differentiates to a sign factor, so evaluating
the derivative at a root of the argument is an EvalError).  to_text()
prints a form that reparses to the identical tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EvalError, ParseError

FUNCTIONS = ("sin", "cos", "tan", "sqrt", "exp", "log", "abs")
CONSTANTS = {"pi": math.pi, "e": math.e}

_MATH_FN = {
    "sin": math.sin, "cos": math.cos, "tan": math.tan,
    "sqrt": math.sqrt, "exp": math.exp, "log": math.log, "abs": abs,
}
_NUMPY_FN = {
    "sin": np.sin, "cos": np.cos, "tan": np.tan,
    "sqrt": np.sqrt, "exp": np.exp, "log": np.log, "abs": np.abs,
}


class Expr:
    """Base class; nodes are immutable and compare structurally."""

    def __call__(self, t):
        return evaluate(self, t)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Const(Expr):
    name: str  # 'pi' or 'e'


@dataclass(frozen=True)
class Param(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Expr


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


T = Param()


# ---------------------------------------------------------------------------
# tokenizer


@dataclass(frozen=True)
class _Token:
    kind: str  # 'num', 'ident', 'op', 'end'
    text: str
    line: int
    column: int


def _tokenize(text: str, line_offset: int = 1, col_offset: int = 1) -> list[_Token]:
    toks = []
    i, n = 0, len(text)
    line, col = line_offset, col_offset
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            # exponent part only if it really is one ("2e3", not "2*e")
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    k += 1
                    while k < n and text[k].isdigit():
                        k += 1
                    j = k
            toks.append(_Token("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^()":
            toks.append(_Token("op", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col,
                         ("number", "identifier", "operator"))
    toks.append(_Token("end", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.peek()
        if tok.kind == "op" and tok.text == op:
            self.pos += 1
            return
        raise ParseError(f"found {tok.text!r}" if tok.kind != "end" else "unexpected end of input",
                         tok.line, tok.column, (repr(op),))

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.take()
                rhs = self.parse_term()
                node = Add(node, rhs) if tok.text == "+" else Sub(node, rhs)
            else:
                return node

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "*/":
                self.take()
                rhs = self.parse_factor()
                node = Mul(node, rhs) if tok.text == "*" else Div(node, rhs)
            else:
                return node

    def parse_factor(self) -> Expr:
        base = self.parse_unary()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.take()
            return Pow(base, self.parse_factor())
        return base

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            arg = self.parse_unary()
            # fold a negated literal so that printing Num(-3.0) as
            # "-3.0" reparses to the identical tree
            if isinstance(arg, Num):
                return Num(-arg.value)
            return Neg(arg)
        return self.parse_atom()

    def parse_atom(self) -> Expr:
        tok = self.take()
        if tok.kind == "num":
            return Num(float(tok.text))
        if tok.kind == "ident":
            if tok.text == "t":
                return T
            if tok.text in CONSTANTS:
                return Const(tok.text)
            if tok.text in FUNCTIONS:
                self.expect_op("(")
                arg = self.parse_expr()
                self.expect_op(")")
                return Call(tok.text, arg)
            raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.column,
                             ("t", "pi", "e") + FUNCTIONS)
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        what = "unexpected end of input" if tok.kind == "end" else f"found {tok.text!r}"
        raise ParseError(what, tok.line, tok.column,
                         ("number", "'t'", "function", "'('", "'-'"))


def parse_expr(text: str, line: int = 1, column: int = 1) -> Expr:
    """Parse one expression; line/column seed error locations when the
    text is embedded in a larger file."""
    parser = _Parser(_tokenize(text, line, column))
    node = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column,
                         ("end of expression",))
    return node


# ---------------------------------------------------------------------------
# evaluation


def evaluate(e: Expr, t):
    """Evaluate at a float (raises EvalError on domain errors) or at a
    numpy array (domain errors become non-finite entries)."""
    if isinstance(t, np.ndarray):
        with np.errstate(all="ignore"):
            return _eval_array(e, t)
    try:
        return _eval_scalar(e, float(t))
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise EvalError(f"cannot evaluate {to_text(e)!r} at t={t!r}: {exc}") from exc


def _eval_scalar(e: Expr, t: float) -> float:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Const):
        return CONSTANTS[e.name]
    if isinstance(e, Param):
        return t
    if isinstance(e, Neg):
        return -_eval_scalar(e.arg, t)
    if isinstance(e, Add):
        return _eval_scalar(e.left, t) + _eval_scalar(e.right, t)
    if isinstance(e, Sub):
        return _eval_scalar(e.left, t) - _eval_scalar(e.right, t)
    if isinstance(e, Mul):
        return _eval_scalar(e.left, t) * _eval_scalar(e.right, t)
    if isinstance(e, Div):
        return _eval_scalar(e.left, t) / _eval_scalar(e.right, t)
    if isinstance(e, Pow):
        base = _eval_scalar(e.base, t)
        expo = _eval_scalar(e.exponent, t)
        return base ** expo
    if isinstance(e, Call):
        return _MATH_FN[e.func](_eval_scalar(e.arg, t))
    raise TypeError(f"not an Expr node: {e!r}")


def _eval_array(e: Expr, t: np.ndarray):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Const):
        return CONSTANTS[e.name]
    if isinstance(e, Param):
        return t
    if isinstance(e, Neg):
        return -_eval_array(e.arg, t)
    if isinstance(e, Add):
        return _eval_array(e.left, t) + _eval_array(e.right, t)
    if isinstance(e, Sub):
        return _eval_array(e.left, t) - _eval_array(e.right, t)
    if isinstance(e, Mul):
        return _eval_array(e.left, t) * _eval_array(e.right, t)
    if isinstance(e, Div):
        return _eval_array(e.left, t) / _eval_array(e.right, t)
    if isinstance(e, Pow):
        return np.power(_eval_array(e.base, t), _eval_array(e.exponent, t))
    if isinstance(e, Call):
        return _NUMPY_FN[e.func](_eval_array(e.arg, t))
    raise TypeError(f"not an Expr node: {e!r}")


def evaluate_array(e: Expr, ts: np.ndarray) -> np.ndarray:
    """Like evaluate() on an array, but the result is always an array
    of ts's shape (constants are broadcast)."""
    val = evaluate(e, ts)
    if not isinstance(val, np.ndarray):
        val = np.full(ts.shape, float(val))
    return val


def depends_on_t(e: Expr) -> bool:
    if isinstance(e, Param):
        return True
    if isinstance(e, (Num, Const)):
        return False
    if isinstance(e, Neg):
        return depends_on_t(e.arg)
    if isinstance(e, Call):
        return depends_on_t(e.arg)
    if isinstance(e, Pow):
        return depends_on_t(e.base) or depends_on_t(e.exponent)
    return depends_on_t(e.left) or depends_on_t(e.right)


# ---------------------------------------------------------------------------
# smart constructors: constant folding plus 0/1 identities, nothing clever


def _is_num(e: Expr, v: float | None = None) -> bool:
    return isinstance(e, Num) and (v is None or e.value == v)


def add(a: Expr, b: Expr) -> Expr:
    if _is_num(a) and _is_num(b):
        return Num(a.value + b.value)
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if _is_num(a) and _is_num(b):
        return Num(a.value - b.value)
    if _is_num(b, 0.0):
        return a
    if _is_num(a, 0.0):
        return neg(b)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if _is_num(a) and _is_num(b):
        return Num(a.value * b.value)
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return Num(0.0)
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    if _is_num(a, -1.0):
        return neg(b)
    if _is_num(b, -1.0):
        return neg(a)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0) and not _is_num(b, 0.0):
        return Num(0.0)
    if _is_num(b, 1.0):
        return a
    if _is_num(a) and _is_num(b) and b.value != 0.0:
        return Num(a.value / b.value)
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Num):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def pow_(a: Expr, b: Expr) -> Expr:
    if _is_num(b, 1.0):
        return a
    if _is_num(b, 0.0):
        return Num(1.0)
    if _is_num(a) and _is_num(b):
        try:
            return Num(float(a.value ** b.value))
        except (ValueError, OverflowError, ZeroDivisionError):
            pass
    return Pow(a, b)


def simplify(e: Expr) -> Expr:
    """Bottom-up pass through the smart constructors."""
    if isinstance(e, (Num, Const, Param)):
        return e
    if isinstance(e, Neg):
        return neg(simplify(e.arg))
    if isinstance(e, Add):
        return add(simplify(e.left), simplify(e.right))
    if isinstance(e, Sub):
        return sub(simplify(e.left), simplify(e.right))
    if isinstance(e, Mul):
        return mul(simplify(e.left), simplify(e.right))
    if isinstance(e, Div):
        return div(simplify(e.left), simplify(e.right))
    if isinstance(e, Pow):
        return pow_(simplify(e.base), simplify(e.exponent))
    if isinstance(e, Call):
        return Call(e.func, simplify(e.arg))
    raise TypeError(f"not an Expr node: {e!r}")


# ---------------------------------------------------------------------------
# differentiation


def differentiate(e: Expr) -> Expr:
    """d/dt, with conservative simplification of the result."""
    if isinstance(e, (Num, Const)):
        return Num(0.0)
    if isinstance(e, Param):
        return Num(1.0)
    if isinstance(e, Neg):
        return neg(differentiate(e.arg))
    if isinstance(e, Add):
        return add(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Sub):
        return sub(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Mul):
        return add(mul(differentiate(e.left), e.right),
                   mul(e.left, differentiate(e.right)))
    if isinstance(e, Div):
        if not depends_on_t(e.right):
            return div(differentiate(e.left), e.right)
        num = sub(mul(differentiate(e.left), e.right),
                  mul(e.left, differentiate(e.right)))
        return div(num, pow_(e.right, Num(2.0)))
    if isinstance(e, Pow):
        if not depends_on_t(e.exponent):
            # c * u^(c-1) * u'
            c = e.exponent
            return mul(mul(c, pow_(e.base, sub(c, Num(1.0)))),
                       differentiate(e.base))
        # general u^v: u^v * (v' log u + v u'/u)
        u, v = e.base, e.exponent
        return mul(e, add(mul(differentiate(v), Call("log", u)),
                          mul(v, div(differentiate(u), u))))
    if isinstance(e, Call):
        u, du = e.arg, differentiate(e.arg)
        if e.func == "sin":
            return mul(Call("cos", u), du)
        if e.func == "cos":
            return neg(mul(Call("sin", u), du))
        if e.func == "tan":
            return div(du, pow_(Call("cos", u), Num(2.0)))
        if e.func == "sqrt":
            return div(du, mul(Num(2.0), Call("sqrt", u)))
        if e.func == "exp":
            return mul(e, du)
        if e.func == "log":
            return div(du, u)
        if e.func == "abs":
            # sign(u) away from zero; at a root this divides by zero,
            # which the scalar evaluator reports as EvalError
            return mul(div(u, Call("abs", u)), du)
    raise TypeError(f"not an Expr node: {e!r}")


# ---------------------------------------------------------------------------
# printing; parse(to_text(e)) == e


_ADD, _MUL, _UNARY, _POW, _ATOM = 1, 2, 3, 4, 5


def _level(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _ADD
    if isinstance(e, (Mul, Div)):
        return _MUL
    if isinstance(e, Neg):
        return _UNARY
    if isinstance(e, Pow):
        return _POW
    if isinstance(e, Num) and (e.value < 0 or math.copysign(1.0, e.value) < 0):
        return _UNARY  # prints with a leading '-'
    return _ATOM


def _wrap(e: Expr, min_level: int) -> str:
    text = to_text(e)
    if _level(e) < min_level:
        return f"({text})"
    return text


def to_text(e: Expr) -> str:
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Param):
        return "t"
    if isinstance(e, Neg):
        # anything below atom level is parenthesized: "-a^b" would
        # reparse as (-a)^b, "-a*b" as (-a)*b
        return "-" + _wrap(e.arg, _ATOM)
    if isinstance(e, Add):
        return f"{_wrap(e.left, _ADD)} + {_wrap(e.right, _MUL)}"
    if isinstance(e, Sub):
        return f"{_wrap(e.left, _ADD)} - {_wrap(e.right, _MUL)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.left, _MUL)}*{_wrap(e.right, _UNARY)}"
    if isinstance(e, Div):
        return f"{_wrap(e.left, _MUL)}/{_wrap(e.right, _UNARY)}"
    if isinstance(e, Pow):
        # base must be an atom textually, else (-a)^b / (a*b)^c misparse
        return f"{_wrap(e.base, _ATOM)}^{_wrap(e.exponent, _POW)}"
    if isinstance(e, Call):
        return f"{e.func}({to_text(e.arg)})"
    raise TypeError(f"not an Expr node: {e!r}")
