"""Exception types shared across the package.

Every error carries a human-readable message; the CLI maps them to exit
code 3 (bad input) except where noted.
"""


class PedalkitError(Exception):
    """Base class for all package errors."""


class ParseError(PedalkitError):
    """Raised on malformed expression or curve-file text.

    Carries the 1-based line and column of the offending token and the
    set of tokens that would have been accepted there.
    """

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        loc = f"line {line}, column {column}"
        if self.expected:
            message = f"{message} (expected {' or '.join(self.expected)})"
        super().__init__(f"{loc}: {message}")


class RangeError(PedalkitError):
    """Parameter domain or sampling request is invalid."""


class EvalError(PedalkitError):
    """Expression evaluation hit a domain error (log of a negative
    number, division by zero, derivative of abs at a root, ...)."""


class OriginSingularity(PedalkitError):
    """A construction that needs the curve or point away from the origin
    was fed one passing through it."""


class IrregularPoint(PedalkitError):
    """Frenet data requested where the velocity vanishes."""


class InflectionPoint(PedalkitError):
    """Osculating circle requested where the curvature vanishes."""


class HypothesisViolated(PedalkitError):
    """A classification or composition was requested outside the
    hypotheses that make its answer meaningful."""


class LiftFailure(PedalkitError):
    """No continuous unit normal could be built along the curve."""
