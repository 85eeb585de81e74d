"""Numeric modes, the float comparison tolerance, and scalar text round-trips."""
from __future__ import annotations

import ast
import contextlib
import enum
import math
import os
from fractions import Fraction

from mvfix.errors import InexactResult, ModeMismatch
from mvfix.taunum import TauNumber, tau

TOLERANCE_ENV = "MVFIX_FLOAT_TOL"
DEFAULT_FLOAT_TOL = 1e-12


class Mode(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def _tol_from_env() -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if not raw:
        return DEFAULT_FLOAT_TOL
    value = float(raw)
    if not value >= 0:
        raise ValueError(f"{TOLERANCE_ENV} must be a nonnegative number, got {raw!r}")
    return value


_float_tol = _tol_from_env()


def float_tolerance() -> float:
    return _float_tol


def set_float_tolerance(value: float) -> None:
    global _float_tol
    if not value >= 0:
        raise ValueError("tolerance must be nonnegative")
    _float_tol = float(value)


@contextlib.contextmanager
def tolerance(value: float):
    """Temporarily override the float comparison tolerance."""
    old = _float_tol
    set_float_tolerance(value)
    try:
        yield
    finally:
        set_float_tolerance(old)


def mode_of(x) -> Mode:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, float):
        return Mode.FLOAT
    if isinstance(x, (int, Fraction, TauNumber)):
        return Mode.EXACT
    raise TypeError(f"not a scalar: {x!r}")


def common_mode(values) -> Mode | None:
    mode = None
    for v in values:
        m = mode_of(v)
        if mode is None:
            mode = m
        elif m is not mode:
            raise ModeMismatch("exact and float scalars mixed in one computation")
    return mode


def to_mode(x, mode: Mode):
    """Normalise ``x`` for ``mode``: ints become Fractions or floats; no cross-mode coercion."""
    m = mode_of(x)
    if mode is Mode.FLOAT:
        if m is Mode.FLOAT:
            return x
        if isinstance(x, int):
            return float(x)
        raise ModeMismatch(f"exact scalar {x} used in float mode")
    if m is Mode.FLOAT:
        raise ModeMismatch(f"float scalar {x!r} used in exact mode")
    return Fraction(x) if isinstance(x, int) else x


def exact_sqrt(q):
    """Exact square root of a nonnegative rational, or InexactResult."""
    if isinstance(q, TauNumber):
        raise InexactResult("square root of a symbolic tau expression")
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative number")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise InexactResult(f"sqrt({q}) is irrational")
    return Fraction(rn, rd)


def leq(a, b) -> bool:
    """a <= b, with the global tolerance applied in float mode."""
    if isinstance(a, float) or isinstance(b, float):
        return a <= b + _float_tol
    return a <= b


def close(a, b) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= _float_tol
    return a == b


# -- text form ---------------------------------------------------------------------


def format_scalar(x) -> str:
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, int):
        return str(x)
    return str(x)


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
           ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b}


def _eval_exact(node):
    if isinstance(node, ast.Expression):
        return _eval_exact(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_exact(node.left), _eval_exact(node.right))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_exact(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "tau"
            and len(node.args) == 1 and not node.keywords
            and isinstance(node.args[0], ast.Constant) and isinstance(node.args[0].value, int)):
        return tau(node.args[0].value)
    raise ValueError("unsupported exact scalar syntax")


def parse_scalar(raw, mode: Mode):
    """Parse a scalar from a problem file.

    Exact mode accepts ints, "p/q" strings, and polynomial expressions in
    ``tau(k)`` such as "1 - tau(12)".  Float mode accepts numbers and decimal
    strings.
    """
    if isinstance(raw, bool):
        raise ValueError("booleans are not scalars")
    if mode is Mode.FLOAT:
        if isinstance(raw, (int, float)):
            return float(raw)
        if isinstance(raw, str):
            if "/" in raw:
                return float(Fraction(raw.strip()))
            return float(raw)
        raise ValueError(f"expected a number, got {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        raise ValueError(f"float {raw!r} in exact mode; write rationals as \"p/q\" strings")
    if isinstance(raw, str):
        text = raw.strip()
        try:
            return Fraction(text)
        except ValueError:
            pass
        try:
            tree = ast.parse(text, mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse scalar {raw!r}") from exc
        try:
            value = _eval_exact(tree)
        except ZeroDivisionError as exc:
            raise ValueError(f"division by zero in {raw!r}") from exc
        except ValueError as exc:
            raise ValueError(f"cannot parse scalar {raw!r}: {exc}") from exc
        return value
    raise ValueError(f"expected a rational string, got {raw!r}")
