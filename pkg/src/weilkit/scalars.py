"""Scalar modes: exact rationals (``Fraction``) and double floats."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import ModeError

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

Scalar = Union[Fraction, float]


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ModeError(f"unknown scalar mode {mode!r}", mode=mode)
    return mode


def to_scalar(value, mode: str) -> Scalar:
    """Coerce ``value`` into the scalar type of ``mode``.

    Strings are parsed as ``"p/q"`` rationals or decimals. Floats are refused in
    exact mode: silently rationalizing a binary float is exactly the drift the
    exact mode exists to avoid.
    """
    if mode == EXACT:
        if isinstance(value, bool):
            raise ModeError("booleans are not scalars")
        if isinstance(value, (int, Rational)):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ModeError(f"cannot parse rational {value!r}") from exc
        if isinstance(value, float):
            raise ModeError(f"float {value!r} given in exact mode", value=value)
        raise ModeError(f"unsupported scalar {value!r}")
    if mode == FLOAT:
        if isinstance(value, str):
            try:
                return float(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise ModeError(f"cannot parse number {value!r}") from exc
        if isinstance(value, (int, float, Rational)) and not isinstance(value, bool):
            return float(value)
        raise ModeError(f"unsupported scalar {value!r}")
    raise ModeError(f"unknown scalar mode {mode!r}", mode=mode)


def mode_of(value) -> str:
    if isinstance(value, float):
        return FLOAT
    return EXACT


def format_scalar(value):
    """JSON form: ``"p/q"`` strings for rationals, shortest round-trip floats."""
    if isinstance(value, float):
        if not math.isfinite(value):
            return repr(value)
        return value
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_close(a: float, b: float, rtol: float) -> bool:
    """Relative comparison with an absolute floor of ``rtol`` near zero."""
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))
