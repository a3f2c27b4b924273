"""Exact rational scalars.

Rationals are plain ``fractions.Fraction`` values: always reduced, with a
positive denominator and zero stored as 0/1. This module only adds coercion
and the canonical text form used in reports ("-3/2", "5", "0").
"""

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from ..exceptions import InputError

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """
    Coerce a value to an exact rational.

    Integers, Fractions and strings ("3/4", "-2", "0.125") are accepted.
    Floats are rejected: they are not exact.

    Args:
        value: Value to convert

    Returns:
        The value as a Fraction
    """
    if isinstance(value, bool):
        raise InputError(f"Booleans are not rationals: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"Cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse the canonical "num/den" form (or an integer / decimal string)."""
    stripped = text.strip()
    if not stripped:
        raise InputError("Empty string is not a rational")
    try:
        if "/" in stripped:
            num, den = stripped.split("/", 1)
            if int(den) == 0:
                raise InputError(f"Zero denominator in {text!r}")
            return Fraction(int(num), int(den))
        if any(ch in stripped for ch in ".eE"):
            return Fraction(Decimal(stripped))
        return Fraction(int(stripped))
    except (ValueError, InvalidOperation) as e:
        raise InputError(f"Not a rational: {text!r}") from e


def format_rational(value: RationalLike) -> str:
    """Canonical text form: "num/den", or just "num" when den is 1."""
    q = as_rational(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sign(value: Fraction) -> int:
    """-1, 0 or 1."""
    return (value > 0) - (value < 0)
