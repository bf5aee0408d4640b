"""Exact rational scalars.

Coefficients are stored as plain ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise, so integer-coefficient work (the common case)
runs at native int speed.  ``Fraction(3) == 3`` and both hash alike, so the two
representations are interchangeable for equality and dict keys.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Rat = Union[int, Fraction]


def rat(value) -> Rat:
    """Coerce ``value`` (int, Fraction, or "a/b" string) to a normalized rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return rat(Fraction(value.strip()))
    if isinstance(value, Rational):
        return rat(Fraction(value.numerator, value.denominator))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def normalize(value: Rat) -> Rat:
    if type(value) is Fraction and value.denominator == 1:
        return value.numerator
    return value


def div(a: Rat, b: Rat) -> Rat:
    """Exact quotient ``a / b``."""
    if b == 0:
        raise ZeroDivisionError("rational division by zero")
    if type(a) is int and type(b) is int:
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return normalize(Fraction(a) / b)


def to_str(value: Rat) -> str:
    """Render as ``"a"`` or ``"a/b"``."""
    return str(normalize(value))
