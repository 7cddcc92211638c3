"""Text round-tripping of rationals ("p" or "p/q" strings)."""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidInput


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions and "p/q" strings; floats are refused (inexact)."""
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInput(f"refusing inexact or boolean coefficient {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise InvalidInput(f"rationals must be written as p or p/q, got {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational number: {value!r}") from exc
    raise InvalidInput(f"not a rational number: {value!r}")


def rational_str(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
