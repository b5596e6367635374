"""Exact rational coefficients.

Coefficients are ``gmpy2.mpq`` values: always reduced, positive
denominator, arbitrary precision.  They compare and hash equal to the
corresponding ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2

Rational = type(gmpy2.mpq(0))

ZERO = gmpy2.mpq(0)
ONE = gmpy2.mpq(1)


def Q(value, den: int | None = None) -> Rational:
    """Build a rational from an int, ``Fraction``, ``mpq`` or ``"p/q"`` string."""
    if den is not None:
        return gmpy2.mpq(value, den)
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coefficients")
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact fraction: {value!r}")
        return gmpy2.mpq(Fraction(text))
    return gmpy2.mpq(value)


def rational_str(q) -> str:
    """``"p/q"`` form, denominator always written."""
    q = Q(q)
    return f"{q.numerator}/{q.denominator}"


def to_fraction(q) -> Fraction:
    q = Q(q)
    return Fraction(int(q.numerator), int(q.denominator))
