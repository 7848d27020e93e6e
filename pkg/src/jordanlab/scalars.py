"""Exact rational scalars.

Every number in this library is an exact rational: a plain ``int`` where the
value is integral, a ``fractions.Fraction`` in lowest terms otherwise.  The
two kinds mix freely in arithmetic and compare/hash consistently; keeping
integers as ``int`` makes the integer-heavy linear algebra much faster.
Floats are rejected everywhere -- there are no tolerances in this package.
"""

from __future__ import annotations

from fractions import Fraction

Scalar = int | Fraction


def exact(value: int | Fraction | str) -> Scalar:
    """Coerce to an exact scalar, collapsing integral fractions to int."""
    if type(value) is int:
        return value
    if type(value) is Fraction:
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, float):
        raise TypeError("floats are not exact; use int, Fraction or 'p/q' text")
    f = Fraction(value)
    return f.numerator if f.denominator == 1 else f


def scalar_str(value: Scalar) -> str:
    """Text form 'p' or 'p/q'; round-trips bit-exactly through parse_scalar."""
    return str(value)


def parse_scalar(text: str) -> Scalar:
    return exact(Fraction(text.strip()))
