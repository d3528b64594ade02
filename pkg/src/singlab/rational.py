"""Parsing and printing of exact rationals ("p" or "p/q")."""

from fractions import Fraction
from math import gcd, lcm
import re

from .errors import ValidationError

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions or strings of the form 'p', '-p', 'p/q'."""
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if m is None:
            raise ValidationError(f"not a rational: {value!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValidationError(f"zero denominator: {value!r}")
        return Fraction(int(m.group(1)), den)
    raise ValidationError(f"not a rational: {value!r}")


def fmt_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_vector(values) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


def common_denominator(rows) -> int:
    den = 1
    for row in rows:
        for q in row:
            den = lcm(den, Fraction(q).denominator)
    return den


def primitive(vec: list[int]) -> list[int]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g <= 1:
        return list(vec)
    return [v // g for v in vec]
