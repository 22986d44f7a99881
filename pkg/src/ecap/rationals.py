"""Exact integer and rational scalar layer.

Integers are plain Python ints (unbounded); rationals are
``fractions.Fraction``, which already enforces the normal form everything
downstream relies on: gcd(num, den) = 1 and den > 0, with structural
equality.  This module adds the height function and the text format used by
the CLI ("p/q", or "p" when the denominator is 1).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

__all__ = [
    "Rational",
    "gcd",
    "lcm",
    "log_height",
    "parse_rational",
    "format_rational",
    "as_fraction",
]

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def gcd(a: int, b: int) -> int:
    """Nonnegative greatest common divisor; gcd(0, 0) = 0."""
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    """Nonnegative least common multiple, with lcm * gcd = |a*b|.

    Rejects a = b = 0, for which no finite multiple exists.
    """
    if a == 0 and b == 0:
        raise ValueError("lcm(0, 0) is undefined")
    return math.lcm(a, b)


def log_height(q: Fraction | int) -> float:
    """Logarithmic height of a rational: log max(|num|, den) in lowest terms.

    By convention log_height(0) = 0.  Exactness note: the max is taken on
    exact integers and only the final log is floating point (math.log of a
    big int is computed from its bit length and mantissa, so there is no
    overflow and the result is correct to double precision).
    """
    q = Fraction(q)
    return math.log(max(abs(q.numerator), q.denominator))


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" with an optional leading minus; rejects q = 0."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction | int) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_fraction(x) -> Fraction:
    """Coerce a parameter to an exact Fraction.

    Strings go through Fraction's parser, so "3/5" and "0.35" both convert
    exactly.  Floats are read through their shortest decimal repr (0.35 means
    7/20, not the nearest binary double), which is what command-line decimal
    input is meant to say.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")
