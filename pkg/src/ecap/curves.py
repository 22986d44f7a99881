"""Weierstrass models over Q and their size invariants.

The working model throughout the package is the integral short form
y^2 = x^3 + A*x + B.  A general integral model is brought to that form by the
6-power substitution x -> (x - 3*b2)/36, y -> (y - ...)/216, which multiplies
the discriminant by exactly 6^12.  The size of a short model is measured by
X = max(|A|^3, B^2); the invariants record log X together with the linear
bounds it implies for the heights of Delta and j and for
M = max(h(j), h(Delta_minimal)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from ecap.rationals import format_rational

__all__ = [
    "GeneralWeierstrass",
    "ShortWeierstrass",
    "CurveInvariants",
    "RescaledSizeBounds",
    "to_short_form",
    "invariants",
    "rescale",
    "x_prime_bound",
    "parse_short_curve",
    "parse_general_curve",
]

# Constants of the displayed size bounds.  They come from explicit triangle
# inequalities: |Delta| <= 496*X gives log 496 < 6.21, the unreduced j
# numerator 6912*A^3 gives log 6912 < 8.85, and the 6^12 discriminant factor
# gives 24*log 6 + 0.7 < 43.71.
H_DELTA_SLACK = 6.21
H_J_SLACK = 8.85
M_LOWER_SLACK = 43.71


@dataclass(frozen=True)
class GeneralWeierstrass:
    """Integral model y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant() == 0:
            raise ValueError("singular model: discriminant is zero")

    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class ShortWeierstrass:
    """Integral short model y^2 = x^3 + A*x + B with nonzero discriminant."""

    A: int
    B: int

    def __post_init__(self):
        if self.discriminant() == 0:
            raise ValueError("singular model: 4*A^3 + 27*B^2 = 0")

    def discriminant(self) -> int:
        return -16 * (4 * self.A ** 3 + 27 * self.B ** 2)

    def j_invariant(self) -> Fraction:
        return Fraction(1728 * 4 * self.A ** 3, 4 * self.A ** 3 + 27 * self.B ** 2)

    def x_size(self) -> int:
        """X = max(|A|^3, B^2); at least 1 for any nonsingular model."""
        return max(abs(self.A) ** 3, self.B ** 2)


@dataclass(frozen=True)
class CurveInvariants:
    """Exact Delta and j next to the floating size bounds they satisfy.

    m_lower and m_upper bracket M = max(h(j), h(Delta_minimal)) under the
    assumption that the model arose from a minimal one: M <= log X + 8.85 and
    (log X - 43.71)/2 <= M.
    """

    delta: int
    j: Fraction
    x_size: int
    log_x: float
    h_delta_bound: float
    h_j_bound: float
    m_lower: float
    m_upper: float

    def as_json_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "j": format_rational(self.j),
            "logX": self.log_x,
            "bounds": {
                "h_delta_max": self.h_delta_bound,
                "h_j_max": self.h_j_bound,
                "m_min": self.m_lower,
                "m_max": self.m_upper,
            },
        }


class RescaledSizeBounds(NamedTuple):
    """M-bracket for the model (k^4*A, k^6*B), whose size is X' = k^12*X."""

    log_x_prime: float
    m_lower: float
    m_upper: float


def to_short_form(gw: GeneralWeierstrass) -> ShortWeierstrass:
    """Clear a1, a2, a3 by the 6-power substitution; Delta scales by 6^12.

    With b2 = a1^2 + 4*a2 the substitution x -> (x - 3*b2)/36 (and the
    matching y shift) lands on y^2 = x^3 - 27*c4*x - 54*c6, so the output is
    A = -27*c4, B = -54*c6.
    """
    b2, b4, b6, _ = gw.b_invariants()
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    return ShortWeierstrass(A=-27 * c4, B=-54 * c6)


def invariants(sw: ShortWeierstrass) -> CurveInvariants:
    """Exact Delta and j plus the log X size bounds for the model."""
    x = sw.x_size()
    log_x = math.log(x)
    return CurveInvariants(
        delta=sw.discriminant(),
        j=sw.j_invariant(),
        x_size=x,
        log_x=log_x,
        h_delta_bound=log_x + H_DELTA_SLACK,
        h_j_bound=log_x + H_J_SLACK,
        m_lower=(log_x - M_LOWER_SLACK) / 2.0,
        m_upper=log_x + H_J_SLACK,
    )


def rescale(sw: ShortWeierstrass, k: int) -> ShortWeierstrass:
    """The isomorphic model (k^4*A, k^6*B), image of (x, y) -> (x*k^2, y*k^3)."""
    if k < 1:
        raise ValueError("rescale factor must be a positive integer")
    return ShortWeierstrass(A=k ** 4 * sw.A, B=k ** 6 * sw.B)


def x_prime_bound(sw: ShortWeierstrass, k: int) -> RescaledSizeBounds:
    """M-bracket seen through the rescaled model's size X' = k^12 * X.

    The 12*log k contributed by the rescaling cancels against X', so for
    k = 1 this reduces to the bracket stored in invariants().
    """
    if k < 1:
        raise ValueError("rescale factor must be a positive integer")
    log_x_prime = 12 * math.log(k) + math.log(sw.x_size())
    shift = log_x_prime - 12 * math.log(k)
    return RescaledSizeBounds(
        log_x_prime=log_x_prime,
        m_lower=(shift - M_LOWER_SLACK) / 2.0,
        m_upper=shift + H_J_SLACK,
    )


def parse_short_curve(text: str) -> ShortWeierstrass:
    """Parse "A,B" into a short model."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"expected 'A,B', got {text!r}")
    return ShortWeierstrass(A=int(parts[0]), B=int(parts[1]))


def parse_general_curve(text: str) -> GeneralWeierstrass:
    """Parse "a1,a2,a3,a4,a6" into a general model."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 5:
        raise ValueError(f"expected 'a1,a2,a3,a4,a6', got {text!r}")
    return GeneralWeierstrass(*(int(p) for p in parts))
