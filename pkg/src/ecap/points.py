"""Exact group law on E(Q), torsion testing, and bounded point enumeration.

Points are plain values with no back-reference to a curve; every operation
takes the curve explicitly.  Affine coordinates are Fractions and all group
arithmetic is exact.  Enumeration walks the lattice x = m/e^2 (gcd(m, e) = 1)
and keeps the x for which the cubic's value is a perfect square, delegating
the int64-sized part of the scan to the compiled kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ecap import _kernels
from ecap.curves import ShortWeierstrass
from ecap.rationals import format_rational, parse_rational

__all__ = [
    "Point",
    "INFINITY",
    "XZDecomposition",
    "ScanResult",
    "on_curve",
    "add",
    "mul",
    "x_of_sum_formula",
    "is_torsion",
    "torsion_order",
    "decompose",
    "enumerate_points",
    "scan_points",
    "parse_point",
    "format_point",
]

# Rational torsion orders are 1..10 or 12, so order search stops at 12.
MAX_TORSION_ORDER = 12


@dataclass(frozen=True)
class Point:
    """Affine rational point (x, y) or the point at infinity (x is None)."""

    x: Fraction | None
    y: Fraction | None

    @staticmethod
    def affine(x, y) -> "Point":
        return Point(Fraction(x), Fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "Point":
        if self.is_infinity:
            return self
        return Point(self.x, -self.y)


INFINITY = Point(None, None)


@dataclass(frozen=True)
class XZDecomposition:
    """x = m / e^2 with gcd(m, e) = 1 and e >= 1."""

    m: int
    e: int


@dataclass(frozen=True)
class ScanResult:
    points: list
    truncated: bool
    candidates: int


def on_curve(sw: ShortWeierstrass, p: Point) -> bool:
    """Exact membership test; infinity is always on the curve."""
    if p.is_infinity:
        return True
    return p.y * p.y == p.x ** 3 + sw.A * p.x + sw.B


def _require_on_curve(sw, p, name):
    if not on_curve(sw, p):
        raise ValueError(f"point {name} is not on y^2 = x^3 + {sw.A}x + {sw.B}")


def add(sw: ShortWeierstrass, p: Point, q: Point, *, check: bool = True) -> Point:
    """Chord-tangent sum of two points, exactly."""
    if check:
        _require_on_curve(sw, p, "p")
        _require_on_curve(sw, q, "q")
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    if p.x == q.x:
        if p.y != q.y or p.y == 0:
            return INFINITY
        slope = (3 * p.x * p.x + sw.A) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope * slope - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    return Point(x3, y3)


def mul(sw: ShortWeierstrass, n: int, p: Point) -> Point:
    """n-fold sum by double-and-add; mul(0, P) = O, mul(-n, P) = mul(n, -P)."""
    _require_on_curve(sw, p, "p")
    if n < 0:
        n, p = -n, -p
    acc = INFINITY
    addend = p
    while n:
        if n & 1:
            acc = add(sw, acc, addend, check=False)
        n >>= 1
        if n:
            addend = add(sw, addend, addend, check=False)
    return acc


def x_of_sum_formula(sw: ShortWeierstrass, p: Point, q: Point, s: int) -> Fraction:
    """x(P+Q) via the common-denominator identity for x(P) = x1/s, x(Q) = x2/s.

    x(P+Q) = ((x1*x2 + s^2*A)*(x1 + x2) + 2*s^3*B - 2*s^3*y(P)*y(Q))
             / (s*(x1 - x2)^2)

    Requires x(P) != x(Q) and both s*x(P), s*x(Q) integral; agrees exactly
    with x(add(p, q)).
    """
    _require_on_curve(sw, p, "p")
    _require_on_curve(sw, q, "q")
    if p.is_infinity or q.is_infinity:
        raise ValueError("both points must be affine")
    if s < 1:
        raise ValueError("s must be a positive integer")
    if p.x == q.x:
        raise ValueError("x(P) = x(Q): the chord denominator vanishes")
    sx1 = s * p.x
    sx2 = s * q.x
    if sx1.denominator != 1 or sx2.denominator != 1:
        raise ValueError(f"s = {s} does not clear the denominators of x(P), x(Q)")
    x1, x2 = sx1.numerator, sx2.numerator
    num = (x1 * x2 + s * s * sw.A) * (x1 + x2) + 2 * s ** 3 * sw.B \
        - 2 * s ** 3 * p.y * q.y
    den = s * (x1 - x2) ** 2
    return num / den


def torsion_order(sw: ShortWeierstrass, p: Point) -> int | None:
    """Smallest n <= 12 with n*P = O, or None when P is non-torsion."""
    _require_on_curve(sw, p, "p")
    if p.is_infinity:
        return 1
    acc = p
    for n in range(1, MAX_TORSION_ORDER + 1):
        if acc.is_infinity:
            return n
        acc = add(sw, acc, p, check=False)
    return None


def is_torsion(sw: ShortWeierstrass, p: Point) -> bool:
    """True iff n*P = O for some 1 <= n <= 12 (complete for E(Q))."""
    return torsion_order(sw, p) is not None


def decompose(p: Point) -> XZDecomposition:
    """Split x = m / e^2; the denominator of x must be a perfect square."""
    if p.is_infinity:
        raise ValueError("infinity has no affine decomposition")
    den = p.x.denominator
    e = math.isqrt(den)
    if e * e != den:
        raise ValueError(f"x-denominator {den} is not a perfect square")
    return XZDecomposition(m=p.x.numerator, e=e)


def _scan_bigint(A, B, e, m_lo, m_hi):
    """Exact fallback scan for ranges outside int64 (arbitrary precision)."""
    e4 = e ** 4
    e6 = e4 * e * e
    ms, ns = [], []
    for m in range(m_lo, m_hi + 1):
        if math.gcd(m, e) != 1:
            continue
        t = m ** 3 + A * m * e4 + B * e6
        if t < 0:
            continue
        n = math.isqrt(t)
        if n * n == t:
            ms.append(m)
            ns.append(n)
    return ms, ns


def _height_cap(log_height_bound: float) -> int:
    # Integer cap H with max(|m|, e^2) <= H; the 1e-9 fuzz keeps exact
    # boundaries like log(3) from being lost to the float exp.
    if log_height_bound < 0:
        raise ValueError("height bound must be nonnegative")
    return int(math.floor(math.exp(log_height_bound) + 1e-9))


def scan_points(sw: ShortWeierstrass, log_height_bound: float,
                budget: int | None = None) -> ScanResult:
    """All affine points with log-height <= bound, optionally budget-limited.

    The budget counts candidate m-values scanned; when it runs out the result
    is flagged truncated.  Hits come out ordered by (e, m, sign of y).
    """
    cap = _height_cap(log_height_bound)
    # int64 safety for the kernels: |m^3 + A*m*e^4 + B*e^6| <= H^3*(1+|A|+|B|)
    kernel_ok = (cap + 1) ** 3 * (1 + abs(sw.A) + abs(sw.B)) < 2 ** 62
    points = []
    candidates = 0
    truncated = False
    e = 1
    while e * e <= cap:
        m_lo, m_hi = -cap, cap
        if budget is not None:
            remaining = budget - candidates
            if remaining <= 0:
                truncated = True
                break
            if m_hi - m_lo + 1 > remaining:
                m_hi = m_lo + remaining - 1
                truncated = True
        if kernel_ok:
            ms, ns = _kernels.square_points_scan(sw.A, sw.B, e, m_lo, m_hi)
            ms, ns = (int(v) for v in ms), (int(v) for v in ns)
        else:
            ms, ns = _scan_bigint(sw.A, sw.B, e, m_lo, m_hi)
        ee = e * e
        e3 = ee * e
        for m, n in zip(ms, ns):
            x = Fraction(m, ee)
            points.append(Point(x, Fraction(n, e3)))
            if n > 0:
                points.append(Point(x, Fraction(-n, e3)))
        candidates += m_hi - m_lo + 1
        if truncated:
            break
        e += 1
    return ScanResult(points=points, truncated=truncated, candidates=candidates)


def enumerate_points(sw: ShortWeierstrass, log_height_bound: float) -> list[Point]:
    """All affine points with log-height <= bound (no budget)."""
    return scan_points(sw, log_height_bound).points


def parse_point(text: str) -> Point:
    """Parse "x,y" with rational components, or "O" for infinity."""
    stripped = text.strip()
    if stripped in ("O", "o", "inf", "infinity"):
        return INFINITY
    parts = stripped.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'x,y' or 'O', got {text!r}")
    return Point(parse_rational(parts[0]), parse_rational(parts[1]))


def format_point(p: Point) -> str:
    if p.is_infinity:
        return "O"
    return f"{format_rational(p.x)},{format_rational(p.y)}"
