"""Weil height, canonical height with rigorous error control, and angles.

The canonical height used here is the doubling limit lim h(2^n P) / 4^n
(twice the half-normalized convention found elsewhere).  Because
hhat(2^n P) = 4^n hhat(P) and |hhat - h| <= C on the whole curve with
C = max((5/12) log X + 5.2, (1/3) log X + 4.65), truncating the limit at n
doublings gives an estimate within C / 4^n, which is the a-priori error
bound stored on every estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ecap.curves import CurveInvariants, ShortWeierstrass, invariants
from ecap.points import Point, add, is_torsion, on_curve
from ecap.rationals import log_height

__all__ = [
    "HeightEstimate",
    "HeightBudgetError",
    "weil_height",
    "convergence_constant",
    "height_difference_bounds",
    "canonical_height",
    "pairing",
    "cos_angle",
    "cos_angle_forms",
]

DEFAULT_TOL = 1e-3
# Admits eight quadruplings of a 16-bit coordinate (16 * 4^8 ~ 1.05M bits,
# checked before the step that would pass 4M) — the n = 8 doublings a
# pairing at tol/3 = 3.3e-4 needs on desk-scale points — while still
# stopping runaway growth well before memory pressure.
DEFAULT_BIT_BUDGET = 4_000_000


@dataclass(frozen=True)
class HeightEstimate:
    """Truncated doubling-limit value with its a-priori error envelope."""

    value: float
    error_bound: float
    doublings: int


class HeightBudgetError(RuntimeError):
    """Raised when the doubling coordinates outgrow the bit budget.

    Carries the best estimate achieved so far in .best.
    """

    def __init__(self, best: HeightEstimate):
        super().__init__(
            f"coordinate budget exhausted after {best.doublings} doublings; "
            f"best error bound {best.error_bound:.3g}"
        )
        self.best = best


def weil_height(sw: ShortWeierstrass, p: Point) -> float:
    """h(P) = log-height of x(P); rejects the point at infinity."""
    if p.is_infinity:
        raise ValueError("the Weil height of the point at infinity is undefined here")
    if not on_curve(sw, p):
        raise ValueError("point is not on the curve")
    return log_height(p.x)


def convergence_constant(inv: CurveInvariants) -> float:
    """Uniform bound C on |hhat - h| over the curve, from the log X bracket."""
    return max(5.0 / 12.0 * inv.log_x + 5.2, inv.log_x / 3.0 + 4.65)


def height_difference_bounds(inv: CurveInvariants) -> tuple[float, float]:
    """(lo, hi) with lo <= hhat(P) - h(P) <= hi for every P on the curve."""
    return (-5.0 / 12.0 * inv.log_x - 5.2, inv.log_x / 3.0 + 4.65)


def canonical_height(sw: ShortWeierstrass, p: Point, tol: float = DEFAULT_TOL,
                     bit_budget: int = DEFAULT_BIT_BUDGET) -> HeightEstimate:
    """hhat(P) to within tol, by doubling until C / 4^n <= tol.

    Torsion points (including O) short-circuit to the exact value 0.  The
    x-coordinate roughly quadruples in bit size per doubling; when the next
    doubling would exceed bit_budget a HeightBudgetError carrying the best
    achieved estimate is raised.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if not on_curve(sw, p):
        raise ValueError("point is not on the curve")
    c = convergence_constant(invariants(sw))
    doublings = 0
    err = c
    while err > tol:
        doublings += 1
        err /= 4.0
    if is_torsion(sw, p):
        return HeightEstimate(value=0.0, error_bound=err, doublings=doublings)
    q = p
    for k in range(1, doublings + 1):
        bits = max(q.x.numerator.bit_length(), q.x.denominator.bit_length())
        if 4 * bits > bit_budget:
            best = HeightEstimate(value=log_height(q.x) / 4.0 ** (k - 1),
                                  error_bound=c / 4.0 ** (k - 1),
                                  doublings=k - 1)
            raise HeightBudgetError(best)
        q = add(sw, q, q, check=False)
    return HeightEstimate(value=log_height(q.x) / 4.0 ** doublings,
                          error_bound=err, doublings=doublings)


def pairing(sw: ShortWeierstrass, p: Point, q: Point,
            tol: float = DEFAULT_TOL) -> float:
    """Height pairing hhat(P+Q) - hhat(P) - hhat(Q), each term at tol/3."""
    t = tol / 3.0
    hp = canonical_height(sw, p, t).value
    hq = canonical_height(sw, q, t).value
    hpq = canonical_height(sw, add(sw, p, q), t).value
    return hpq - hp - hq


def cos_angle_forms(sw: ShortWeierstrass, p: Point, q: Point,
                    tol: float = DEFAULT_TOL) -> dict:
    """Both equivalent cosine quotients and the heights they came from.

    Form 1 is (hhat(P+Q) - hhat(P) - hhat(Q)) / (2 sqrt(hhat(P) hhat(Q))),
    form 2 replaces the numerator by hhat(P) + hhat(Q) - hhat(P-Q).  Each
    height is estimated at tol, so either numerator is within 3*tol; that is
    the error convention the inequality checkers assume when they take
    3*tol of numerical slack.
    """
    if is_torsion(sw, p) or is_torsion(sw, q):
        raise ValueError("cos angle requires non-torsion points (hhat > 0)")
    hp = canonical_height(sw, p, tol).value
    hq = canonical_height(sw, q, tol).value
    hpq = canonical_height(sw, add(sw, p, q), tol).value
    hpm = canonical_height(sw, add(sw, p, -q), tol).value
    if hp <= 0 or hq <= 0:
        raise ValueError(
            "height estimate is not positive at this tolerance; decrease tol"
        )
    denom = 2.0 * math.sqrt(hp * hq)
    return {
        "cos_sum_form": (hpq - hp - hq) / denom,
        "cos_difference_form": (hp + hq - hpm) / denom,
        "h_p": hp,
        "h_q": hq,
        "h_sum": hpq,
        "h_difference": hpm,
        "agreement_tolerance": 6.0 * tol / denom + 1e-12,
    }


def cos_angle(sw: ShortWeierstrass, p: Point, q: Point,
              tol: float = DEFAULT_TOL) -> float:
    """Cosine of the lattice angle between non-torsion P and Q.

    Evaluates both equivalent quotients and insists they agree within the
    propagated tolerance (they are equal by the parallelogram law, so a
    disagreement means a broken height computation).
    """
    forms = cos_angle_forms(sw, p, q, tol)
    c1 = forms["cos_sum_form"]
    c2 = forms["cos_difference_form"]
    if abs(c1 - c2) > forms["agreement_tolerance"]:
        raise ArithmeticError(
            f"cosine forms disagree: {c1} vs {c2} beyond "
            f"{forms['agreement_tolerance']:.3g}"
        )
    return c1
