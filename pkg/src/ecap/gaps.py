"""Mechanical verifiers for the height-gap inequalities.

Each check takes concrete points and parameters, evaluates every
precondition (exactly, where the condition is integer or rational), computes
both sides of the inequality, and returns a Verdict with the margin.
Precondition failures are reported per condition, never thrown; genuinely
malformed parameters (out-of-range constants) are rejected with ValueError.

The inequalities are theorems for sufficiently large curve size X; verdicts
evaluate them regardless and attach an informational flag when log X is
below a configurable threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ecap.curves import ShortWeierstrass, invariants
from ecap.heights import canonical_height, cos_angle, weil_height
from ecap.points import Point, add, is_torsion, on_curve
from ecap.rationals import as_fraction

__all__ = [
    "GapParams",
    "Condition",
    "Verdict",
    "check_sum_height",
    "check_gap_small_s",
    "check_gap_large_s",
    "check_sum_height_small_x",
    "check_gap2_large_s",
    "gap_small_s_rhs",
    "gap_large_s_rhs",
    "gap2_large_s_rhs",
]

SUM_HEIGHT_RULE = "h(P+Q) <= h(P) + 2*h(Q) + 3*delta*h(s) + 2.9"
SUM_HEIGHT_SMALL_X_RULE = "h(P+Q) <= 3*h(s) + (1/2)*log(X) + 3.9"
GAP_SMALL_S_RULE = "cos(P,Q) <= sqrt(alpha)/2 + 3*delta/(2*M*gamma) + 1/M"
GAP_LARGE_S_RULE = "cos(P,Q) <= sqrt(alpha)/2 + 3*delta/(2*(1-delta) - gamma) + 1/M"
GAP2_LARGE_S_RULE = "cos(P,Q) <= (1 + 2*delta)/(2*(1-delta) - gamma) + 1/M"

DEFAULT_ASYMPTOTIC_LOG_X = 20.0
WEIL_SLACK = 1e-9


@dataclass(frozen=True)
class GapParams:
    """Fixed constants of the gap statements.

    delta: exponent capping shared factors, gcd(x_i, s) <= s^delta, in [0, 1]
    gamma: denominator-size ratio, splitting h(s) <= or > (1/gamma) log X
    height_multiple: M, the floor hhat > M log X required of both points
    ratio_cap: alpha > 1, cap on hhat(P)/hhat(Q) in both orders
    """

    delta: Fraction
    gamma: float
    height_multiple: float
    ratio_cap: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "delta", as_fraction(self.delta))
        if not 0 <= self.delta <= 1:
            raise ValueError("delta must lie in [0, 1]")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if self.height_multiple <= 0:
            raise ValueError("height multiple must be positive")
        if self.ratio_cap <= 1:
            raise ValueError("ratio cap must exceed 1")


@dataclass(frozen=True)
class Condition:
    ok: bool
    detail: str


@dataclass
class Verdict:
    """Outcome of one inequality check: preconditions, both sides, margin."""

    citation: str
    preconditions: dict[str, Condition]
    lhs: float | None
    rhs: float | None
    slack: float
    flags: list[str] = field(default_factory=list)

    @property
    def preconditions_met(self) -> bool:
        return all(c.ok for c in self.preconditions.values())

    @property
    def margin(self) -> float | None:
        if self.lhs is None or self.rhs is None:
            return None
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        m = self.margin
        return self.preconditions_met and m is not None and m >= -self.slack

    def as_json_dict(self) -> dict:
        return {
            "citation": self.citation,
            "preconditions_met": self.preconditions_met,
            "preconditions": {
                name: {"ok": c.ok, "detail": c.detail}
                for name, c in self.preconditions.items()
            },
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "slack": self.slack,
            "holds": self.holds,
            "flags": list(self.flags),
        }


def _affine_cond(sw, p, q):
    ok = (not p.is_infinity and not q.is_infinity
          and on_curve(sw, p) and on_curve(sw, q))
    return Condition(ok, "both points affine and on the curve" if ok
                     else "need two affine points on the curve")


def _scaling_conds(p, q, s, conds):
    """Record integrality of s*x(P), s*x(Q); return (x1, x2) if both hold."""
    if s < 1:
        conds["scaling_integral"] = Condition(False, f"s = {s} is not positive")
        return None
    if p.is_infinity or q.is_infinity:
        conds["scaling_integral"] = Condition(False, "points must be affine")
        return None
    sx1, sx2 = s * p.x, s * q.x
    ok = sx1.denominator == 1 and sx2.denominator == 1
    conds["scaling_integral"] = Condition(
        ok, f"s*x(P) = {sx1}, s*x(Q) = {sx2}" if ok
        else f"s = {s} does not clear both denominators")
    if not ok:
        return None
    return sx1.numerator, sx2.numerator


def _gcd_cond(label, xi, s, delta: Fraction):
    g = math.gcd(xi, s)
    # exact comparison g <= s^(p/q)  <=>  g^q <= s^p
    ok = g ** delta.denominator <= s ** delta.numerator
    return Condition(ok, f"gcd({label}, s) = {g} vs s^{delta} "
                         f"~ {s ** float(delta):.4g}")


def _size_flag(verdict, log_x, threshold):
    if log_x < threshold:
        verdict.flags.append(
            f"log X = {log_x:.4g} below asymptotic threshold {threshold:g}; "
            "the inequality is asserted only for large X")


def check_sum_height(sw: ShortWeierstrass, p: Point, q: Point, s: int, delta,
                     slack: float = WEIL_SLACK,
                     asymptotic_log_x: float = DEFAULT_ASYMPTOTIC_LOG_X) -> Verdict:
    """Weil-height growth of a sum: h(P+Q) <= h(P) + 2h(Q) + 3*delta*h(s) + 2.9.

    Preconditions: X^(1/6) <= x(P) < x(Q), both s*x integral, and shared
    factors capped by gcd(x_i, s) <= s^delta.  delta = 0 and delta = 1 give
    the unconditional-gcd and no-gcd-hypothesis specializations.
    """
    delta = as_fraction(delta)
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    inv = invariants(sw)
    conds: dict[str, Condition] = {}
    conds["points"] = _affine_cond(sw, p, q)
    affine = conds["points"].ok
    if affine:
        x_big = p.x > 0 and p.x ** 6 >= inv.x_size
        conds["x_lower"] = Condition(
            x_big, f"x(P) = {p.x} vs X^(1/6) = {inv.x_size ** (1 / 6.0):.4g}")
        conds["x_order"] = Condition(p.x < q.x, f"x(P) = {p.x}, x(Q) = {q.x}")
        xs = _scaling_conds(p, q, s, conds)
        if xs is not None:
            x1, x2 = xs
            conds["gcd_bound_p"] = _gcd_cond("x1", x1, s, delta)
            conds["gcd_bound_q"] = _gcd_cond("x2", x2, s, delta)
    lhs = rhs = None
    if affine:
        rhs = (weil_height(sw, p) + 2.0 * weil_height(sw, q)
               + 3.0 * float(delta) * math.log(s) + 2.9) if s >= 1 else None
        if p.x != q.x:
            lhs = weil_height(sw, add(sw, p, q))
    verdict = Verdict(SUM_HEIGHT_RULE, conds, lhs, rhs, slack)
    _size_flag(verdict, inv.log_x, asymptotic_log_x)
    return verdict


def check_sum_height_small_x(sw: ShortWeierstrass, p: Point, q: Point, s: int,
                             slack: float = WEIL_SLACK,
                             asymptotic_log_x: float = DEFAULT_ASYMPTOTIC_LOG_X,
                             ) -> Verdict:
    """Sum-height bound for small x: h(P+Q) <= 3h(s) + (1/2)log X + 3.9.

    Preconditions: |x(P)|, |x(Q)| <= 2*X^(1/6) with distinct x, both s*x
    integral.  No gcd hypothesis.
    """
    inv = invariants(sw)
    conds: dict[str, Condition] = {}
    conds["points"] = _affine_cond(sw, p, q)
    affine = conds["points"].ok
    if affine:
        bound_note = f"2*X^(1/6) = {2 * inv.x_size ** (1 / 6.0):.4g}"
        conds["x_small_p"] = Condition(p.x ** 6 <= 64 * inv.x_size,
                                       f"|x(P)| = {abs(p.x)} vs {bound_note}")
        conds["x_small_q"] = Condition(q.x ** 6 <= 64 * inv.x_size,
                                       f"|x(Q)| = {abs(q.x)} vs {bound_note}")
        conds["distinct_x"] = Condition(p.x != q.x,
                                        f"x(P) = {p.x}, x(Q) = {q.x}")
        _scaling_conds(p, q, s, conds)
    lhs = rhs = None
    if affine and s >= 1:
        rhs = 3.0 * math.log(s) + 0.5 * inv.log_x + 3.9
        if p.x != q.x:
            lhs = weil_height(sw, add(sw, p, q))
    verdict = Verdict(SUM_HEIGHT_SMALL_X_RULE, conds, lhs, rhs, slack)
    _size_flag(verdict, inv.log_x, asymptotic_log_x)
    return verdict


def gap_small_s_rhs(params: GapParams) -> float:
    return (math.sqrt(params.ratio_cap) / 2.0
            + 3.0 * float(params.delta) / (2.0 * params.height_multiple * params.gamma)
            + 1.0 / params.height_multiple)


def gap_large_s_rhs(params: GapParams) -> float:
    denom = 2.0 * (1.0 - float(params.delta)) - params.gamma
    if denom <= 0:
        raise ValueError("need 2*(1 - delta) - gamma > 0")
    return (math.sqrt(params.ratio_cap) / 2.0
            + 3.0 * float(params.delta) / denom
            + 1.0 / params.height_multiple)


def gap2_large_s_rhs(params: GapParams) -> float:
    denom = 2.0 * (1.0 - float(params.delta)) - params.gamma
    if denom <= 0:
        raise ValueError("need 2*(1 - delta) - gamma > 0")
    return (1.0 + 2.0 * float(params.delta)) / denom + 1.0 / params.height_multiple


def _angle_preconditions(sw, p, q, params, conds, tol, *, want_ratio):
    """Shared non-torsion / height-floor / ratio conditions; returns lhs."""
    inv = invariants(sw)
    non_torsion = not is_torsion(sw, p) and not is_torsion(sw, q)
    conds["non_torsion"] = Condition(
        non_torsion, "both points have infinite order" if non_torsion
        else "a torsion point has hhat = 0, no angle is defined")
    if not non_torsion:
        return None
    hp = canonical_height(sw, p, tol).value
    hq = canonical_height(sw, q, tol).value
    floor = params.height_multiple * inv.log_x
    conds["height_p_large"] = Condition(hp > floor,
                                        f"hhat(P) ~ {hp:.4g} vs M*logX = {floor:.4g}")
    conds["height_q_large"] = Condition(hq > floor,
                                        f"hhat(Q) ~ {hq:.4g} vs M*logX = {floor:.4g}")
    if want_ratio:
        if hp > 0 and hq > 0:
            ratio = max(hp / hq, hq / hp)
            conds["height_ratio"] = Condition(
                ratio <= params.ratio_cap,
                f"max ratio ~ {ratio:.4g} vs alpha = {params.ratio_cap:g}")
        else:
            conds["height_ratio"] = Condition(False,
                                              "nonpositive height estimate")
    if hp <= 0 or hq <= 0:
        return None
    return cos_angle(sw, p, q, tol)


def _denominator_cond(s, gamma, log_x, large: bool):
    hs = math.log(s)
    cut = log_x / gamma
    ok = hs > cut if large else hs <= cut
    side = ">" if large else "<="
    return Condition(ok, f"h(s) = {hs:.4g} {side} (1/gamma)*logX = {cut:.4g}")


def _gap_check_common(sw, p, q, s, params, conds):
    """Gcd/scaling conditions shared by all three angle checks."""
    xs = _scaling_conds(p, q, s, conds)
    if xs is not None:
        x1, x2 = xs
        conds["gcd_bound_p"] = _gcd_cond("x1", x1, s, params.delta)
        conds["gcd_bound_q"] = _gcd_cond("x2", x2, s, params.delta)


def check_gap_small_s(sw: ShortWeierstrass, p: Point, q: Point, s: int,
                      params: GapParams, tol: float = 1e-3,
                      asymptotic_log_x: float = DEFAULT_ASYMPTOTIC_LOG_X,
                      ) -> Verdict:
    """Angle bound for a small common denominator, h(s) <= (1/gamma) log X."""
    inv = invariants(sw)
    conds: dict[str, Condition] = {}
    conds["points"] = _affine_cond(sw, p, q)
    lhs = None
    if conds["points"].ok:
        x_big = p.x > 0 and p.x ** 6 >= inv.x_size
        conds["x_lower"] = Condition(
            x_big, f"x(P) = {p.x} vs X^(1/6) = {inv.x_size ** (1 / 6.0):.4g}")
        conds["x_order"] = Condition(p.x < q.x, f"x(P) = {p.x}, x(Q) = {q.x}")
        _gap_check_common(sw, p, q, s, params, conds)
        if s >= 1:
            conds["denominator_small"] = _denominator_cond(
                s, params.gamma, inv.log_x, large=False)
        lhs = _angle_preconditions(sw, p, q, params, conds, tol,
                                   want_ratio=True)
    verdict = Verdict(GAP_SMALL_S_RULE, conds, lhs, gap_small_s_rhs(params),
                      slack=3.0 * tol)
    _size_flag(verdict, inv.log_x, asymptotic_log_x)
    return verdict


def check_gap_large_s(sw: ShortWeierstrass, p: Point, q: Point, s: int,
                      params: GapParams, tol: float = 1e-3,
                      asymptotic_log_x: float = DEFAULT_ASYMPTOTIC_LOG_X,
                      ) -> Verdict:
    """Angle bound for a large common denominator, h(s) > (1/gamma) log X."""
    rhs = gap_large_s_rhs(params)  # validates 2*(1-delta) - gamma > 0
    inv = invariants(sw)
    conds: dict[str, Condition] = {}
    conds["points"] = _affine_cond(sw, p, q)
    lhs = None
    if conds["points"].ok:
        x_big = p.x > 0 and p.x ** 6 >= inv.x_size
        conds["x_lower"] = Condition(
            x_big, f"x(P) = {p.x} vs X^(1/6) = {inv.x_size ** (1 / 6.0):.4g}")
        conds["x_order"] = Condition(p.x < q.x, f"x(P) = {p.x}, x(Q) = {q.x}")
        _gap_check_common(sw, p, q, s, params, conds)
        if s >= 1:
            conds["denominator_large"] = _denominator_cond(
                s, params.gamma, inv.log_x, large=True)
        lhs = _angle_preconditions(sw, p, q, params, conds, tol,
                                   want_ratio=True)
    verdict = Verdict(GAP_LARGE_S_RULE, conds, lhs, rhs, slack=3.0 * tol)
    _size_flag(verdict, inv.log_x, asymptotic_log_x)
    return verdict


def check_gap2_large_s(sw: ShortWeierstrass, p: Point, q: Point, s: int,
                       params: GapParams, tol: float = 1e-3,
                       asymptotic_log_x: float = DEFAULT_ASYMPTOTIC_LOG_X,
                       ) -> Verdict:
    """Angle bound for small x and a large denominator (no ratio hypothesis)."""
    rhs = gap2_large_s_rhs(params)
    inv = invariants(sw)
    conds: dict[str, Condition] = {}
    conds["points"] = _affine_cond(sw, p, q)
    lhs = None
    if conds["points"].ok:
        bound_note = f"2*X^(1/6) = {2 * inv.x_size ** (1 / 6.0):.4g}"
        conds["x_small_p"] = Condition(p.x ** 6 <= 64 * inv.x_size,
                                       f"|x(P)| = {abs(p.x)} vs {bound_note}")
        conds["x_small_q"] = Condition(q.x ** 6 <= 64 * inv.x_size,
                                       f"|x(Q)| = {abs(q.x)} vs {bound_note}")
        conds["distinct_x"] = Condition(p.x != q.x,
                                        f"x(P) = {p.x}, x(Q) = {q.x}")
        _gap_check_common(sw, p, q, s, params, conds)
        if s >= 1:
            conds["denominator_large"] = _denominator_cond(
                s, params.gamma, inv.log_x, large=True)
        lhs = _angle_preconditions(sw, p, q, params, conds, tol,
                                   want_ratio=False)
    verdict = Verdict(GAP2_LARGE_S_RULE, conds, lhs, rhs, slack=3.0 * tol)
    _size_flag(verdict, inv.log_x, asymptotic_log_x)
    return verdict
