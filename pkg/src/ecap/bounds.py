"""Spherical-code rates, the small-point counting constant, and the
end-to-end conditional bounds with a replayable constants ledger.

The exponential-rate bound for codes of minimal angle theta < pi/2 is

    rate(theta) = t*log t - u*log u,  t = (1+sin)/( 2 sin),  u = (1-sin)/(2 sin)

so code size is at most C * exp(rate + slack)^r with an unspecified absolute
prefactor C; prefactors are surfaced as named overrides defaulting to 1.
For pairwise inner products <= -1/2 the sharp absolute bound is 3 vectors
(sum-of-vectors norm argument), which covers every use in the assembly.

Every assembled bound carries a BoundLedger recording each intermediate
constant; replay_bound() recomputes the bound from the ledger alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ecap.rationals import as_fraction

__all__ = [
    "LangConfig",
    "LedgerEntry",
    "BoundLedger",
    "kl_rate",
    "kl_base",
    "obtuse_code_bound",
    "obtuse_certificate",
    "counting_constant",
    "small_points_bound",
    "integral_ap_bound",
    "rational_ap_bound",
    "replay_bound",
    "BOUNDED_DENOMINATOR_S_THRESHOLD",
]

TORSION_BOUND = 16
OBTUSE_BOUND = 3
DEFAULT_KL_SLACK = 0.001

# Largest common denominator handled by the integral-case rescaling route;
# above it the good-term census takes over.  prod_{j=1}^{19} j!.
BOUNDED_DENOMINATOR_S_THRESHOLD = math.prod(
    math.factorial(j) for j in range(1, 20))

# cosine thresholds of the four assembled branches
COS_INTEGRAL = 0.68
COS_RATIONAL_SMALL_S = 0.86
COS_RATIONAL_LARGE_S_SMALL_X = 0.84
COS_RATIONAL_LARGE_S = 0.92


@dataclass(frozen=True)
class LangConfig:
    """Configuration of the conjectural inputs.

    c_lang is the universal lower-bound constant hhat(P) >= c_lang * M for
    non-torsion P; it has no default anywhere and must be supplied.
    overrides multiply the unspecified absolute prefactors (default 1.0).
    """

    c_lang: float
    kl_slack: float = DEFAULT_KL_SLACK
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.c_lang <= 0:
            raise ValueError("c_L must be positive")
        if self.kl_slack < 0:
            raise ValueError("kl_slack must be nonnegative")
        for key, val in self.overrides.items():
            if val <= 0:
                raise ValueError(f"override {key!r} must be positive")

    def override(self, key: str) -> float:
        return float(self.overrides.get(key, 1.0))

    @classmethod
    def from_json_dict(cls, data: dict) -> "LangConfig":
        if "c_L" not in data:
            raise ValueError("config must provide c_L (it has no default)")
        return cls(c_lang=float(data["c_L"]),
                   kl_slack=float(data.get("kl_slack", DEFAULT_KL_SLACK)),
                   overrides=dict(data.get("overrides", {})))


@dataclass(frozen=True)
class LedgerEntry:
    value: object  # float | int | str
    note: str


@dataclass
class BoundLedger:
    """Ordered record of every constant entering an assembled bound."""

    recipe: str
    entries: dict = field(default_factory=dict)

    def add(self, name: str, value, note: str) -> None:
        self.entries[name] = LedgerEntry(value=value, note=note)

    def value(self, name: str):
        return self.entries[name].value

    def as_json_dict(self) -> dict:
        return {
            "recipe": self.recipe,
            "entries": {
                name: {"value": e.value, "note": e.note}
                for name, e in self.entries.items()
            },
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BoundLedger":
        ledger = cls(recipe=data["recipe"])
        for name, e in data["entries"].items():
            ledger.add(name, e["value"], e.get("note", ""))
        return ledger


def kl_rate(theta: float) -> float:
    """Exponential rate of the code bound at minimal angle theta in (0, pi/2)."""
    if not 0 < theta < math.pi / 2:
        raise ValueError("theta must lie strictly between 0 and pi/2")
    s = math.sin(theta)
    t = (1 + s) / (2 * s)
    u = (1 - s) / (2 * s)
    out = t * math.log(t)
    if u > 0:
        out -= u * math.log(u)
    return out


def kl_base(theta: float, slack: float = DEFAULT_KL_SLACK) -> float:
    """exp(rate + slack): code size is at most C * base^r for some absolute C."""
    if slack < 0:
        raise ValueError("slack must be nonnegative")
    return math.exp(kl_rate(theta) + slack)


def obtuse_code_bound() -> int:
    """Maximum number of unit vectors with pairwise inner product <= -1/2.

    Sharp absolute constant: 0 <= |v1 + ... + vk|^2 <= k - k(k-1)/2 forces
    k <= 3, and three vectors at mutual angle 2*pi/3 achieve it.
    """
    return OBTUSE_BOUND


def obtuse_certificate(k: int, cos_cap: Fraction = Fraction(-1, 2)) -> dict:
    """Sum-of-vectors feasibility certificate for k unit vectors.

    Returns the exact lower bound k + k*(k-1)*cos_cap that |sum v_i|^2 must
    respect; a negative value certifies infeasibility.
    """
    if k < 1:
        raise ValueError("k must be positive")
    cos_cap = as_fraction(cos_cap)
    bound = k + k * (k - 1) * cos_cap
    return {"k": k, "sum_norm_lower_bound": bound, "feasible": bound >= 0}


def counting_constant(height_multiple: float, cfg: LangConfig) -> int:
    """floor(sqrt(9 * M / c_L)) + 1, decided exactly in integers."""
    if height_multiple <= 0:
        raise ValueError("the height multiple must be positive")
    ratio = 9 * as_fraction(height_multiple) / as_fraction(cfg.c_lang)
    p, q = ratio.numerator, ratio.denominator
    return math.isqrt(p * q) // q + 1


def small_points_bound(r: int, height_multiple: float,
                       cfg: LangConfig) -> tuple[float, BoundLedger]:
    """Count bound 16 * 3 * A^r for points with hhat <= M log X."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    a = counting_constant(height_multiple, cfg)
    prefactor = cfg.override("small_points")
    ledger = BoundLedger(recipe="small_points")
    ledger.add("rank", r, "Mordell-Weil rank")
    ledger.add("c_L", cfg.c_lang, "conjectural height lower-bound constant")
    ledger.add("height_multiple", height_multiple,
               "small means hhat <= height_multiple * log X")
    ledger.add("torsion", TORSION_BOUND, "rational torsion subgroup size cap")
    ledger.add("obtuse", OBTUSE_BOUND, "vectors with pairwise cos <= -1/2")
    ledger.add("prefactor", prefactor, "override 'small_points' (default 1)")
    ledger.add("A", a, "floor(sqrt(9*height_multiple/c_L)) + 1")
    bound = TORSION_BOUND * OBTUSE_BOUND * prefactor * float(a) ** r
    ledger.add("bound", bound, "torsion * obtuse * prefactor * A^rank")
    return bound, ledger


def _branch(cfg: LangConfig, ledger: BoundLedger, label: str,
            height_multiple: float | None,
            codes: list[tuple[str, float]]) -> tuple[float, float]:
    """One assembly branch: counting constant and/or code bases, both maxed.

    Returns (c, A) with c = max(1, prefactors...) and A = max(bases...),
    recorded as entries c_<label> and A_<label>.
    """
    cs = []
    bases = []
    if height_multiple is not None:
        key = f"{label}_count"
        a_count = counting_constant(height_multiple, cfg)
        c_count = TORSION_BOUND * OBTUSE_BOUND * cfg.override(key)
        ledger.add(f"c_{key}", c_count, f"16 * 3 * override '{key}'")
        ledger.add(f"A_{key}", a_count,
                   f"floor(sqrt(9*{height_multiple:g}/c_L)) + 1")
        cs.append(c_count)
        bases.append(float(a_count))
    for key, cos_value in codes:
        base = kl_base(math.acos(cos_value), cfg.kl_slack)
        c_code = cfg.override(key)
        ledger.add(f"c_{key}", c_code, f"override '{key}' (code prefactor)")
        ledger.add(f"A_{key}", base,
                   f"exp(rate + slack) at cos(theta) = {cos_value:g}")
        cs.append(c_code)
        bases.append(base)
    c = max(1.0, *cs)
    a = max(bases)
    ledger.add(f"c_{label}", c, "max(1, branch prefactors)")
    ledger.add(f"A_{label}", a, "max(branch bases)")
    return c, a


def integral_ap_bound(r: int, cfg: LangConfig) -> tuple[float, BoundLedger]:
    """Length bound 8 * c * A^r for progressions of integral points."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    ledger = BoundLedger(recipe="integral_ap")
    ledger.add("rank", r, "Mordell-Weil rank")
    ledger.add("c_L", cfg.c_lang, "conjectural height lower-bound constant")
    ledger.add("kl_slack", cfg.kl_slack, "slack inside the code-rate exponential")
    c3, a3 = _branch(cfg, ledger, "final", height_multiple=12.0,
                     codes=[("integral_code", COS_INTEGRAL)])
    if math.isfinite(c3 * a3 ** r):
        m = int(math.floor(c3 * a3 ** r)) + 1
        ledger.add("m", m, "smallest integer in (c*A^r, 2*c*A^r]")
    bound = 8.0 * c3 * a3 ** r
    ledger.add("bound", bound, "8 * c_final * A_final^rank")
    return bound, ledger


def rational_ap_bound(r: int, cfg: LangConfig) -> tuple[float, BoundLedger]:
    """Length bound for progressions of rational points, all branches.

    Reports max(320 * c * A^r over the small-denominator branch,
    240 * c * A^r over the large-denominator branch); the regime
    s < prod_{j=1}^{19} j! is covered by rescaling to the integral case with
    an existence-only constant, surfaced as the flagged override
    'bounded_denominator'.
    """
    if r < 0:
        raise ValueError("rank must be nonnegative")
    ledger = BoundLedger(recipe="rational_ap")
    ledger.add("rank", r, "Mordell-Weil rank")
    ledger.add("c_L", cfg.c_lang, "conjectural height lower-bound constant")
    ledger.add("kl_slack", cfg.kl_slack, "slack inside the code-rate exponential")
    c6, a6 = _branch(cfg, ledger, "small_s", height_multiple=22.0,
                     codes=[("small_s_code", COS_RATIONAL_SMALL_S)])
    small_branch = 320.0 * c6 * a6 ** r
    ledger.add("bound_small_s", small_branch, "320 * c_small_s * A_small_s^rank")
    c9, a9 = _branch(cfg, ledger, "large_s", height_multiple=None,
                     codes=[
                         ("large_s_small_x_code", COS_RATIONAL_LARGE_S_SMALL_X),
                         ("large_s_code", COS_RATIONAL_LARGE_S),
                     ])
    large_branch = 240.0 * c9 * a9 ** r
    ledger.add("bound_large_s", large_branch, "240 * c_large_s * A_large_s^rank")
    ledger.add("s_threshold", str(BOUNDED_DENOMINATOR_S_THRESHOLD),
               "denominators below this go through integral rescaling")
    ledger.add("bounded_denominator_constant",
               cfg.override("bounded_denominator"),
               "existence-only prefactor for s below s_threshold; "
               "configuration, not derivation")
    bound = max(small_branch, large_branch)
    ledger.add("bound", bound, "max(bound_small_s, bound_large_s)")
    return bound, ledger


def replay_bound(ledger) -> float:
    """Recompute a bound from its ledger entries alone (exact float replay)."""
    if isinstance(ledger, dict):
        ledger = BoundLedger.from_json_dict(ledger)
    r = ledger.value("rank")
    if ledger.recipe == "small_points":
        return (ledger.value("torsion") * ledger.value("obtuse")
                * ledger.value("prefactor") * float(ledger.value("A")) ** r)
    if ledger.recipe == "integral_ap":
        return 8.0 * ledger.value("c_final") * ledger.value("A_final") ** r
    if ledger.recipe == "rational_ap":
        small = 320.0 * ledger.value("c_small_s") * ledger.value("A_small_s") ** r
        large = 240.0 * ledger.value("c_large_s") * ledger.value("A_large_s") ** r
        return max(small, large)
    raise ValueError(f"unknown ledger recipe {ledger.recipe!r}")
