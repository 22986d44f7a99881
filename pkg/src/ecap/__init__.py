"""Exact arithmetic for elliptic curves over Q.

The package computes, in exact rational arithmetic wherever the mathematics
is exact: Weierstrass models and their size invariants, the group law on
E(Q), Weil and canonical heights with rigorous error control, mechanical
verdicts for a family of height-gap inequalities, arithmetic progressions of
rational x-coordinates (including an exhaustive divisibility sweep), and
spherical-code counting bounds assembled into conditional estimates of the
form N <= C * A^rank.

Floating point appears only where a real number is genuinely the answer
(logarithmic heights, cosines, bound values); every integer and rational is
exact and every inequality with integer content is decided in integers.
"""

from ecap.rationals import gcd, lcm, log_height, parse_rational, format_rational
from ecap.curves import (
    GeneralWeierstrass,
    ShortWeierstrass,
    CurveInvariants,
    to_short_form,
    invariants,
    rescale,
    x_prime_bound,
)
from ecap.points import (
    Point,
    on_curve,
    add,
    mul,
    x_of_sum_formula,
    is_torsion,
    decompose,
    enumerate_points,
)
from ecap.heights import (
    HeightEstimate,
    weil_height,
    canonical_height,
    height_difference_bounds,
    pairing,
    cos_angle,
)
from ecap.gaps import (
    GapParams,
    Verdict,
    check_sum_height,
    check_gap_small_s,
    check_gap_large_s,
    check_sum_height_small_x,
    check_gap2_large_s,
)
from ecap.progressions import (
    APSequence,
    LemmaReport,
    from_terms,
    good_terms,
    main_lemma_report,
    window_divisibility_check,
    verify_ap_on_curve,
    longest_x_ap,
    nx_lower_bound,
    sweep_main_lemma,
)
from ecap.bounds import (
    LangConfig,
    kl_rate,
    kl_base,
    obtuse_code_bound,
    counting_constant,
    small_points_bound,
    integral_ap_bound,
    rational_ap_bound,
)

__version__ = "0.1.0"
