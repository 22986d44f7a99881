import math
import random

import pytest

from ecap.curves import ShortWeierstrass, invariants
from ecap.heights import (HeightBudgetError, canonical_height, cos_angle,
                          cos_angle_forms, convergence_constant,
                          height_difference_bounds, pairing, weil_height)
from ecap.points import INFINITY, Point, add, is_torsion, mul

random.seed(77)

SW = ShortWeierstrass(0, -2)
P = Point.affine(3, 5)


def non_torsion_points(corpus, limit_per_curve=4):
    out = []
    for sw, pts in corpus.items():
        found = 0
        for p in pts:
            if p.y >= 0 and not is_torsion(sw, p):
                out.append((sw, p))
                found += 1
                if found >= limit_per_curve:
                    break
    return out


def test_weil_height_examples():
    assert weil_height(SW, P) == pytest.approx(math.log(3))
    assert weil_height(SW, mul(SW, 2, P)) == pytest.approx(math.log(129))
    with pytest.raises(ValueError):
        weil_height(SW, INFINITY)


def test_doubling_height_growth_bracket(corpus):
    # h(2P) stays within 4h(P) +- curve constant, both directions
    for sw, pts in corpus.items():
        lo, hi = height_difference_bounds(invariants(sw))
        for p in pts[:6]:
            q = add(sw, p, p)
            if q.is_infinity:
                continue
            # hhat(2P) = 4 hhat(P) turns the bracket into a h(2P) vs 4h(P) bound
            assert weil_height(sw, q) <= 4 * weil_height(sw, p) + (hi - 4 * lo) + 1e-9
            assert weil_height(sw, q) >= 4 * weil_height(sw, p) + (lo - 4 * hi) - 1e-9


def test_canonical_height_of_torsion_is_zero():
    est = canonical_height(ShortWeierstrass(-1, 0), Point.affine(0, 0), 0.01)
    assert abs(est.value) <= 0.01
    assert est.value == 0.0
    assert est.error_bound <= 0.01
    est_o = canonical_height(SW, INFINITY, 0.01)
    assert est_o.value == 0.0


def test_canonical_height_error_envelope_fields():
    est = canonical_height(SW, P, 1e-3)
    c = convergence_constant(invariants(SW))
    assert est.error_bound == pytest.approx(c / 4.0 ** est.doublings)
    assert est.error_bound <= 1e-3
    assert est.value > 0


def test_canonical_height_tolerance_self_consistency():
    rough = canonical_height(SW, P, 0.1).value
    fine = canonical_height(SW, P, 0.001).value
    assert abs(rough - fine) <= 0.101


def test_canonical_height_quadraticity(corpus):
    tol = 1e-3
    checked = 0
    for sw, p in non_torsion_points(corpus, limit_per_curve=2):
        hp = canonical_height(sw, p, tol).value
        h2p = canonical_height(sw, mul(sw, 2, p), tol).value
        assert abs(h2p - 4 * hp) <= 5 * tol
        checked += 1
    assert checked >= 10


def test_canonical_height_small_multiples(corpus):
    tol = 1e-3
    pairs = non_torsion_points(corpus, limit_per_curve=1)[:4]
    for sw, p in pairs:
        hp = canonical_height(sw, p, tol).value
        for n in (3, 4, 5):
            hn = canonical_height(sw, mul(sw, n, p), tol).value
            assert abs(hn - n * n * hp) <= (n * n + 1) * tol


def test_height_difference_bracket_everywhere(corpus):
    tol = 0.01
    curves_checked = 0
    for sw, pts in corpus.items():
        lo, hi = height_difference_bounds(invariants(sw))
        for p in pts:
            diff = canonical_height(sw, p, tol).value - weil_height(sw, p)
            assert lo - tol <= diff <= hi + tol
        curves_checked += 1
    assert curves_checked >= 10


def test_height_difference_bounds_values():
    lo, hi = height_difference_bounds(invariants(ShortWeierstrass(-1, 0)))
    assert lo == pytest.approx(-5.2)
    assert hi == pytest.approx(4.65)
    lo4, hi4 = height_difference_bounds(invariants(ShortWeierstrass(0, -2)))
    assert lo4 == pytest.approx(-5.2 - 5.0 / 12.0 * math.log(4))
    assert hi4 == pytest.approx(4.65 + math.log(4) / 3.0)


def test_budget_exhaustion_reports_best():
    with pytest.raises(HeightBudgetError) as err:
        canonical_height(SW, P, 1e-9, bit_budget=2000)
    best = err.value.best
    assert best.error_bound > 1e-9
    assert best.doublings >= 1


def test_pairing_identities():
    tol = 1e-3
    hp = canonical_height(SW, P, tol).value
    assert pairing(SW, P, P, tol) == pytest.approx(2 * hp, abs=2 * tol)
    assert pairing(SW, P, -P, tol) == pytest.approx(-2 * hp, abs=2 * tol)
    # bilinearity spot check through the quadratic form
    assert pairing(SW, P, mul(SW, 2, P), tol) == pytest.approx(
        2 * pairing(SW, P, P, tol), abs=6 * tol)


def test_pairing_with_torsion_argument():
    sw = ShortWeierstrass(-1, 1)
    p = Point.affine(1, 1)
    assert not is_torsion(sw, p)
    # adding a torsion point shifts by hhat(P+T) - hhat(P) with hhat(T) = 0
    t = INFINITY
    hp = canonical_height(sw, p, 1e-3).value
    assert pairing(sw, p, t, 1e-3) == pytest.approx(0.0, abs=1e-2)
    assert hp > 0


def test_cos_angle_self_and_negative():
    tol = 1e-3
    assert cos_angle(SW, P, P, tol) == pytest.approx(1.0, abs=5e-3)
    assert cos_angle(SW, P, -P, tol) == pytest.approx(-1.0, abs=5e-3)
    assert cos_angle(SW, P, mul(SW, 2, P), tol) == pytest.approx(1.0, abs=5e-3)


def test_cos_angle_rejects_torsion():
    with pytest.raises(ValueError):
        cos_angle(ShortWeierstrass(-1, 0), Point.affine(0, 0), Point.affine(1, 0))


def test_cos_angle_forms_agree_and_cauchy_schwarz(corpus):
    tol = 1e-3
    sampled = 0
    for sw, pts in corpus.items():
        nt = [p for p in pts if p.y > 0 and not is_torsion(sw, p)]
        for i in range(len(nt)):
            for j in range(i, len(nt)):
                if sampled >= 12:
                    return
                forms = cos_angle_forms(sw, nt[i], nt[j], tol)
                c = cos_angle(sw, nt[i], nt[j], tol)
                assert abs(forms["cos_sum_form"] - forms["cos_difference_form"]) \
                    <= forms["agreement_tolerance"]
                denom = 2 * math.sqrt(forms["h_p"] * forms["h_q"])
                assert abs(c) <= 1.0 + 6 * tol / denom + 1e-9
                sampled += 1


def test_parallelogram_law(corpus):
    tol = 1e-3
    done = 0
    for sw, pts in corpus.items():
        nt = [p for p in pts if p.y > 0 and not is_torsion(sw, p)]
        for i in range(len(nt)):
            for j in range(i + 1, len(nt)):
                p, q = nt[i], nt[j]
                hsum = canonical_height(sw, add(sw, p, q), tol).value
                hdiff = canonical_height(sw, add(sw, p, -q), tol).value
                hp = canonical_height(sw, p, tol).value
                hq = canonical_height(sw, q, tol).value
                assert abs(hsum + hdiff - 2 * hp - 2 * hq) <= 6 * tol
                done += 1
                if done >= 10:
                    return
    assert done >= 5
