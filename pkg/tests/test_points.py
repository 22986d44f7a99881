import math
import random
from fractions import Fraction

import pytest

from ecap.curves import ShortWeierstrass
from ecap.points import (INFINITY, Point, add, decompose, enumerate_points,
                         format_point, is_torsion, mul, on_curve, parse_point,
                         scan_points, torsion_order, x_of_sum_formula)

random.seed(1923)


def test_on_curve_examples():
    assert on_curve(ShortWeierstrass(0, -2), Point.affine(3, 5))
    assert on_curve(ShortWeierstrass(-1, 0), Point.affine(0, 0))
    assert on_curve(ShortWeierstrass(0, 1), Point.affine(2, 3))
    assert not on_curve(ShortWeierstrass(0, 1), Point.affine(2, 4))
    assert on_curve(ShortWeierstrass(0, 1), INFINITY)


def test_doubling_example():
    sw = ShortWeierstrass(0, -2)
    p = Point.affine(3, 5)
    expected = Point(Fraction(129, 100), Fraction(-383, 1000))
    assert add(sw, p, p) == expected
    assert mul(sw, 2, p) == expected


def test_identity_and_inverse_laws():
    sw = ShortWeierstrass(0, -2)
    p = Point.affine(3, 5)
    assert add(sw, p, INFINITY) == p
    assert add(sw, INFINITY, p) == p
    assert add(sw, p, -p) == INFINITY
    assert mul(sw, 0, p) == INFINITY
    assert mul(sw, -2, p) == -mul(sw, 2, p)


def test_two_torsion_chord():
    sw = ShortWeierstrass(-1, 0)
    assert add(sw, Point.affine(-1, 0), Point.affine(0, 0)) == Point.affine(1, 0)
    # doubling a two-torsion point lands at infinity
    assert add(sw, Point.affine(0, 0), Point.affine(0, 0)) == INFINITY


def test_off_curve_rejected():
    sw = ShortWeierstrass(0, -2)
    with pytest.raises(ValueError):
        add(sw, Point.affine(3, 4), Point.affine(3, 5))


def test_group_axioms_on_enumerated_points(corpus):
    total = 0
    for sw, points in corpus.items():
        pts = points[:8] + [INFINITY]
        for p in pts:
            for q in pts:
                assert add(sw, p, q) == add(sw, q, p)
        for _ in range(12):
            p, q, r = random.sample(pts, 3)
            assert add(sw, add(sw, p, q), r) == add(sw, p, add(sw, q, r))
            total += 1
    assert total >= 100


def test_x_of_sum_formula_matches_group_law():
    sw = ShortWeierstrass(0, -2)
    p = Point.affine(3, 5)
    p2 = mul(sw, 2, p)
    assert x_of_sum_formula(sw, p, p2, 100) == add(sw, p, p2).x
    # s = 1 on integral points reduces to the classical formula
    swb = ShortWeierstrass(0, 17)
    a = Point.affine(2, 5)
    b = Point.affine(4, 9)
    assert x_of_sum_formula(swb, a, b, 1) == add(swb, a, b).x


def test_x_of_sum_formula_rejections():
    sw = ShortWeierstrass(0, -2)
    p = Point.affine(3, 5)
    with pytest.raises(ValueError):
        x_of_sum_formula(sw, p, -p, 1)  # equal x
    with pytest.raises(ValueError):
        x_of_sum_formula(sw, p, mul(sw, 2, p), 10)  # 10 * 129/100 not integral


def test_torsion_examples():
    assert is_torsion(ShortWeierstrass(-1, 0), Point.affine(0, 0))
    assert torsion_order(ShortWeierstrass(-1, 0), Point.affine(0, 0)) == 2
    assert torsion_order(ShortWeierstrass(0, 1), Point.affine(2, 3)) == 6
    assert not is_torsion(ShortWeierstrass(0, -2), Point.affine(3, 5))
    assert torsion_order(ShortWeierstrass(0, -2), INFINITY) == 1


def test_torsion_order_six_by_repeated_addition():
    sw = ShortWeierstrass(0, 1)
    p = Point.affine(2, 3)
    acc = p
    orders = []
    for n in range(2, 7):
        acc = add(sw, acc, p)
        orders.append(acc)
    assert orders[-1] == INFINITY
    assert INFINITY not in orders[:-1]


def test_decompose_roundtrip_and_powers():
    sw = ShortWeierstrass(0, -2)
    p = Point.affine(3, 5)
    d = decompose(mul(sw, 2, p))
    assert (d.m, d.e) == (129, 10)
    assert decompose(p) == type(d)(m=3, e=1)
    q = p
    for n in range(2, 9):
        q = add(sw, q, p)
        dd = decompose(q)
        assert Fraction(dd.m, dd.e ** 2) == q.x
    with pytest.raises(ValueError):
        decompose(INFINITY)


def test_decompose_rejects_non_square_denominator():
    with pytest.raises(ValueError):
        decompose(Point(Fraction(1, 2), Fraction(0)))


def test_enumeration_examples():
    pts = enumerate_points(ShortWeierstrass(-1, 0), math.log(2))
    xs = {p.x for p in pts}
    assert xs == {-1, 0, 1}
    pts2 = enumerate_points(ShortWeierstrass(0, -2), math.log(3))
    assert {(p.x, p.y) for p in pts2} == {(3, 5), (3, -5)}


def test_enumeration_postconditions(corpus):
    for sw, points in corpus.items():
        for p in points:
            assert on_curve(sw, p)
        # no duplicates and heights within the bound
        assert len(points) == len(set(points))
        for p in points:
            assert max(abs(p.x.numerator), p.x.denominator) <= 80


def test_enumeration_against_bigint_reference():
    # the exact big-int path must agree with the kernel path
    from ecap.points import _scan_bigint
    from ecap import _kernels
    for a, b in [(0, -2), (-1, 1), (1, 1), (-7, 10)]:
        for e in (1, 2, 3):
            ms, ns = _kernels.square_points_scan(a, b, e, -500, 500)
            ms2, ns2 = _scan_bigint(a, b, e, -500, 500)
            assert list(ms) == ms2
            assert list(ns) == ns2


def test_enumeration_budget_truncation():
    sw = ShortWeierstrass(-1, 0)
    full = scan_points(sw, math.log(40))
    assert not full.truncated
    part = scan_points(sw, math.log(40), budget=50)
    assert part.truncated
    assert part.candidates <= 50
    assert set(part.points) <= set(full.points)
    empty = scan_points(sw, math.log(40), budget=0)
    assert empty.truncated and empty.points == []


def test_point_text_roundtrip():
    for text in ["3,5", "129/100,-383/1000", "O"]:
        assert format_point(parse_point(text)) == text
    with pytest.raises(ValueError):
        parse_point("3")
