"""Arithmetic progressions of rationals and their divisibility structure.

A progression r_i = b/a + (i-1) v/u (normalized so gcd(a,b) = gcd(u,v) = 1,
a, u >= 1, v != 0) is stored over the common denominator s = lcm(a, u) as
integer numerators x_i = s * r_i.  A term is "good" for an exponent delta
when gcd(x_i, s) <= s^delta; the main combinatorial fact checked here is
that once s >= prod_{j=1}^{2m-1} j! (m = ceil(1/delta)), at least floor(N/2m)
of N consecutive terms are good, driven by the pair law
gcd(g_i, g_j) | (j - i) for the term gcds g_i = gcd(x_i, s).

The exhaustive sweep over small (a, u, b, v) grids runs on the compiled
kernels; everything visible here is exact integer arithmetic.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ecap import _kernels
from ecap.curves import ShortWeierstrass
from ecap.points import Point, ScanResult, scan_points
from ecap.rationals import as_fraction, format_rational, parse_rational

__all__ = [
    "APSequence",
    "LemmaReport",
    "APLift",
    "NxProbe",
    "SweepResult",
    "from_terms",
    "from_params",
    "good_terms",
    "main_lemma_report",
    "window_divisibility_check",
    "verify_ap_on_curve",
    "longest_x_ap",
    "nx_lower_bound",
    "sweep_main_lemma",
    "format_ap",
    "parse_ap",
]

# The sweep decides gcd(x, s) <= s^(p/q) through a precomputed integer
# threshold table; q is capped to keep table construction cheap.
SWEEP_DELTA_DENOMINATOR_CAP = 64

DEFAULT_SWEEP_DELTAS = (Fraction(7, 20), Fraction(1, 2), Fraction(3, 5),
                        Fraction(3, 4))


@dataclass(frozen=True)
class APSequence:
    """Progression b/a + (i-1)*v/u over the common denominator s = lcm(a, u)."""

    a: int
    b: int
    u: int
    v: int
    length: int
    s: int
    xs: tuple[int, ...]

    @property
    def first(self) -> Fraction:
        return Fraction(self.b, self.a)

    @property
    def difference(self) -> Fraction:
        return Fraction(self.v, self.u)

    def terms(self) -> list[Fraction]:
        return [Fraction(x, self.s) for x in self.xs]

    def as_json_dict(self) -> dict:
        return {
            "start": format_rational(self.first),
            "diff": format_rational(self.difference),
            "len": self.length,
            "s": str(self.s),
            "numerators": [str(x) for x in self.xs],
        }


def from_params(start, diff, length: int) -> APSequence:
    """Build the normalized progression from its first term and difference."""
    start = as_fraction(start)
    diff = as_fraction(diff)
    if length < 1:
        raise ValueError("length must be at least 1")
    if diff == 0:
        raise ValueError("difference must be nonzero")
    a, b = start.denominator, start.numerator
    u, v = diff.denominator, diff.numerator
    s = math.lcm(a, u)
    xs = []
    r = start
    for _ in range(length):
        x = s * r
        xs.append(x.numerator)  # exact: a | s and u | s
        r += diff
    return APSequence(a=a, b=b, u=u, v=v, length=length, s=s, xs=tuple(xs))


def from_terms(terms) -> APSequence:
    """Validate a list of rationals as a progression and normalize it."""
    terms = [as_fraction(t) for t in terms]
    if len(terms) < 2:
        raise ValueError("need at least two terms to define a progression")
    diff = terms[1] - terms[0]
    if diff == 0:
        raise ValueError("difference must be nonzero")
    for i in range(2, len(terms)):
        if terms[i] - terms[i - 1] != diff:
            raise ValueError(f"not an arithmetic progression at index {i + 1}")
    return from_params(terms[0], diff, len(terms))


def _is_good(g: int, s: int, delta: Fraction) -> bool:
    return g ** delta.denominator <= s ** delta.numerator


def _check_delta(delta) -> Fraction:
    delta = as_fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie strictly between 0 and 1")
    return delta


def good_terms(ap: APSequence, delta) -> list[int]:
    """1-based indices i with gcd(x_i, s) <= s^delta, decided in integers."""
    delta = _check_delta(delta)
    return [i + 1 for i, x in enumerate(ap.xs)
            if _is_good(math.gcd(x, ap.s), ap.s, delta)]


@dataclass(frozen=True)
class LemmaReport:
    """Good-term census of one progression at one exponent delta."""

    delta: Fraction
    m: int
    threshold: int
    s_meets_threshold: bool
    good_count: int
    floor_bound: int
    good_indices: tuple[int, ...]

    def as_json_dict(self) -> dict:
        return {
            "delta": format_rational(self.delta),
            "m": self.m,
            "threshold": str(self.threshold),
            "s_meets_threshold": self.s_meets_threshold,
            "good_count": self.good_count,
            "floor_bound": self.floor_bound,
            "good_indices": list(self.good_indices),
        }


def _factorial_product(count: int) -> int:
    """prod_{j=1}^{count} j!"""
    out = 1
    f = 1
    for j in range(1, count + 1):
        f *= j
        out *= f
    return out


def main_lemma_report(ap: APSequence, delta) -> LemmaReport:
    """Census report: when s >= prod j! the good count covers floor(N/2m)."""
    delta = _check_delta(delta)
    m = -(-delta.denominator // delta.numerator)  # ceil(1/delta)
    threshold = _factorial_product(2 * m - 1)
    good = good_terms(ap, delta)
    return LemmaReport(
        delta=delta,
        m=m,
        threshold=threshold,
        s_meets_threshold=ap.s >= threshold,
        good_count=len(good),
        floor_bound=ap.length // (2 * m),
        good_indices=tuple(good),
    )


def window_divisibility_check(ap: APSequence, delta) -> bool:
    """Divisibility structure of the term gcds over every 2m-window.

    For g_i = gcd(x_i, s) this verifies, in every window of 2m consecutive
    terms (or the whole progression when it is shorter), both
    gcd(g_i, g_j) | (j - i) for all i < j and the prefix bound
    g_1*...*g_j | (1! * 2! * ... * (j-1)!) * lcm(g_1, ..., g_j).
    """
    delta = _check_delta(delta)
    m = -(-delta.denominator // delta.numerator)
    w = 2 * m
    gs = [math.gcd(x, ap.s) for x in ap.xs]
    n = ap.length
    starts = range(n - w + 1) if n >= w else range(1)
    for k in starts:
        win = gs[k:k + w]
        for i in range(len(win)):
            for j in range(i + 1, len(win)):
                if (j - i) % math.gcd(win[i], win[j]) != 0:
                    return False
        prod = win[0]
        lc = win[0]
        fact_acc = 1
        fact_j = 1
        for j in range(2, len(win) + 1):
            g = win[j - 1]
            prod *= g
            lc = lc // math.gcd(lc, g) * g
            fact_j *= j - 1
            fact_acc *= fact_j
            if (fact_acc * lc) % prod != 0:
                return False
    return True


@dataclass(frozen=True)
class APLift:
    """Result of lifting a progression to the curve: points or first failure."""

    points: list | None
    failed_index: int | None

    @property
    def ok(self) -> bool:
        return self.failed_index is None


def verify_ap_on_curve(sw: ShortWeierstrass, ap: APSequence) -> APLift:
    """Lift each term r to (r, y) with y >= 0, or report the first failure."""
    points = []
    for i, r in enumerate(ap.terms(), start=1):
        t = r ** 3 + sw.A * r + sw.B
        if t < 0:
            return APLift(points=None, failed_index=i)
        num, den = t.numerator, t.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            return APLift(points=None, failed_index=i)
        points.append(Point(r, Fraction(rn, rd)))
    return APLift(points=points, failed_index=None)


def longest_x_ap(points) -> APSequence:
    """A maximum-length progression inside the x-multiset of the points.

    O(n^2) dynamic program over sorted distinct x-values; ties break toward
    the smallest difference, then the smallest first term.
    """
    xs = sorted({p.x for p in points if not p.is_infinity})
    if len(xs) < 2:
        raise ValueError("need at least two distinct x-values")
    index = {x: i for i, x in enumerate(xs)}
    n = len(xs)
    lengths: dict[tuple[int, int], int] = {}
    best = None  # (-length, diff, first)
    for j in range(1, n):
        for i in range(j):
            d = xs[j] - xs[i]
            k = index.get(xs[i] - d)
            run = lengths[(k, i)] + 1 if k is not None else 2
            lengths[(i, j)] = run
            key = (-run, d, xs[j] - (run - 1) * d)
            if best is None or key < best:
                best = key
    neg_len, diff, first = best
    return from_params(first, diff, -neg_len)


@dataclass(frozen=True)
class NxProbe:
    """Certified lower bound for the longest x-progression on a curve."""

    length: int
    ap: APSequence | None
    points_found: int
    truncated: bool


def nx_lower_bound(sw: ShortWeierstrass, log_height_bound: float,
                   budget: int | None = None) -> NxProbe:
    """Longest x-progression among all points of height <= the bound."""
    scan: ScanResult = scan_points(sw, log_height_bound, budget=budget)
    distinct = {p.x for p in scan.points}
    if len(distinct) < 2:
        return NxProbe(length=len(distinct), ap=None,
                       points_found=len(scan.points), truncated=scan.truncated)
    ap = longest_x_ap(scan.points)
    return NxProbe(length=ap.length, ap=ap,
                   points_found=len(scan.points), truncated=scan.truncated)


def format_ap(ap: APSequence) -> str:
    return (f"start={format_rational(ap.first)} "
            f"diff={format_rational(ap.difference)} len={ap.length}")


def parse_ap(text: str) -> APSequence:
    """Parse "start=<p/q> diff=<p/q> len=<N>"."""
    fields = {}
    for chunk in text.split():
        if "=" not in chunk:
            raise ValueError(f"bad progression text: {text!r}")
        key, val = chunk.split("=", 1)
        fields[key] = val
    try:
        return from_params(parse_rational(fields["start"]),
                           parse_rational(fields["diff"]),
                           int(fields["len"]))
    except KeyError as missing:
        raise ValueError(f"missing field {missing} in {text!r}") from None


# ---------------------------------------------------------------------------
# Exhaustive sweep


@dataclass(frozen=True)
class SweepResult:
    backend: str
    tuples_checked: int
    lemma_violations: int
    chain_violations: int
    factorial_violations: int
    good_checksum: int
    elapsed_seconds: float
    violating_a: tuple[int, ...]

    @property
    def clean(self) -> bool:
        return (self.lemma_violations == 0 and self.chain_violations == 0
                and self.factorial_violations == 0)

    def as_json_dict(self) -> dict:
        return {
            "backend": self.backend,
            "tuples_checked": self.tuples_checked,
            "lemma_violations": self.lemma_violations,
            "chain_violations": self.chain_violations,
            "factorial_violations": self.factorial_violations,
            "good_checksum": self.good_checksum,
            "clean": self.clean,
            "elapsed_seconds": self.elapsed_seconds,
        }


def _good_threshold(s: int, delta: Fraction) -> int:
    """Largest integer g with g^q <= s^p, so "good" becomes g <= threshold."""
    p, q = delta.numerator, delta.denominator
    target = s ** p
    lo, hi = 1, s
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** q <= target:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _sweep_tables(deltas, s_max, n_max):
    """Threshold table plus clamped per-delta and per-window constants."""
    ms = [-(-d.denominator // d.numerator) for d in deltas]
    thr = np.zeros((len(deltas), s_max + 1), dtype=np.int64)
    for di, d in enumerate(deltas):
        for s in range(1, s_max + 1):
            thr[di, s] = _good_threshold(s, d)
    clamp = 2 ** 62
    fact_thr = np.array([min(_factorial_product(2 * m - 1), clamp) for m in ms],
                        dtype=np.int64)
    win_sizes = sorted({2 * m for m in ms})
    win_fprods = [_factorial_product(w - 1) for w in win_sizes]
    return (np.array(ms, dtype=np.int64), thr, fact_thr,
            np.array(win_sizes, dtype=np.int64), win_fprods)


def _sweep_python(a_max, u_max, b_max, v_max, n_max, thr, fact_thr, ms,
                  win_sizes, win_fprods):
    """Exact mirror of the kernel semantics in plain Python (reference)."""
    tuples = lemma_bad = chain_bad = fact_bad = good_sum = 0
    bad_a = set()
    max_win = max((int(w) for w in win_sizes), default=0)
    for a in range(1, a_max + 1):
        for u in range(1, u_max + 1):
            g0 = math.gcd(a, u)
            ap_, up = a // g0, u // g0
            s = g0 * ap_ * up
            for b in range(-b_max, b_max + 1):
                if math.gcd(a, b) != 1:
                    continue
                for v in range(-v_max, v_max + 1):
                    if v == 0 or math.gcd(u, v) != 1:
                        continue
                    tuples += 1
                    gs = [math.gcd(b * up + i * v * ap_, s)
                          for i in range(n_max)]
                    for di in range(len(ms)):
                        t = int(thr[di, s])
                        good = 0
                        if s >= int(fact_thr[di]):
                            m2 = 2 * int(ms[di])
                            for n in range(1, n_max + 1):
                                if gs[n - 1] <= t:
                                    good += 1
                                if good < n // m2:
                                    lemma_bad += 1
                                    bad_a.add(a)
                        else:
                            good = sum(1 for g in gs if g <= t)
                        good_sum += good
                    dmax = min(max_win - 1, n_max - 1)
                    for d in range(1, dmax + 1):
                        for i in range(n_max - d):
                            if d % math.gcd(gs[i], gs[i + d]) != 0:
                                chain_bad += 1
                                bad_a.add(a)
                    for w in (int(w) for w in win_sizes):
                        if w > n_max:
                            continue
                        stop = False
                        for k in range(n_max - w + 1):
                            prod = gs[k]
                            lc = gs[k]
                            fact_acc = 1
                            fact_j = 1
                            for j in range(2, w + 1):
                                g = gs[k + j - 1]
                                prod *= g
                                lc = lc // math.gcd(lc, g) * g
                                fact_j *= j - 1
                                fact_acc *= fact_j
                                if (fact_acc * lc) % prod != 0:
                                    fact_bad += 1
                                    bad_a.add(a)
                                    stop = True
                                    break
                            if stop:
                                break
    return tuples, lemma_bad, chain_bad, fact_bad, good_sum, bad_a


def sweep_main_lemma(a_max: int = 60, u_max: int = 60, b_max: int = 30,
                     v_max: int = 30, n_max: int = 40,
                     deltas=DEFAULT_SWEEP_DELTAS, *,
                     force_python: bool = False) -> SweepResult:
    """Exhaustively check the good-count bound and the divisibility laws.

    Scans every normalized (a, u, b, v) in the box with progressions of all
    prefix lengths up to n_max and every delta given.  Expected outcome is
    zero violations of any of the three checked properties; nonzero counts
    point at an implementation bug and the offending leading parameters are
    reported in violating_a.
    """
    deltas = tuple(_check_delta(d) for d in deltas)
    for d in deltas:
        if d.denominator > SWEEP_DELTA_DENOMINATOR_CAP:
            raise ValueError(
                f"sweep deltas need denominator <= {SWEEP_DELTA_DENOMINATOR_CAP}")
    if min(a_max, u_max, b_max, v_max, n_max) < 1:
        raise ValueError("all sweep box sides must be positive")
    s_max = a_max * u_max
    ms, thr, fact_thr, win_sizes, win_fprods = _sweep_tables(deltas, s_max, n_max)

    # int64 safety: term numerators, then the clamped window products
    x_bound = b_max * u_max + n_max * v_max * a_max
    products_safe = all(f * s_max * s_max < 2 ** 62 for f in win_fprods)
    int64_ok = x_bound < 2 ** 62 and products_safe

    start = time.perf_counter()
    if force_python or not int64_ok:
        tuples, lemma_bad, chain_bad, fact_bad, good_sum, bad_a = _sweep_python(
            a_max, u_max, b_max, v_max, n_max, thr, fact_thr, ms,
            win_sizes, np.array(win_fprods, dtype=object))
        backend = "python"
        violating = tuple(sorted(bad_a))
    else:
        arrays = _kernels.lemma_sweep(
            a_max, u_max, b_max, v_max, n_max, thr, fact_thr, ms,
            win_sizes, np.array(win_fprods, dtype=np.int64))
        t_arr, l_arr, c_arr, f_arr, g_arr = arrays
        tuples = int(t_arr.sum())
        lemma_bad = int(l_arr.sum())
        chain_bad = int(c_arr.sum())
        fact_bad = int(f_arr.sum())
        good_sum = int(g_arr.sum())
        backend = _kernels.backend_name()
        bad = l_arr + c_arr + f_arr
        violating = tuple(int(a) for a in np.nonzero(bad)[0])
    elapsed = time.perf_counter() - start
    return SweepResult(backend=backend, tuples_checked=tuples,
                       lemma_violations=lemma_bad, chain_violations=chain_bad,
                       factorial_violations=fact_bad, good_checksum=good_sum,
                       elapsed_seconds=elapsed, violating_a=violating)
