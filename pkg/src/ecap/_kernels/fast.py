"""Numba implementations of the hot integer scans.

All arithmetic is int64; callers guarantee the ranges fit (see the range
guards in points.py and progressions.py).
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _gcd(a: int, b: int) -> int:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _isqrt(t: int) -> int:
    # floor sqrt for 0 <= t < 2**62; float seed then exact adjustment
    if t <= 0:
        return 0
    n = int(np.sqrt(np.float64(t)))
    while n > 0 and n * n > t:
        n -= 1
    while (n + 1) * (n + 1) <= t:
        n += 1
    return n


@njit(cache=True)
def _square_scan_impl(A, B, e, m_lo, m_hi, out_m, out_n):
    e4 = e * e * e * e
    e6 = e4 * e * e
    count = 0
    cap = out_m.shape[0]
    for m in range(m_lo, m_hi + 1):
        if _gcd(m, e) != 1:
            continue
        t = m * m * m + A * m * e4 + B * e6
        if t < 0:
            continue
        n = _isqrt(t)
        if n * n == t:
            if count < cap:
                out_m[count] = m
                out_n[count] = n
            count += 1
    return count


def square_points_scan(A, B, e, m_lo, m_hi):
    """Hits (m, n) with gcd(m, e) = 1 and m^3 + A*m*e^4 + B*e^6 a square n^2."""
    cap = 256
    while True:
        out_m = np.empty(cap, np.int64)
        out_n = np.empty(cap, np.int64)
        count = _square_scan_impl(np.int64(A), np.int64(B), np.int64(e),
                                  np.int64(m_lo), np.int64(m_hi), out_m, out_n)
        if count <= cap:
            return out_m[:count].copy(), out_n[:count].copy()
        cap = count


@njit(cache=True, parallel=True)
def _lemma_sweep_impl(a_max, u_max, b_max, v_max, n_max, thr, fact_thr, ms,
                      win_sizes, win_fprods,
                      tuples, lemma_bad, chain_bad, fact_bad, good_sum):
    n_delta = ms.shape[0]
    n_win = win_sizes.shape[0]
    max_win = 0
    for w in range(n_win):
        if win_sizes[w] > max_win:
            max_win = win_sizes[w]
    for a in prange(1, a_max + 1):
        g_seq = np.empty(n_max, np.int64)
        for u in range(1, u_max + 1):
            g0 = _gcd(a, u)
            ap = a // g0
            up = u // g0
            s = g0 * ap * up
            for b in range(-b_max, b_max + 1):
                if _gcd(a, b) != 1:
                    continue
                for v in range(-v_max, v_max + 1):
                    if v == 0 or _gcd(u, v) != 1:
                        continue
                    tuples[a] += 1
                    x = b * up
                    step = v * ap
                    for i in range(n_max):
                        g_seq[i] = _gcd(x, s)
                        x += step
                    # good-count lower bound, every prefix length, per delta
                    for di in range(n_delta):
                        t = thr[di, s]
                        good = 0
                        if s >= fact_thr[di]:
                            m2 = 2 * ms[di]
                            for n in range(1, n_max + 1):
                                if g_seq[n - 1] <= t:
                                    good += 1
                                if good < n // m2:
                                    lemma_bad[a] += 1
                        else:
                            for n in range(n_max):
                                if g_seq[n] <= t:
                                    good += 1
                        good_sum[a] += good
                    # pairwise chain: gcd(g_i, g_j) divides j - i whenever the
                    # pair fits in some window of the largest size
                    dmax = max_win - 1
                    if dmax > n_max - 1:
                        dmax = n_max - 1
                    for d in range(1, dmax + 1):
                        for i in range(n_max - d):
                            if d % _gcd(g_seq[i], g_seq[i + d]) != 0:
                                chain_bad[a] += 1
                    # factorial product bound over every window prefix
                    for wi in range(n_win):
                        w = win_sizes[wi]
                        if w > n_max:
                            continue
                        for k in range(n_max - w + 1):
                            prod = g_seq[k]
                            lc = g_seq[k]
                            fact_acc = 1
                            fact_j = 1
                            ok = True
                            for j in range(2, w + 1):
                                gg = g_seq[k + j - 1]
                                prod *= gg
                                lc = lc // _gcd(lc, gg) * gg
                                fact_j *= j - 1
                                fact_acc *= fact_j
                                if (fact_acc * lc) % prod != 0:
                                    fact_bad[a] += 1
                                    ok = False
                                    break
                            if not ok:
                                break
    return 0


def lemma_sweep(a_max, u_max, b_max, v_max, n_max, thr_table, fact_thr, ms,
                win_sizes, win_fprods):
    tuples = np.zeros(a_max + 1, np.int64)
    lemma_bad = np.zeros(a_max + 1, np.int64)
    chain_bad = np.zeros(a_max + 1, np.int64)
    fact_bad = np.zeros(a_max + 1, np.int64)
    good_sum = np.zeros(a_max + 1, np.int64)
    _lemma_sweep_impl(a_max, u_max, b_max, v_max, n_max,
                      np.ascontiguousarray(thr_table, dtype=np.int64),
                      np.ascontiguousarray(fact_thr, dtype=np.int64),
                      np.ascontiguousarray(ms, dtype=np.int64),
                      np.ascontiguousarray(win_sizes, dtype=np.int64),
                      np.ascontiguousarray(win_fprods, dtype=np.int64),
                      tuples, lemma_bad, chain_bad, fact_bad, good_sum)
    return tuples, lemma_bad, chain_bad, fact_bad, good_sum
