"""Pure-numpy fallback kernels, semantically identical to fast.py.

Used when numba is unavailable or when ECAP_KERNELS=numpy.  Slower on the
full sweep grid but exact: every comparison is int64 integer arithmetic, and
products that could overflow are clamped above their divisibility ceiling so
a clamped value still compares as a failure exactly like the true value
would.
"""

from __future__ import annotations

import math

import numpy as np


def square_points_scan(A, B, e, m_lo, m_hi):
    """Hits (m, n) with gcd(m, e) = 1 and m^3 + A*m*e^4 + B*e^6 a square n^2."""
    m = np.arange(m_lo, m_hi + 1, dtype=np.int64)
    m = m[np.gcd(m, np.int64(e)) == 1]
    e4 = np.int64(e) ** 4
    e6 = np.int64(e) ** 6
    t = m * m * m + np.int64(A) * e4 * m + np.int64(B) * e6
    keep = t >= 0
    m, t = m[keep], t[keep]
    # float sqrt seed, exact adjustment within +-2 ulp-induced error
    n = np.sqrt(t.astype(np.float64)).astype(np.int64)
    root = np.full_like(n, -1)
    for k in (-2, -1, 0, 1, 2):
        cand = n + k
        ok = (cand >= 0) & (cand * cand == t)
        root = np.where(ok, cand, root)
    hit = root >= 0
    return m[hit].copy(), root[hit].copy()


def lemma_sweep(a_max, u_max, b_max, v_max, n_max, thr_table, fact_thr, ms,
                win_sizes, win_fprods):
    thr_table = np.asarray(thr_table, dtype=np.int64)
    fact_thr = np.asarray(fact_thr, dtype=np.int64)
    ms = np.asarray(ms, dtype=np.int64)
    win_sizes = np.asarray(win_sizes, dtype=np.int64)
    win_fprods = np.asarray(win_fprods, dtype=np.int64)

    tuples = np.zeros(a_max + 1, np.int64)
    lemma_bad = np.zeros(a_max + 1, np.int64)
    chain_bad = np.zeros(a_max + 1, np.int64)
    fact_bad = np.zeros(a_max + 1, np.int64)
    good_sum = np.zeros(a_max + 1, np.int64)

    bs = np.arange(-b_max, b_max + 1, dtype=np.int64)
    vs = np.arange(-v_max, v_max + 1, dtype=np.int64)
    vs = vs[vs != 0]
    idx = np.arange(n_max, dtype=np.int64)
    req = {int(m): np.arange(1, n_max + 1, dtype=np.int64) // (2 * int(m))
           for m in set(ms.tolist())}
    dmax = min(int(win_sizes.max()) - 1, n_max - 1) if win_sizes.size else 0

    for a in range(1, a_max + 1):
        b_val = bs[np.gcd(bs, np.int64(a)) == 1]
        if b_val.size == 0:
            continue
        for u in range(1, u_max + 1):
            g0 = math.gcd(a, u)
            ap, up = a // g0, u // g0
            s = g0 * ap * up
            v_val = vs[np.gcd(vs, np.int64(u)) == 1]
            if v_val.size == 0:
                continue
            tuples[a] += b_val.size * v_val.size
            x = (b_val[:, None, None] * up
                 + v_val[None, :, None] * ap * idx[None, None, :])
            g = np.gcd(x, np.int64(s))

            for di in range(ms.shape[0]):
                cum = np.cumsum(g <= thr_table[di, s], axis=2, dtype=np.int64)
                good_sum[a] += int(cum[:, :, -1].sum())
                if s >= fact_thr[di]:
                    lemma_bad[a] += int((cum < req[int(ms[di])][None, None, :]).sum())

            for d in range(1, dmax + 1):
                h = np.gcd(g[:, :, :-d], g[:, :, d:])
                chain_bad[a] += int((d % h != 0).sum())

            for wi in range(win_sizes.shape[0]):
                w = int(win_sizes[wi])
                if w > n_max:
                    continue
                clamp = win_fprods[wi] * s + 1
                already = np.zeros((b_val.size, v_val.size), dtype=bool)
                for k in range(n_max - w + 1):
                    prod = g[:, :, k].copy()
                    lc = g[:, :, k].copy()
                    fact_acc = 1
                    fact_j = 1
                    in_window_failed = already.copy()
                    for j in range(2, w + 1):
                        gg = g[:, :, k + j - 1]
                        prod = np.minimum(prod * gg, clamp)
                        lc = lc // np.gcd(lc, gg) * gg
                        fact_j *= j - 1
                        fact_acc *= fact_j
                        bad = ((fact_acc * lc) % prod != 0) & ~in_window_failed
                        fact_bad[a] += int(bad.sum())
                        in_window_failed |= bad
                    already |= in_window_failed
                    if already.all():
                        break
    return tuples, lemma_bad, chain_bad, fact_bad, good_sum
