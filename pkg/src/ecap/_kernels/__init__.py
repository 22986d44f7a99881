"""Backend dispatch for the two hot integer scans.

Everything in the package is exact arbitrary-precision arithmetic except two
inner loops that dominate runtime and provably fit in int64:

* the perfect-square scan behind point enumeration, and
* the exhaustive divisibility sweep over arithmetic-progression parameters.

Both have a numba-compiled implementation (fast.py) and a vectorized numpy
one (reference.py) with identical semantics.  The backend is chosen by the
environment variable ECAP_KERNELS:

    ECAP_KERNELS=numba   force the JIT kernels (error if numba is missing)
    ECAP_KERNELS=numpy   force the pure-numpy fallback
    ECAP_KERNELS=auto    numba when importable, else numpy (default)

Callers are responsible for int64 range checks; out-of-range work stays on
the exact big-int paths in the calling modules.
"""

from __future__ import annotations

import os

_FORCED: str | None = None
_RESOLVED: str | None = None


def set_backend(name: str | None) -> None:
    """Override the backend for this process (None restores env selection)."""
    global _FORCED, _RESOLVED
    if name is not None and name not in ("numba", "numpy", "auto"):
        raise ValueError(f"unknown kernel backend: {name!r}")
    _FORCED = name
    _RESOLVED = None


def backend_name() -> str:
    """Resolved backend, computed once per process unless overridden."""
    global _RESOLVED
    if _RESOLVED is None:
        choice = _FORCED or os.environ.get("ECAP_KERNELS", "auto")
        if choice not in ("numba", "numpy", "auto"):
            raise ValueError(f"ECAP_KERNELS must be auto, numba or numpy, not {choice!r}")
        if choice == "auto":
            try:
                import numba  # noqa: F401

                choice = "numba"
            except ImportError:
                choice = "numpy"
        elif choice == "numba":
            import numba  # noqa: F401  (fail fast when forced but absent)
        _RESOLVED = choice
    return _RESOLVED


def square_points_scan(A: int, B: int, e: int, m_lo: int, m_hi: int):
    """Hits (m, n) with gcd(m, e) = 1 and m^3 + A*m*e^4 + B*e^6 = n^2, n >= 0."""
    if backend_name() == "numba":
        from ecap._kernels import fast

        return fast.square_points_scan(A, B, e, m_lo, m_hi)
    from ecap._kernels import reference

    return reference.square_points_scan(A, B, e, m_lo, m_hi)


def lemma_sweep(a_max, u_max, b_max, v_max, n_max, thr_table, fact_thr, ms,
                win_sizes, win_fprods):
    """Per-first-parameter violation counts for the divisibility sweep.

    Returns five int64 arrays indexed by a in 1..a_max (entry 0 unused):
    tuples checked, lemma violations, gcd-chain violations, factorial-product
    violations, and a checksum (sum over tuples and deltas of the good-term
    count at n_max) used to cross-validate backends.
    """
    if backend_name() == "numba":
        from ecap._kernels import fast

        return fast.lemma_sweep(a_max, u_max, b_max, v_max, n_max, thr_table,
                                fact_thr, ms, win_sizes, win_fprods)
    from ecap._kernels import reference

    return reference.lemma_sweep(a_max, u_max, b_max, v_max, n_max, thr_table,
                                 fact_thr, ms, win_sizes, win_fprods)
