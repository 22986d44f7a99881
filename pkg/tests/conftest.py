"""Shared fixtures: small curves and their enumerated point corpora."""

import math

import pytest

from ecap.curves import ShortWeierstrass
from ecap.points import enumerate_points

# Small integral models with assorted torsion, rank, and integral-point
# supplies; all |A|, |B| <= 20.
CURVE_COEFFS = [
    (-1, 0), (0, 1), (0, -2), (0, 2), (0, 9), (0, 17), (0, 16),
    (-1, 1), (1, 1), (-2, 1), (-7, 10), (-4, 4), (2, 3), (-2, 5),
]


@pytest.fixture(scope="session")
def curves():
    return [ShortWeierstrass(a, b) for a, b in CURVE_COEFFS]


@pytest.fixture(scope="session")
def corpus(curves):
    """curve -> all points with log-height <= log 80."""
    bound = math.log(80)
    return {sw: enumerate_points(sw, bound) for sw in curves}
