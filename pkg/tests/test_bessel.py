from fractions import Fraction as F

import pytest

from apotent.bessel import (
    bessel_sequence,
    bessel_via_schwarz_recurrence,
    bessel_weight_series,
    compare_to_bessel,
    convergence_ratios,
    moment_series_gap,
    p_at_inverse_n,
)
from apotent.exact import RatPoly
from apotent.mpnum import pi, working_precision


def test_first_bessel_polynomials():
    B = bessel_sequence(3)
    assert B[2] == RatPoly([F(1, 3), 1, 1])
    assert B[3] == RatPoly([F(1, 15), F(2, 5), 1, 1])


@pytest.mark.parametrize("K", [0, 1, 5, 20])
def test_two_recurrences(K):
    assert bessel_sequence(K).entries == bessel_via_schwarz_recurrence(K).entries


def test_k2_distance():
    assert compare_to_bessel(2, 7) == F(1, 147)


def test_rates():
    for k in range(3, 7):
        assert all(r == 4 for r in convergence_ratios(k))


def test_limit_is_monic():
    assert p_at_inverse_n(5, 40).leading == 1


def test_weight_series_origin():
    with working_precision(128):
        v = bessel_weight_series(0, 10)
        assert abs(v + 1 / pi()) < 1e-35


def test_moment_gap_shrinks():
    with working_precision(128):
        g1 = moment_series_gap(1, 50, terms=60)
        g2 = moment_series_gap(1, 100, terms=60)
    assert g2 < g1 / 3
