from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from apotent.exact import mat_mul
from apotent.hankel import (
    check_shifted_hankel,
    hankel_closed_form,
    hankel_det_alphas,
    hankel_det_moments,
    hankel_report,
    invfactorial_det,
    invfactorial_det_bareiss,
    congruence_transform,
    neither_positive_nor_negative,
    pascal_factorization_check,
    recover_recurrence_coeffs,
)

nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=7).filter(lambda x: x != 0)


def _transpose(M):
    return [list(r) for r in zip(*M)]


@given(st.integers(1, 8), st.integers(1, 10), nonzero)
def test_congruence_transform(n, m, a):
    L, A, S = congruence_transform(n, a, m)
    assert mat_mul(mat_mul(L, A), _transpose(L)) == S
    assert all(L[i][i] == 1 for i in range(m))


@given(st.integers(1, 9), st.integers(1, 11), nonzero)
def test_three_routes(n, m, a):
    d = hankel_closed_form(n, a, m)
    assert hankel_det_moments(n, a, m) == hankel_det_alphas(n, a, m) == d
    assert (d == 0) == (m > n)


def test_cofactor_route_small():
    assert hankel_det_moments(4, F(3, 2), 4, method="cofactor") == hankel_closed_form(4, F(3, 2), 4)


@pytest.mark.parametrize("m", range(1, 12))
def test_invfactorial_det(m):
    assert invfactorial_det(m) == invfactorial_det_bareiss(m)


def test_report_indexing():
    rep = hankel_report(5, F(-2, 7))
    assert rep.ok
    assert rep.brute[0] == hankel_det_moments(5, F(-2, 7), 1)
    assert rep.brute[5] == 0


@pytest.mark.parametrize("n", range(2, 12))
def test_recovery_keys(n):
    rec = recover_recurrence_coeffs(n, 1, n)
    assert rec.c[1] == n
    assert all(rec.c[m] == 0 for m in range(2, n + 1))
    assert rec.b == {m: F(n * n - m * m, 4 * m * m - 1) for m in range(1, n)}
    with pytest.raises(ValueError):
        recover_recurrence_coeffs(n, 1, n + 1)


@pytest.mark.parametrize("n", range(1, 10))
def test_shifted(n):
    for m in range(1, n + 1):
        assert check_shifted_hankel(n, F(5, 3), m).ok


@pytest.mark.parametrize("n", range(3, 15))
def test_signs_mixed(n):
    assert neither_positive_nor_negative(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_pascal(n):
    for m in range(1, n + 1):
        rep = pascal_factorization_check(n, m)
        assert rep.ok
