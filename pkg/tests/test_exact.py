from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from apotent.exact import (
    GaussianRational,
    RatPoly,
    bareiss_det,
    binomial,
    charpoly_dense,
    cofactor_det,
    double_factorial,
    hypergeom_2f1_terminating,
    pochhammer,
)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=30)
polys = st.lists(rats, max_size=7).map(RatPoly)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == RatPoly.zero()


@given(polys, polys, rats)
def test_evaluation_is_a_homomorphism(p, q, z):
    assert (p * q)(z) == p(z) * q(z)
    assert (p + q)(z) == p(z) + q(z)


@given(polys, rats)
def test_taylor_shift(p, a):
    z = Fraction(3, 7)
    assert p.taylor_shift(a)(z) == p(z + a)


@given(polys, st.lists(rats, min_size=1, max_size=4).map(RatPoly))
def test_divmod(p, d):
    if d.is_zero():
        return
    q, r = p.divmod(d)
    assert q * d + r == p
    assert r.is_zero() or r.degree < d.degree


def test_degree_and_normalisation():
    assert RatPoly([1, 2, 0, 0]).degree == 1
    assert RatPoly.zero().is_zero()
    assert RatPoly.from_roots([1, 2]) == RatPoly([2, -3, 1])


@pytest.mark.parametrize("n", range(0, 12))
def test_binomial_rows(n):
    assert sum(binomial(n, k) for k in range(n + 1)) == 2 ** n
    assert binomial(n, n + 1) == 0


def test_small_values():
    assert double_factorial(7) == 105
    assert double_factorial(-1) == 1
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    # 2F1(-2, b; c; 1) by Chu-Vandermonde
    assert hypergeom_2f1_terminating(-2, 3, 5, 1) == Fraction(pochhammer(2, 2), pochhammer(5, 2))


@given(st.lists(st.lists(rats, min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinants_agree(m):
    assert bareiss_det(m) == cofactor_det(m)


def test_charpoly_dense_companion():
    # companion matrix of z^2 - 3z + 2
    assert charpoly_dense([[0, -2], [1, 3]]) == RatPoly([2, -3, 1])


def test_gaussian_rational():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1)
    assert (GaussianRational(1, 2) / GaussianRational(1, 2)) == GaussianRational(1)
