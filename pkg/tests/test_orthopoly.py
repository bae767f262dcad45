from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from apotent.exact import RatPoly
from apotent.mpnum import working_precision
from apotent.orthopoly import (
    c_norm,
    c_norm_asymptotic_ratio,
    fg_families,
    functional_contour,
    functional_eval,
    functional_eval_alpha,
    gram_matrix,
    make_functional,
    ode_residual,
    p_2f1_poly,
    p_explicit_2f1,
    p_sequence,
    q_oracle,
    rodrigues,
    rodrigues_literal,
    verify_fg,
    weight_ift,
    weight_ift_series,
)

nonzero = st.fractions(min_value=-3, max_value=3, max_denominator=7).filter(lambda x: x != 0)


@pytest.mark.parametrize("n", range(1, 10))
def test_rodrigues(n):
    P = p_sequence(n, 1)
    for k in range(n + 1):
        assert rodrigues(n, k) == P[k]


def test_rodrigues_literal_variant_differs():
    quo, rem = rodrigues_literal(2, 1)
    assert rem.is_zero()
    assert quo == RatPoly([-1, 4, -5, 2])
    assert quo != p_sequence(2, 1)[1]


@given(st.integers(1, 10), st.integers(0, 10), st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_2f1_pointwise(n, k, z):
    k = min(k, n)
    assert p_explicit_2f1(n, k, z) == p_sequence(n, 1)[k](z)


@given(st.integers(1, 9), nonzero)
def test_2f1_scaled(n, a):
    P = p_sequence(n, a)
    assert all(p_2f1_poly(n, k, a) == P[k] for k in range(n + 1))


@given(st.integers(2, 8), nonzero)
def test_q_oracle(n, a):
    P = p_sequence(n, a)
    assert all(q_oracle(n, a, m) == P[m] for m in range(1, n + 1))


@pytest.mark.parametrize("n", range(1, 12))
def test_ode(n):
    assert all(ode_residual(n, k).is_zero() for k in range(n + 1))


@pytest.mark.parametrize("n", range(1, 12))
def test_fg(n):
    fam = fg_families(n)
    assert len(fam.f) == len(fam.g) == n + 1
    assert verify_fg(n).ok


@given(st.integers(1, 7), nonzero)
def test_functional_routes(n, a):
    spec = make_functional(n, a)
    for j in range(2 * n + 2):
        f = RatPoly.monomial(j)
        assert functional_eval(spec, f) == functional_eval_alpha(spec, f)


def test_functional_contour_single():
    spec = make_functional(4, F(3, 2))
    f = RatPoly([1, -2, 0, 5])
    exact = functional_eval(spec, f)
    with working_precision(128):
        assert abs(functional_contour(spec, f) - exact) < 1e-20 * max(1, abs(exact))


@given(st.integers(1, 7), nonzero)
def test_gram(n, a):
    G = gram_matrix(n, a)
    assert G.is_symmetric() and G.is_diagonal()
    assert G.diagonal() == tuple(c_norm(n, a, m) for m in range(n))


def test_c_norm_small():
    # C_2 at n = 3, a = 1 from b_0 (-b_1)(-b_2) = -3 * 8/3 * 1/3
    assert c_norm(3, 1, 2) == F(-8, 3)


def test_c_norm_asymptotics():
    assert abs(c_norm_asymptotic_ratio(200) - 1) < 0.01


@pytest.mark.parametrize("t", [-3, 0, 1.5])
def test_weight_ift(t):
    with working_precision(256):
        assert abs(weight_ift(6, F(1, 2), t) - weight_ift_series(6, F(1, 2), t)) < 1e-25
