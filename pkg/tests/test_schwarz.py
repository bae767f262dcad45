from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from apotent.exact import RatPoly, charpoly_dense
from apotent.mpnum import cis, working_precision
from apotent.schwarz import (
    apotent_poly,
    build_scaled,
    build_schwarz,
    charpoly_k,
    charpoly_sequence,
    dense_matrix,
    eigvector_chain,
    parity_split,
    q_explicit,
    scale_coeffs,
    verify_apotent,
)

nonzero = st.fractions(min_value=-5, max_value=5, max_denominator=9).filter(lambda x: x != 0)


def test_small_matrix():
    spec = build_schwarz(3, 1)
    assert spec.b == (-3, F(8, 3), F(1, 3))
    assert dense_matrix(spec) == [[3, 1, 0], [F(-8, 3), 0, 1], [0, F(-1, 3), 0]]
    assert charpoly_sequence(spec)[3] == RatPoly([-1, 3, -3, 1])


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_dense_charpoly_matches_recurrence(n):
    a = F(-2, 7)
    spec = build_schwarz(n, a)
    assert charpoly_dense(dense_matrix(spec)) == apotent_poly(n, a)
    assert charpoly_dense(build_scaled(n, a)) == apotent_poly(n, a)


def test_tampered_coefficient_is_detected():
    spec = build_schwarz(12, 1)
    b = list(spec.b)
    b[5] += F(1, 10 ** 9)
    res = verify_apotent(replace(spec, b=tuple(b)))
    assert not res.ok and res.index is not None


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        build_schwarz(0, 1)
    with pytest.raises(ValueError):
        build_schwarz(3, 0)


@given(st.integers(1, 20), nonzero)
def test_scaling_law(n, a):
    unit = charpoly_sequence(build_schwarz(n, 1))
    seq = charpoly_sequence(build_schwarz(n, a))
    for k in range(n + 1):
        assert scale_coeffs(unit[k], k, a) == seq[k].coeffs


@given(st.integers(1, 30), st.integers(0, 30), nonzero)
def test_charpoly_k(n, k, a):
    k = min(k, n)
    assert charpoly_k(build_schwarz(n, a), k) == charpoly_sequence(build_schwarz(n, a))[k]


@given(st.integers(1, 25), nonzero)
def test_parity_split(n, a):
    Q, q = parity_split(apotent_poly(n, a), n)
    assert q == q_explicit(n, a)
    assert Q + q == apotent_poly(n, a)


def test_complex_apotency():
    with working_precision(256):
        a = cis(-2.5)
        for n in (5, 33, 71):
            assert verify_apotent(build_schwarz(n, a, 256)).ok


@given(st.integers(1, 14), nonzero)
def test_eigvector_chain(n, a):
    assert eigvector_chain(build_schwarz(n, a)).ok
