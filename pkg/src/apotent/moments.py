"""Partial-fraction coefficients, moments and their companion identities.

``q/p`` with ``p = (z-a)^n`` expands as ``sum_k alpha_k / (z-a)^k`` around
the pole and as ``sum_m s_m / z^(m+1)`` at infinity. Everything here is
exact except the continued fraction for ``x * int_0^inf e^(-xt) tanh t dt``,
which is evaluated (and cross-checked by quadrature) in mpmath.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact import (
    GaussianRational,
    RatPoly,
    as_rational,
    binomial,
    factorial,
    hypergeom_2f1_terminating,
)
from .schwarz import apotent_poly, parity_split


@dataclass(frozen=True)
class AlphaVector:
    """``alpha_1 .. alpha_n``; indexing past ``n`` returns zero."""

    entries: tuple
    n: int
    a: Fraction

    def __getitem__(self, k: int):
        if k < 1:
            raise IndexError("alpha is indexed from 1")
        return self.entries[k - 1] if k <= self.n else Fraction(0)

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class MomentSequence:
    entries: tuple  # s_0 .. s_M
    n: int
    a: Fraction

    @property
    def M(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, m):
        return self.entries[m]

    def __len__(self):
        return len(self.entries)


def _check(n, a):
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    a = as_rational(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    return int(n), a


def alpha(n: int, a, k: int) -> Fraction:
    """``alpha_k = -2^(k-1) a^k binomial(n, k)``; zero for ``k > n``."""
    a = as_rational(a)
    return -(2 ** (k - 1)) * a ** k * binomial(n, k)


def alpha_vector(n: int, a) -> AlphaVector:
    n, a = _check(n, a)
    return AlphaVector(tuple(alpha(n, a, k) for k in range(1, n + 1)), n, a)


def alpha_from_taylor(n: int, a) -> AlphaVector:
    """Independent route: ``alpha_k = q^(n-k)(a) / (n-k)!`` with ``q`` the
    opposite-parity part of ``(z-a)^n``."""
    n, a = _check(n, a)
    _, q = parity_split(apotent_poly(n, a), n)
    t = q.taylor_shift(a)  # coefficient j is q^(j)(a)/j!
    return AlphaVector(tuple(t.coeff(n - k) for k in range(1, n + 1)), n, a)


def moment(n: int, a, m: int) -> Fraction:
    """``s_m = -a^(m+1) sum_{k=1}^n 2^(k-1) binomial(m, k-1) binomial(n, k)``."""
    n, a = _check(n, a)
    if m < 0:
        raise ValueError("moment index must be nonnegative")
    total = sum(2 ** (k - 1) * binomial(m, k - 1) * binomial(n, k)
                for k in range(1, min(n, m + 1) + 1))
    return -a ** (m + 1) * total


def moment_from_alphas(n: int, a, m: int) -> Fraction:
    """``s_m = sum_k a^(m-k+1) binomial(m, k-1) alpha_k``."""
    n, a = _check(n, a)
    return sum((a ** (m - k + 1) * binomial(m, k - 1) * alpha(n, a, k)
                for k in range(1, min(n, m + 1) + 1)), Fraction(0))


def moments_upto(n: int, a, M: int) -> MomentSequence:
    n, a = _check(n, a)
    return MomentSequence(tuple(moment(n, a, m) for m in range(M + 1)), n, a)


def moment_recurrence_residuals(seq: MomentSequence) -> list:
    """``(1+m) a^2 s_m + 2 n a s_{m+1} - (3+m) s_{m+2}`` for ``m = 0 .. M-2``."""
    n, a, s = seq.n, seq.a, seq.entries
    return [(1 + m) * a * a * s[m] + 2 * n * a * s[m + 1] - (3 + m) * s[m + 2]
            for m in range(len(s) - 2)]


def verify_moment_recurrence(seq: MomentSequence) -> bool:
    if seq.M < 2:
        raise ValueError("need at least s_0, s_1, s_2")
    return all(r == 0 for r in moment_recurrence_residuals(seq))


def moment_growth_ratios(n: int, a, M: int) -> list:
    """``|s_m| / (|a|^m m!)`` for ``m = 0 .. M``; bounded in ``m``."""
    n, a = _check(n, a)
    return [abs(moment(n, a, m)) / (abs(a) ** m * factorial(m)) for m in range(M + 1)]


# p_m and Meixner-Pollaczek ------------------------------------------------


def pm_value(m: int, n: int) -> Fraction:
    """``p_m(n) = (m+1)! 2F1(-m, 1-n; 2; 2)``.

    With this normalisation ``s_m (m+1)! = -a^(m+1) n p_m(n)`` holds for
    every ``a``, and ``p_1(n) = 2n``.
    """
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    return factorial(m + 1) * hypergeom_2f1_terminating(-m, 1 - n, 2, 2)


def pm_recurrence_poly(m: int) -> RatPoly:
    """Polynomial from ``p_0 = 1``, ``p_1 = x``, ``p_{j+1} = x p_j + j(j+1) p_{j-1}``.

    Its values at ``x = 2n`` coincide with :func:`pm_value` (not at ``x = n``).
    """
    prev, cur = RatPoly.zero(), RatPoly.one()
    if m == 0:
        return cur
    prev, cur = cur, RatPoly.monomial(1)
    for j in range(1, m):
        prev, cur = cur, cur.shift(1) + j * (j + 1) * prev
    return cur


def meixner_pollaczek_half_pi(m: int, x: GaussianRational) -> GaussianRational:
    """``P_m^(1)(x; pi/2)`` by ``(j+1) P_{j+1} = 2x P_j - (j+1) P_{j-1}``."""
    x = x if isinstance(x, GaussianRational) else GaussianRational(x)
    prev, cur = GaussianRational(0), GaussianRational(1)
    for j in range(m):
        prev, cur = cur, (2 * x * cur - (j + 1) * prev) / (j + 1)
    return cur


def meixner_pollaczek_check(m: int, n: int) -> bool:
    """Exact check of ``p_m(n) = (m! / i^m) P_m^(1)(i n; pi/2)``."""
    i = GaussianRational(0, 1)
    rhs = factorial(m) * meixner_pollaczek_half_pi(m, GaussianRational(0, n)) / i ** m
    return rhs == GaussianRational(pm_value(m, n))


# continued fraction ---------------------------------------------------------


def cf_phi(x, depth: int, dps: int = 30):
    """Finite continued fraction ``1/(x + 1*2/(x + 2*3/(x + ...)))``.

    ``depth`` counts the partial denominators ``x``; ``depth=1`` gives
    ``1/x``. Evaluated bottom-up in mpmath at ``dps`` decimal digits.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    with mpmath.workdps(dps):
        x = mpmath.mpf(x) if not isinstance(x, Fraction) else mpmath.mpf(x.numerator) / x.denominator
        if x <= 0:
            raise ValueError("continued fraction is evaluated for x > 0 only")
        tail = mpmath.mpf(0)
        for j in range(depth - 1, 0, -1):
            tail = j * (j + 1) / (x + tail)
        return 1 / (x + tail)


def quad_phi(x, eps: float = 1e-12, dps: int = 30):
    """``x * int_0^T e^(-xt) tanh(t) dt`` with ``e^(-xT) < eps``.

    The truncated tail is below ``eps`` because ``0 <= tanh <= 1``.
    Integration is adaptive (mpmath tanh-sinh) over dyadic panels of ``[0, T]``.
    """
    with mpmath.workdps(dps):
        x = mpmath.mpf(x) if not isinstance(x, Fraction) else mpmath.mpf(x.numerator) / x.denominator
        if x <= 0:
            raise ValueError("x must be positive")
        T = mpmath.log(1 / mpmath.mpf(eps)) / x
        pts = [mpmath.mpf(0)]
        step = min(mpmath.mpf(1), T)
        while pts[-1] + step < T:
            pts.append(pts[-1] + step)
            step *= 2
        pts.append(T)
        val = mpmath.quad(lambda t: mpmath.exp(-x * t) * mpmath.tanh(t), pts)
        return x * val
