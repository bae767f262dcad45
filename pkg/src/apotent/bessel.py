"""Monic Bessel polynomials and the ``a = -1/n`` limit of ``P_k``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import RatPoly, factorial
from .moments import moment
from .mpnum import pi, to_mpc, working_precision
from .schwarz import build_schwarz, charpoly_k


@dataclass(frozen=True)
class BesselSequence:
    entries: tuple  # B_0 .. B_K

    def __getitem__(self, k):
        return self.entries[k]

    def __len__(self):
        return len(self.entries)


def bessel_sequence(K: int) -> BesselSequence:
    """``B_0 = 1``, ``B_1 = z + 1``, ``B_{k+1} = z B_k + B_{k-1} / (4k^2 - 1)``."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    seq = [RatPoly.one(), RatPoly([1, 1])]
    for k in range(1, K):
        seq.append(seq[k].shift(1) + Fraction(1, 4 * k * k - 1) * seq[k - 1])
    return BesselSequence(tuple(seq[: K + 1]))


def bessel_via_schwarz_recurrence(K: int) -> BesselSequence:
    """Same polynomials from ``P_{k+1} = z P_k + b_k P_{k-1}`` with the
    limiting coefficients ``b_0 = 1``, ``b_k = 1/(4k^2 - 1)``."""
    b = [Fraction(1)] + [Fraction(1, 4 * k * k - 1) for k in range(1, max(K, 1))]
    seq = [RatPoly.one(), RatPoly([b[0], 1])]
    for k in range(1, K):
        seq.append(seq[k].shift(1) + b[k] * seq[k - 1])
    return BesselSequence(tuple(seq[: K + 1]))


def p_at_inverse_n(k: int, n: int) -> RatPoly:
    """``P_k`` for order ``n`` and eigenvalue ``a = -1/n``."""
    return charpoly_k(build_schwarz(n, Fraction(-1, n)), k)


def compare_to_bessel(k: int, n: int) -> Fraction:
    """Largest coefficient gap between ``P_k(a=-1/n)`` and ``B_k``."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    P = p_at_inverse_n(k, n)
    B = bessel_sequence(k)[k]
    return max(abs(P.coeff(i) - B.coeff(i)) for i in range(k + 1))


def convergence_ratios(k: int, ns=(100, 200, 400)) -> list:
    """``distance(n) / distance(2n)`` for each ``n``; about 4 for an ``O(n^-2)`` gap."""
    return [compare_to_bessel(k, n) / compare_to_bessel(k, 2 * n) for n in ns]


def bessel_weight_series(t, terms: int, precision_bits=None):
    """``-(1/2pi) sum_{k<terms} 2^(k+1) (it)^k / (k! (k+1)!)``."""
    if terms < 1:
        raise ValueError("terms must be at least 1")
    with working_precision(precision_bits):
        x = to_mpc(1j) * to_mpc(t)
        total = to_mpc(0)
        term = to_mpc(2)  # k = 0
        for k in range(terms):
            total += term
            term = term * 2 * x / ((k + 1) * (k + 2))
        return -total / (2 * pi())


def moment_series_gap(t, n: int, terms: int = 200, precision_bits=None):
    """Gap between the ``a = -1/n`` moment series and the Bessel weight series.

    For large ``n`` the moments tend to ``(-2)^m / (m+1)!``, so the moment
    series approaches ``-1/2`` times the Bessel series. The gap returned
    is ``|-2 * moment_series - bessel_series|``; it is reported for
    inspection only.
    """
    a = Fraction(-1, n)
    with working_precision(precision_bits):
        x = to_mpc(-1j) * to_mpc(t)
        total = to_mpc(0)
        pw = to_mpc(1)
        for m in range(terms):
            total += to_mpc(Fraction(moment(n, a, m), factorial(m))) * pw
            pw *= x
        mom = total / (2 * pi())
        return abs(-2 * mom - bessel_weight_series(t, terms))
