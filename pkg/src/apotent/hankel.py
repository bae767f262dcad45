"""Hankel determinants of the moment sequence and what they determine.

Three independent routes to ``D_m``: Bareiss elimination of ``[s_{i+j}]``,
Bareiss elimination of ``[alpha_{i+j+1}]`` and the closed product formula.
From ``D_m`` and the shifted determinants ``D'_m`` the recurrence
coefficients ``b_m`` and ``c_m`` are recovered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (
    as_rational,
    bareiss_det,
    binomial,
    cofactor_det,
    factorial,
    identity,
    mat_mul,
    pochhammer,
)
from .moments import alpha, moment
from .schwarz import b_coefficient


class InconsistencyError(ArithmeticError):
    """An exact identity that must hold did not (e.g. a zero pivot ``D_m``)."""


def moment_hankel_matrix(n, a, m):
    a = as_rational(a)
    s = [moment(n, a, j) for j in range(2 * m - 1)]
    return [[s[i + j] for j in range(m)] for i in range(m)]


def alpha_hankel_matrix(n, a, m):
    a = as_rational(a)
    al = [None] + [alpha(n, a, j) for j in range(1, 2 * m)]
    return [[al[i + j + 1] for j in range(m)] for i in range(m)]


def hankel_det_moments(n: int, a, m: int, method: str = "bareiss") -> Fraction:
    """``D_m = det[s_{i+j}]_{i,j=0}^{m-1}``; ``D_0 = 1``.

    ``method="cofactor"`` uses Laplace expansion (meant for ``m <= 4``).
    """
    if m == 0:
        return Fraction(1)
    M = moment_hankel_matrix(n, a, m)
    return Fraction(cofactor_det(M)) if method == "cofactor" else bareiss_det(M)


def hankel_det_alphas(n: int, a, m: int) -> Fraction:
    """``det[alpha_{i+j-1}]_{i,j=1}^m`` with ``alpha_j = 0`` for ``j > n``."""
    if m == 0:
        return Fraction(1)
    return bareiss_det(alpha_hankel_matrix(n, a, m))


def congruence_transform(n: int, a, m: int):
    """``(L, A, S)`` with ``S = L A L^T``.

    ``S`` is the moment Hankel matrix, ``A`` the alpha Hankel matrix and
    ``L[i][p] = binomial(i, p) a^(i-p)`` is unit lower triangular, so the
    row and column operations turning ``S`` into ``A`` keep the determinant.
    """
    a = as_rational(a)
    L = [[binomial(i, p) * a ** (i - p) if p <= i else Fraction(0) for p in range(m)]
         for i in range(m)]
    A = alpha_hankel_matrix(n, a, m)
    S = moment_hankel_matrix(n, a, m)
    return L, A, S


def hankel_closed_form(n: int, a, m: int) -> Fraction:
    """Closed product formula for ``D_m``; vanishes for ``m > n``."""
    if m == 0:
        return Fraction(1)
    a = as_rational(a)
    bn = binomial(n, m)
    if bn == 0:
        return Fraction(0)
    sign = -1 if (m * (m + 1) // 2) % 2 else 1
    val = Fraction(sign * 2 ** (m * (m - 1)) * bn) * a ** (m * m)
    for k in range(m):
        val *= Fraction(binomial(n + k, n - k), binomial(m + k, m - k))
    return val


def invfactorial_matrix(m: int):
    return [[Fraction(1, factorial(i + j + 1)) for j in range(m)] for i in range(m)]


def invfactorial_det(m: int) -> Fraction:
    """``det[1/(i+j-1)!]_{i,j=1}^m`` in closed form."""
    if m < 1:
        raise ValueError("m must be positive")
    den = factorial(m)
    for k in range(1, m):
        den *= factorial(2 * k) * binomial(m + k, m - k)
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return Fraction(sign, den)


def invfactorial_det_bareiss(m: int) -> Fraction:
    return bareiss_det(invfactorial_matrix(m))


# shifted determinants -------------------------------------------------------


def shifted_moment_matrix(n, a, m):
    a = as_rational(a)
    s = [moment(n, a, j) for j in range(2 * m)]
    return [[s[i + j] for j in range(m - 1)] + [s[i + m]] for i in range(m)]


def shifted_hankel(n: int, a, m: int) -> Fraction:
    """``D'_m``: the moment Hankel determinant with last column ``s_m .. s_{2m-1}``."""
    if m < 1:
        raise ValueError("m must be positive")
    return bareiss_det(shifted_moment_matrix(n, a, m))


def alpha_shifted_det(n: int, a, m: int) -> Fraction:
    """Alpha Hankel determinant with the last row ``alpha_{m+1} .. alpha_{2m}``."""
    a = as_rational(a)
    al = [None] + [alpha(n, a, j) for j in range(1, 2 * m + 1)]
    rows = [[al[i + j + 1] for j in range(m)] for i in range(m - 1)]
    rows.append([al[m + 1 + j] for j in range(m)])
    return bareiss_det(rows)


@dataclass(frozen=True)
class ShiftedReport:
    n: int
    a: Fraction
    m: int
    shifted: Fraction        # D'_m from moments
    hankel: Fraction         # D_m
    alpha_det: Fraction      # A_m, alpha Hankel determinant
    alpha_shifted: Fraction  # A'_m, last row shifted by one

    @property
    def ok(self) -> bool:
        a, n, m = self.a, self.n, self.m
        return (self.shifted == a * n * self.hankel
                and self.shifted == self.alpha_shifted + a * m * self.alpha_det
                and self.alpha_shifted == a * (n - m) * self.alpha_det)


def check_shifted_hankel(n: int, a, m: int) -> ShiftedReport:
    """``D'_m = a n D_m`` together with its alpha decomposition
    ``D'_m = A'_m + a m A_m`` and ``A'_m = a (n - m) A_m``."""
    a = as_rational(a)
    return ShiftedReport(
        n=n, a=a, m=m,
        shifted=shifted_hankel(n, a, m),
        hankel=hankel_det_moments(n, a, m),
        alpha_det=hankel_det_alphas(n, a, m),
        alpha_shifted=alpha_shifted_det(n, a, m),
    )


# recovery of the recurrence ------------------------------------------------


@dataclass(frozen=True)
class RecoveredCoefficients:
    b: dict   # m -> b_m, 1 <= m <= m_max-1
    c: dict   # m -> c_m, 1 <= m <= m_max
    hankel: tuple   # D_0 .. D_{m_max}
    shifted: tuple  # D'_1 .. D'_{m_max}


def recover_recurrence_coeffs(n: int, a, m_max: int) -> RecoveredCoefficients:
    """Recover ``b_m = -D_{m-1} D_{m+1} / D_m^2`` and the diagonal shifts ``c_m``.

    With ``Q_m = z^m + A_{1,m} z^(m-1) + ...`` and ``A_{1,m} = -D'_m / D_m``:
    ``c_1 = -A_{1,1}`` and ``c_{m+1} = A_{1,m} - A_{1,m+1}``.
    ``b_n`` is not produced: ``D_{n+1} = 0`` would make it vanish.
    """
    a = as_rational(a)
    if not 1 <= m_max <= n:
        raise ValueError(f"m_max must lie in 1..{n}, got {m_max}")
    D = [hankel_det_moments(n, a, m) for m in range(m_max + 1)]
    for m in range(1, m_max + 1):
        if D[m] == 0:
            raise InconsistencyError(f"D_{m} vanishes for n={n}, a={a}")
    Dp = [None] + [shifted_hankel(n, a, m) for m in range(1, m_max + 1)]
    b = {m: -D[m - 1] * D[m + 1] / D[m] ** 2 for m in range(1, m_max)}
    A1 = [Fraction(0)] + [-Dp[m] / D[m] for m in range(1, m_max + 1)]
    c = {m: A1[m - 1] - A1[m] for m in range(1, m_max + 1)}
    return RecoveredCoefficients(b, c, tuple(D), tuple(Dp[1:]))


@dataclass(frozen=True)
class HankelReport:
    n: int
    a: Fraction
    m_max: int
    brute: tuple        # D_1 .. D_{m_max}
    closed: tuple
    alphas: tuple
    shifted: tuple      # D'_1 .. D'_min(m_max, n)
    b: dict = field(default_factory=dict)
    c: dict = field(default_factory=dict)

    @property
    def all_equal(self) -> bool:
        return self.brute == self.closed == self.alphas

    @property
    def vanishing_ok(self) -> bool:
        return (all(d != 0 for d in self.brute[: min(self.n, self.m_max)])
                and all(d == 0 for d in self.brute[self.n:]))

    @property
    def shifted_ok(self) -> bool:
        return all(dp == self.a * self.n * d for dp, d in zip(self.shifted, self.brute))

    @property
    def b_ok(self) -> bool:
        return all(v == b_coefficient(self.n, m, self.a) for m, v in self.b.items())

    @property
    def c_ok(self) -> bool:
        return all(v == (self.a * self.n if m == 1 else 0) for m, v in self.c.items())

    @property
    def ok(self) -> bool:
        return self.all_equal and self.vanishing_ok and self.shifted_ok and self.b_ok and self.c_ok


def hankel_report(n: int, a, m_max: int | None = None) -> HankelReport:
    a = as_rational(a)
    m_max = n + 2 if m_max is None else m_max
    ms = range(1, m_max + 1)
    rec = recover_recurrence_coeffs(n, a, min(n, m_max))
    return HankelReport(
        n=n, a=a, m_max=m_max,
        brute=tuple(hankel_det_moments(n, a, m) for m in ms),
        closed=tuple(hankel_closed_form(n, a, m) for m in ms),
        alphas=tuple(hankel_det_alphas(n, a, m) for m in ms),
        shifted=rec.shifted,
        b=rec.b, c=rec.c,
    )


def neither_positive_nor_negative(n: int, a=1) -> bool:
    """True when ``D_1..D_n`` are neither all positive nor of sign ``(-1)^m``."""
    D = [hankel_closed_form(n, a, m) for m in range(1, n + 1)]
    positive = all(d > 0 for d in D)
    negative = all((d > 0) == (m % 2 == 0) and d != 0 for m, d in enumerate(D, 1))
    return not positive and not negative


# Pascal-type factorisation ---------------------------------------------------


def _diag(values):
    n = len(values)
    return [[Fraction(values[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def pascal_upper(m: int):
    """``[binomial(j, i)]_{i,j=0}^{m-1}``."""
    return [[Fraction(binomial(j, i)) for j in range(m)] for i in range(m)]


def pascal_upper_inverse(m: int):
    """``[(-1)^(i+j) binomial(j, i)]_{i,j=0}^{m-1}``."""
    return [[Fraction((-1) ** (i + j) * binomial(j, i)) for j in range(m)] for i in range(m)]


def binomial_hankel(n: int, m: int):
    """``[binomial(n, i+j-1)]_{i,j=1}^m``."""
    return [[Fraction(binomial(n, i + j + 1)) for j in range(m)] for i in range(m)]


def pascal_factors(n: int, m: int, column_offset: int = 1):
    """Factors ``(L, F, R, P^-1)`` of ``[binomial(n, i+j-1)]``.

    ``L = diag[(n-j)_{j+1}]`` (row factors ``n(n-1)...(n-j)``),
    ``F = [1/(i+j-1)!]``, ``R = diag[(n + column_offset)_j]`` (column
    factors accumulated by the column sweeps) and ``P^-1`` the inverse
    upper Pascal matrix. ``column_offset=1`` is the variant that holds;
    ``column_offset=0`` reproduces the literal ``diag[(n)_j]`` reading.
    """
    L = _diag([pochhammer(n - j, j + 1) for j in range(m)])
    R = _diag([pochhammer(n + column_offset, j) for j in range(m)])
    return L, invfactorial_matrix(m), R, pascal_upper_inverse(m)


def bidiagonal_power_form(m: int):
    """``antidiag(1) * B^m`` with ``B`` lower bidiagonal with unit entries."""
    B = [[Fraction(int(i == j or i == j + 1)) for j in range(m)] for i in range(m)]
    Bm = identity(m)
    for _ in range(m):
        Bm = mat_mul(Bm, B)
    rev = [[Fraction(int(i + j == m - 1)) for j in range(m)] for i in range(m)]
    return mat_mul(rev, Bm)


@dataclass(frozen=True)
class PascalReport:
    factorization: bool
    inverse: bool
    reverse: bool
    bidiagonal: bool
    literal_factorization: bool  # diag[(n)_j] in place of diag[(n+1)_j]

    @property
    def ok(self) -> bool:
        return self.factorization and self.inverse and self.reverse and self.bidiagonal


def pascal_factorization_check(n: int, m: int) -> PascalReport:
    """Exact matrix checks of the Pascal-type factorisation of
    ``[binomial(n, i+j-1)]`` and of its companion identities."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")

    def product(offset):
        L, F, R, Pinv = pascal_factors(n, m, offset)
        return mat_mul(mat_mul(mat_mul(L, F), R), Pinv)

    target = binomial_hankel(n, m)
    fact_ok = product(1) == target
    literal_ok = product(0) == target
    inv_ok = mat_mul(pascal_upper(m), pascal_upper_inverse(m)) == identity(m)

    # reverse direction with n -> m
    Linv = _diag([Fraction(1, pochhammer(m - j, j + 1)) for j in range(m)])
    Rinv = _diag([Fraction(1, pochhammer(m + 1, j)) for j in range(m)])
    rev = mat_mul(mat_mul(mat_mul(Linv, binomial_hankel(m, m)), pascal_upper(m)), Rinv)
    rev_ok = rev == invfactorial_matrix(m)

    bid_ok = bidiagonal_power_form(m) == binomial_hankel(m, m)
    return PascalReport(fact_ok, inv_ok, rev_ok, bid_ok, literal_ok)
