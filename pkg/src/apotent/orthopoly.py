"""Orthogonal-polynomial layer for the one-point functional at ``z = a``.

The monic polynomials ``P_k`` (Jacobi with parameters ``(-n, n)`` when
``a = 1``) are produced here by their explicit recurrence and checked
against several independent descriptions: the 2F1 formula, the Rodrigues
formula, the differential equation, the bordered moment determinant and
the functional itself (derivative form and contour integral).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import (
    RatPoly,
    as_rational,
    bareiss_det,
    binomial,
    double_factorial,
    factorial,
    hypergeom_2f1_terminating,
    pochhammer,
)
from .moments import alpha, moment
from .mpnum import cis, is_exact, pi, to_mpc, to_mpfr, working_precision
from .schwarz import PolySequence, apotent_poly, b_coefficient, parity_split


def p_sequence(n: int, a) -> PolySequence:
    """``P_0 .. P_n`` from ``P_0 = 1``, ``P_1 = z - a n`` and
    ``P_{k+1} = z P_k + a^2 (n^2 - k^2) / ((2k-1)(2k+1)) P_{k-1}``."""
    a = as_rational(a)
    if a == 0 or n < 1:
        raise ValueError("need n >= 1 and a != 0")
    seq = [RatPoly.one(), RatPoly([-a * n, 1])]
    for k in range(1, n):
        coef = a * a * Fraction(n * n - k * k, (2 * k - 1) * (2 * k + 1))
        seq.append(seq[k].shift(1) + coef * seq[k - 1])
    return PolySequence(tuple(seq[: n + 1]), n, a)


def p_explicit_2f1(n: int, k: int, z) -> Fraction:
    """``P_k(z)`` at ``a = 1`` from
    ``(-2)^k (n+1)_k / (k+1)_k * 2F1(-k, k+1; n+1; (1+z)/2)``."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    z = as_rational(z)
    pref = Fraction((-2) ** k * pochhammer(n + 1, k), pochhammer(k + 1, k))
    return pref * hypergeom_2f1_terminating(-k, k + 1, n + 1, (1 + z) / 2)


def interpolate(points, values) -> RatPoly:
    """Exact Lagrange interpolation through ``len(points)`` nodes."""
    result = RatPoly.zero()
    for i, (xi, yi) in enumerate(zip(points, values)):
        if yi == 0:
            continue
        basis = RatPoly.one()
        den = Fraction(1)
        for j, xj in enumerate(points):
            if j != i:
                basis = basis * RatPoly([-xj, 1])
                den *= xi - xj
        result = result + basis * (yi / den)
    return result


def p_2f1_poly(n: int, k: int, a=1) -> RatPoly:
    """``P_k`` rebuilt from ``k + 1`` samples of the 2F1 formula, then
    rescaled to eigenvalue ``a`` by ``P_k(z; a) = a^k P_k(z/a; 1)``."""
    pts = [Fraction(j) for j in range(k + 1)]
    unit = interpolate(pts, [p_explicit_2f1(n, k, x) for x in pts])
    a = as_rational(a)
    return unit.scale_arg(1 / a) * a ** k


def rodrigues(n: int, k: int) -> RatPoly:
    """Monic Jacobi ``(-n, n)`` polynomial at ``a = 1`` via Rodrigues:

    ``(-1)^k / (k+1)_k * ((1-z)/(1+z))^n * d^k[(1-z)^(k-n) (1+z)^(n+k)]``.

    Functions ``(1-z)^e g(z)`` are carried as the pair ``(e, g)``; the
    final division by ``(1+z)^n`` must be exact.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    e = k - n
    g = RatPoly([1, 1]) ** (n + k)
    one_minus = RatPoly([1, -1])
    for _ in range(k):
        # d/dz[(1-z)^e g] = (1-z)^(e-1) [-e g + (1-z) g']
        g = (-e) * g + one_minus * g.derivative()
        e -= 1
    # now (1-z)^(-n) g; multiply by (1-z)^n / (1+z)^n
    assert e == -n
    quo, rem = g.divmod(RatPoly([1, 1]) ** n)
    if not rem.is_zero():
        raise ArithmeticError("Rodrigues numerator not divisible by (1+z)^n")
    return quo * Fraction((-1) ** k, pochhammer(k + 1, k))


def rodrigues_literal(n: int, k: int):
    """The same expression with ``(1-z)^(n-k)`` in place of ``(1-z)^(k-n)``.

    Returned as ``(quotient, remainder)`` of the division by ``(1+z)^n``
    after multiplying through by ``(1-z)^n``; kept only to document that
    this variant does not reproduce ``P_k``.
    """
    e = n - k
    g = RatPoly([1, 1]) ** (n + k)
    one_minus = RatPoly([1, -1])
    # expand (1-z)^e fully since e >= 0 here
    f = (one_minus ** e) * g
    f = f.derivative(k) * (one_minus ** n)
    quo, rem = f.divmod(RatPoly([1, 1]) ** n)
    s = Fraction((-1) ** k, pochhammer(k + 1, k))
    return quo * s, rem * s


def ode_residual(n: int, k: int) -> RatPoly:
    """``(1-z^2) P_k'' + 2(n-z) P_k' + k(k+1) P_k`` at ``a = 1``."""
    P = p_sequence(n, 1)[k]
    d1, d2 = P.derivative(), P.derivative(2)
    return RatPoly([1, 0, -1]) * d2 + RatPoly([2 * n, -2]) * d1 + k * (k + 1) * P


@dataclass(frozen=True)
class FGFamilies:
    n: int
    f: tuple  # f_0 .. f_n
    g: tuple  # g_0 .. g_n


def fg_families(n: int) -> FGFamilies:
    """Auxiliary families at ``a = 1``: ``f_0 = 1, f_1 = z``; ``g_0 = 0, g_1 = 1``;
    both continue with ``y_{k+1} = z y_k + (n^2 - k^2)/(4k^2 - 1) y_{k-1}``."""
    f = [RatPoly.one(), RatPoly.monomial(1)]
    g = [RatPoly.zero(), RatPoly.one()]
    for k in range(1, n):
        c = Fraction(n * n - k * k, 4 * k * k - 1)
        f.append(f[k].shift(1) + c * f[k - 1])
        g.append(g[k].shift(1) + c * g[k - 1])
    return FGFamilies(n, tuple(f[: n + 1]), tuple(g[: n + 1]))


@dataclass(frozen=True)
class FGReport:
    decomposition: bool
    parity_f: bool
    parity_g: bool
    endpoint: bool  # f_n = Q and -n g_n = q

    @property
    def ok(self) -> bool:
        return self.decomposition and self.parity_f and self.parity_g and self.endpoint


def verify_fg(n: int) -> FGReport:
    fam = fg_families(n)
    P = p_sequence(n, 1)
    dec = all(P[k] == fam.f[k] - n * fam.g[k] for k in range(n + 1))
    pf = pg = True
    for k in range(n + 1):
        refl = P[k].reflect() * ((-1) ** k)
        pf &= fam.f[k] == (refl + P[k]) * Fraction(1, 2)
        pg &= fam.g[k] == (refl - P[k]) * Fraction(1, 2 * n)
    Q, q = parity_split(apotent_poly(n, 1), n)
    end = fam.f[n] == Q and -n * fam.g[n] == q
    return FGReport(dec, pf, pg, end)


# the functional ---------------------------------------------------------------


@dataclass(frozen=True)
class FunctionalSpec:
    n: int
    a: object
    q: Optional[RatPoly]  # None when a is not rational


def make_functional(n: int, a) -> FunctionalSpec:
    if is_exact(a):
        a = as_rational(a)
        _, q = parity_split(apotent_poly(n, a), n)
        return FunctionalSpec(n, a, q)
    return FunctionalSpec(n, to_mpc(a), None)


def functional_eval(spec: FunctionalSpec, f: RatPoly) -> Fraction:
    """``(1/(n-1)!) d^(n-1)[f q]/dz^(n-1)`` at ``z = a``, exactly."""
    if spec.q is None:
        raise TypeError("exact functional needs rational a")
    n = spec.n
    h = f * spec.q
    # Taylor coefficient n-1 of f*q at a
    return h.taylor_shift(spec.a).coeff(n - 1)


def functional_eval_alpha(spec: FunctionalSpec, f: RatPoly) -> Fraction:
    """``sum_k f^(k-1)(a) alpha_k / (k-1)!``."""
    t = f.taylor_shift(spec.a)
    return sum((t.coeff(k - 1) * alpha(spec.n, spec.a, k) for k in range(1, spec.n + 1)),
               Fraction(0))


def functional_contour(spec: FunctionalSpec, f, nodes: int = 4096,
                       precision_bits: int = 128):
    """``(i / 4 pi) * contour integral of f(z) ((z+a)/(z-a))^n`` over ``|z-a| = 2|a|``.

    Trapezoidal rule in ``nodes`` equispaced angles. The integrand is a
    trigonometric polynomial in the angle, so the rule is exact once
    ``nodes`` exceeds ``deg f + n``; only rounding remains.
    """
    return functional_contour_batch(spec, [f], nodes, precision_bits)[0]


def functional_contour_batch(spec: FunctionalSpec, fs, nodes: int = 4096,
                             precision_bits: int = 128) -> list:
    """:func:`functional_contour` for several polynomials sharing one set
    of nodes and weights."""
    if nodes < 64:
        raise ValueError("use at least 64 nodes")
    with working_precision(precision_bits):
        a = to_mpc(spec.a)
        r = 2 * abs(a)
        w1 = cis(2 * pi() / nodes)
        e = to_mpc(1)  # e^{i theta_j}
        zs, ws = [], []
        for _ in range(nodes):
            z = a + r * e
            zs.append(z)
            ws.append(((z + a) / (z - a)) ** spec.n * e)
            e *= w1
        out = []
        for f in fs:
            cs = [to_mpc(c) for c in (f.coeffs if isinstance(f, RatPoly) else f)]
            total = to_mpc(0)
            for z, w in zip(zs, ws):
                fz = to_mpc(0)
                for c in reversed(cs):
                    fz = fz * z + c
                total += fz * w
            # dz = i r e^{i theta} dtheta; (i/4pi) * i r * (2pi/N) = -r/(2N)
            out.append(-total * r / (2 * nodes))
        return out


# Gram matrix and norms ----------------------------------------------------------


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple  # G[i][j] = L(P_i P_j), 0 <= i, j <= n-1

    @property
    def size(self) -> int:
        return len(self.entries)

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(self.size))

    def is_diagonal(self) -> bool:
        return all(self.entries[i][j] == 0
                   for i in range(self.size) for j in range(self.size) if i != j)

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(self.size) for j in range(i))


def gram_matrix(n: int, a) -> GramMatrix:
    spec = make_functional(n, a)
    P = p_sequence(n, spec.a)
    rows = [[functional_eval(spec, P[i] * P[j]) for j in range(n)] for i in range(n)]
    return GramMatrix(tuple(tuple(r) for r in rows))


def c_norm_product(n: int, a, m: int) -> Fraction:
    """``b_0 * prod_{k=1}^m (-b_k)``."""
    a = as_rational(a)
    val = b_coefficient(n, 0, a)
    for k in range(1, m + 1):
        val *= -b_coefficient(n, k, a)
    return val


def c_norm_binomial(n: int, a, m: int) -> Fraction:
    """``(-1)^(m+1) a^(2m+1) binomial(n+m, 2m+1) (2m)!! / (2m-1)!!``."""
    a = as_rational(a)
    sign = -1 if m % 2 == 0 else 1
    return sign * a ** (2 * m + 1) * binomial(n + m, 2 * m + 1) * Fraction(
        double_factorial(2 * m), double_factorial(2 * m - 1))


def c_norm_gamma(n: int, a, m: int) -> Fraction:
    """Gamma-ratio form with ``sqrt(pi) Gamma(m+1)/Gamma(m+1/2) = 4^m (m!)^2/(2m)!``."""
    a = as_rational(a)
    sign = -1 if m % 2 == 0 else 1
    return sign * a ** (2 * m + 1) * binomial(n + m, 2 * m + 1) * Fraction(
        4 ** m * factorial(m) ** 2, factorial(2 * m))


def c_norm(n: int, a, m: int) -> Fraction:
    """``C_m = L(P_m^2)``; all three closed forms must agree."""
    if not 0 <= m <= n - 1:
        raise ValueError("need 0 <= m <= n-1")
    vals = {c_norm_product(n, a, m), c_norm_binomial(n, a, m), c_norm_gamma(n, a, m)}
    if len(vals) != 1:
        raise ArithmeticError(f"closed forms of C_{m} disagree: {vals}")
    return vals.pop()


def c_norm_asymptotic_ratio(n: int, a=1):
    """``C_{n-1} / ((-1)^n a^(2n-1) sqrt(pi n))`` as an mpfr; tends to 1."""
    with working_precision(128):
        c = to_mpfr(c_norm(n, a, n - 1))
        a = to_mpfr(as_rational(a))
        ref = (-1) ** n * a ** (2 * n - 1) * (pi() * n) ** 0.5
        return c / ref


# determinant oracle ----------------------------------------------------------------


def q_oracle(n: int, a, m: int) -> RatPoly:
    """Monic ``Q_m`` as the bordered moment determinant divided by ``D_m``.

    Cofactor expansion along the monomial row: the coefficient of ``z^j``
    is ``(-1)^(m+j)`` times the minor that drops column ``j``.
    """
    a = as_rational(a)
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    s = [moment(n, a, j) for j in range(2 * m)]
    top = [[s[i + j] for j in range(m + 1)] for i in range(m)]
    coeffs = []
    for j in range(m + 1):
        minor = [row[:j] + row[j + 1:] for row in top]
        coeffs.append((-1) ** (m + j) * bareiss_det(minor))
    D = coeffs[m]
    if D == 0:
        from .hankel import InconsistencyError

        raise InconsistencyError(f"D_{m} vanishes for n={n}, a={a}")
    return RatPoly([c / D for c in coeffs])


# inverse Fourier transform of the weight ---------------------------------------------


def laguerre1(d: int) -> RatPoly:
    """``L^(1)_d(x) = sum_{k=0}^d binomial(d+1, d-k) (-x)^k / k!``."""
    return RatPoly([Fraction((-1) ** k * binomial(d + 1, d - k), factorial(k))
                    for k in range(d + 1)])


def weight_ift(n: int, a, t, precision_bits: int = 256):
    """Closed form ``-a e^(-i a t) / (2 pi) * L^(1)_{n-1}(2 i a t)``."""
    with working_precision(precision_bits):
        a_c, t_c = to_mpc(a), to_mpc(t)
        i = to_mpc(1j)
        from gmpy2 import exp

        L = laguerre1(n - 1)
        x = 2 * i * a_c * t_c
        val = to_mpc(0)
        for c in reversed(L.coeffs):
            val = val * x + to_mpc(c)
        return -a_c * exp(-i * a_c * t_c) / (2 * pi()) * val


def weight_ift_series(n: int, a, t, terms: int = 200, precision_bits: int = 256):
    """Truncated moment series ``(1/2pi) sum_{m<terms} s_m (-i t)^m / m!``."""
    a = as_rational(a)
    with working_precision(precision_bits):
        x = to_mpc(-1j) * to_mpc(t)
        total = to_mpc(0)
        pw = to_mpc(1)
        for m in range(terms):
            total += to_mpc(Fraction(moment(n, a, m), factorial(m))) * pw
            pw *= x
        return total / (2 * pi())
