"""Schwarz matrices with a single prescribed eigenvalue.

The matrix of order ``n`` has ``-b_0`` in the top-left corner, ones on the
superdiagonal and ``-b_1, ..., -b_{n-1}`` on the subdiagonal. It is stored
as the pair ``(n, a)`` plus the vector ``b``; :func:`dense_matrix` exists
only for small-order elimination checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import RatPoly, as_rational
from .mpnum import BigComplex, is_exact, to_mpc, working_precision


@dataclass(frozen=True)
class SchwarzSpec:
    n: int
    a: object
    b: tuple
    precision_bits: Optional[int] = None  # set for BigComplex ``a`` only

    @property
    def exact(self) -> bool:
        return is_exact(self.a)


@dataclass(frozen=True)
class PolySequence:
    """Characteristic polynomials ``P_0 .. P_n`` of the leading submatrices.

    Entries are :class:`RatPoly` for rational ``a``; for complex ``a`` they
    are ascending tuples of BigComplex coefficients.
    """

    entries: tuple
    n: int
    a: object

    def __getitem__(self, k):
        return self.entries[k]

    def __len__(self):
        return len(self.entries)

    def coeffs(self, k: int) -> tuple:
        e = self.entries[k]
        return e.coeffs if isinstance(e, RatPoly) else e


def _normalize_a(a):
    if isinstance(a, BigComplex):
        return a
    if isinstance(a, complex):
        return to_mpc(a)
    return as_rational(a)


def b_coefficient(n: int, m: int, a):
    """``b_0 = -a n`` and ``b_m = a^2 (n^2 - m^2) / (4 m^2 - 1)`` for ``m >= 1``."""
    if m == 0:
        return -a * n
    return a * a * Fraction(n * n - m * m, 4 * m * m - 1)


def build_schwarz(n: int, a, precision_bits: Optional[int] = None) -> SchwarzSpec:
    """Schwarz matrix of order ``n`` whose only eigenvalue is ``a``.

    Exact when ``a`` is rational. A complex ``a`` is held as a gmpy2
    ``mpc`` and the entries are rounded at ``precision_bits``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"matrix order must be a positive integer, got {n!r}")
    n = int(n)
    a = _normalize_a(a)
    if a == 0:
        raise ValueError("the eigenvalue a must be nonzero")
    if is_exact(a):
        b = tuple(b_coefficient(n, m, a) for m in range(n))
        return SchwarzSpec(n, a, b)
    with working_precision(precision_bits) as ctx:
        a = to_mpc(a)
        b = tuple(b_coefficient(n, m, a) for m in range(n))
        return SchwarzSpec(n, a, b, ctx.precision)


def dense_matrix(spec: SchwarzSpec, k: Optional[int] = None) -> list:
    """Leading ``k x k`` block of the Schwarz matrix as nested lists."""
    k = spec.n if k is None else k
    zero = Fraction(0) if spec.exact else to_mpc(0)
    one = Fraction(1) if spec.exact else to_mpc(1)
    J = [[zero] * k for _ in range(k)]
    J[0][0] = -spec.b[0]
    for i in range(k - 1):
        J[i][i + 1] = one
        J[i + 1][i] = -spec.b[i + 1]
    return J


def build_scaled(n: int, a) -> list:
    """Diagonally similar form with entries proportional to ``a``.

    Diagonal ``(a n, 0, ..., 0)``, superdiagonal ``a (n-k)/(2k-1)`` and
    subdiagonal ``-a (n+k)/(2k+1)`` for ``k = 1 .. n-1``.
    """
    spec = build_schwarz(n, a)  # validation only
    a = spec.a
    zero = a * 0
    M = [[zero] * n for _ in range(n)]
    M[0][0] = a * n
    for k in range(1, n):
        M[k - 1][k] = a * Fraction(n - k, 2 * k - 1)
        M[k][k - 1] = -a * Fraction(n + k, 2 * k + 1)
    return M


def _recurrence(b: Sequence, n: int) -> list:
    """P_0 = 1, P_1 = z + b_0, P_{k+1} = z P_k + b_k P_{k-1}."""
    seq = [RatPoly.one(), RatPoly([b[0], 1])]
    for k in range(1, n):
        seq.append(seq[k].shift(1) + b[k] * seq[k - 1])
    return seq[: n + 1]


def _complex_recurrence(b: Sequence, n: int) -> list:
    one = to_mpc(1)
    seq = [(one,), (to_mpc(b[0]), one)]
    for k in range(1, n):
        prev, cur = seq[k - 1], seq[k]
        nxt = [to_mpc(0)] + list(cur)
        for i, v in enumerate(prev):
            nxt[i] = nxt[i] + b[k] * v
        seq.append(tuple(nxt))
    return seq[: n + 1]


def scale_coeffs(p: RatPoly, k: int, a) -> tuple:
    """Coefficients of ``P_k`` at eigenvalue ``a`` from those at ``a = 1``.

    ``coeff_i(P_k; a) = a^(k-i) coeff_i(P_k; 1)``.
    """
    c = p.coeffs
    if is_exact(a):
        return tuple(v * a ** (k - i) for i, v in enumerate(c))
    a = to_mpc(a)
    powers = [to_mpc(1)]
    for _ in range(k):
        powers.append(powers[-1] * a)
    return tuple(to_mpc(v) * powers[k - i] for i, v in enumerate(c))


def charpoly_sequence(spec: SchwarzSpec, method: str = "auto") -> PolySequence:
    """``P_0 .. P_n`` for the Schwarz matrix described by ``spec``.

    Rational ``a``: exact three-term recurrence over ``spec.b``.
    Complex ``a``: by default the exact ``a = 1`` sequence is rescaled
    (``method="scaled"``) so rounding happens once per coefficient;
    ``method="direct"`` runs the recurrence in BigComplex arithmetic.
    """
    n = spec.n
    if spec.exact:
        return PolySequence(tuple(_recurrence(spec.b, n)), n, spec.a)
    if method == "auto":
        method = "scaled"
    with working_precision(spec.precision_bits):
        if method == "direct":
            entries = _complex_recurrence(spec.b, n)
        elif method == "scaled":
            unit = _recurrence(build_schwarz(n, 1).b, n)
            entries = [scale_coeffs(p, k, spec.a) for k, p in enumerate(unit)]
        else:
            raise ValueError(f"unknown method {method!r}")
    return PolySequence(tuple(entries), n, spec.a)


def charpoly_k(spec: SchwarzSpec, k: int):
    """``P_k`` alone: the recurrence stops at ``k`` instead of ``n``.

    Exact :class:`RatPoly` for rational ``a``; for complex ``a`` the
    exact ``a = 1`` polynomial is rescaled at the spec's precision.
    """
    if not 0 <= k <= spec.n:
        raise ValueError("need 0 <= k <= n")
    if spec.exact:
        return _recurrence(spec.b[: max(k, 1)], k)[k] if k else RatPoly.one()
    unit = charpoly_k(build_schwarz(spec.n, 1), k)
    with working_precision(spec.precision_bits):
        return scale_coeffs(unit, k, spec.a)


def apotent_poly(n: int, a) -> RatPoly:
    """``(z - a)^n`` expanded exactly."""
    return RatPoly([-as_rational(a), 1]) ** n


@dataclass(frozen=True)
class ApotencyResult:
    ok: bool
    index: Optional[int] = None  # first differing coefficient
    got: object = None
    expected: object = None
    max_error: object = None

    def __bool__(self):
        return self.ok


def verify_apotent(spec: SchwarzSpec, tol=None) -> ApotencyResult:
    """Check that ``P_n`` built from ``spec.b`` equals ``(z - a)^n``.

    Exact comparison for rational ``a``. For complex ``a`` the recurrence
    runs directly on ``spec.b`` and each coefficient must match within
    ``tol`` relative to ``binomial(n, i) |a|^(n-i)``.
    """
    n = spec.n
    if spec.exact:
        got = _recurrence(spec.b, n)[n]
        want = apotent_poly(n, spec.a)
        for i in range(n + 1):
            if got.coeff(i) != want.coeff(i):
                return ApotencyResult(False, i, got.coeff(i), want.coeff(i))
        return ApotencyResult(True, max_error=Fraction(0))
    from .exact import binomial

    with working_precision(spec.precision_bits) as ctx:
        if tol is None:
            tol = to_mpc(2) ** (32 - ctx.precision)
            tol = tol.real
        got = _complex_recurrence(spec.b, n)[n]
        a = to_mpc(spec.a)
        worst = to_mpc(0).real
        for i in range(n + 1):
            want = binomial(n, i) * (-a) ** (n - i)
            scale = binomial(n, i) * abs(a) ** (n - i)
            err = abs(got[i] - want) / scale
            if err > worst:
                worst = err
            if err > tol:
                return ApotencyResult(False, i, got[i], want, err)
        return ApotencyResult(True, max_error=worst)


def parity_split(p: RatPoly, n: int):
    """Split ``p = Q + q`` with ``q = (p(z) - (-1)^n p(-z)) / 2``.

    For ``p = (z - a)^n``, ``q`` is the part of parity opposite to ``n``
    and ``Q`` the part with the parity of ``n``.
    """
    if p.degree != n:
        raise ValueError(f"expected a degree-{n} polynomial, got degree {p.degree}")
    refl = p.reflect()
    q = (p - refl) * Fraction(1, 2) if n % 2 == 0 else (p + refl) * Fraction(1, 2)
    return p - q, q


def q_explicit(n: int, a) -> RatPoly:
    """``-sum_j binomial(n, 2j+1) a^(2j+1) z^(n-2j-1)``."""
    from .exact import binomial

    a = as_rational(a)
    c = [Fraction(0)] * n
    for j in range((n - 1) // 2 + 1):
        c[n - 2 * j - 1] = -binomial(n, 2 * j + 1) * a ** (2 * j + 1)
    return RatPoly(c)


@dataclass(frozen=True)
class EigenChainReport:
    vectors: tuple  # u_0 .. u_{n-1}
    polynomial_identity: bool
    chain: bool
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.polynomial_identity and self.chain


def _matvec(J, v):
    return [sum((row[j] * v[j] for j in range(len(v)) if row[j]), Fraction(0)) for row in J]


def eigvector_chain(spec: SchwarzSpec) -> EigenChainReport:
    """Jordan chain of the Schwarz matrix at its eigenvalue (rational ``a``).

    With ``u(z) = (P_0(z), ..., P_{n-1}(z))`` checks the polynomial identity
    ``J u(z) = z u(z) - P_n(z) e_n`` and then, for ``u_k = u^(k)(a)``,
    ``(J - aI) u_0 = 0`` and ``(J - aI) u_k = k u_{k-1}``.
    """
    if not spec.exact:
        raise TypeError("eigenvector chain check is exact and needs rational a")
    n, a = spec.n, spec.a
    P = _recurrence(spec.b, n)
    J = dense_matrix(spec)
    failures = []

    # polynomial-vector identity, row by row
    u = P[:n]
    poly_ok = True
    for i in range(n):
        lhs = RatPoly.zero()
        for j in range(max(0, i - 1), min(n, i + 2)):
            if J[i][j]:
                lhs = lhs + J[i][j] * u[j]
        rhs = u[i].shift(1) - (P[n] if i == n - 1 else RatPoly.zero())
        if lhs != rhs:
            poly_ok = False
            failures.append(("polynomial", i))

    # u_k[j] = P_j^(k)(a) = k! * (Taylor coefficient k of P_j at a)
    taylor = [p.taylor_shift(a) for p in u]
    vectors = []
    fact = 1
    for k in range(n):
        if k:
            fact *= k
        vectors.append(tuple(t.coeff(k) * fact for t in taylor))

    chain_ok = True
    for k, uk in enumerate(vectors):
        Ju = _matvec(J, uk)
        lhs = [Ju[i] - a * uk[i] for i in range(n)]
        rhs = [k * vectors[k - 1][i] for i in range(n)] if k else [Fraction(0)] * n
        if lhs != rhs:
            chain_ok = False
            failures.append(("chain", k))
    return EigenChainReport(tuple(vectors), poly_ok, chain_ok, tuple(failures))
