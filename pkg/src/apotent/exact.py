"""Exact arithmetic substrate: rationals, dense rational polynomials,
combinatorial kernels, terminating 2F1 and fraction-free determinants.

Rationals are :class:`fractions.Fraction` throughout; they are always
reduced and carry a positive denominator, which is exactly the canonical
form the identity checks rely on.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ``int``, ``Fraction`` or a ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class RatPoly:
    """Dense univariate polynomial over the rationals.

    ``coeffs[i]`` is the coefficient of ``z**i``. Trailing zeros are
    stripped on construction, so two equal polynomials always have equal
    coefficient tuples. Instances are immutable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        c = [as_rational(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "_c", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    @classmethod
    def _raw(cls, coeffs: list) -> "RatPoly":
        # caller guarantees Fraction entries
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        object.__setattr__(p, "_c", tuple(coeffs))
        return p

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls._raw([])

    @classmethod
    def one(cls) -> "RatPoly":
        return cls._raw([Fraction(1)])

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1) -> "RatPoly":
        return cls._raw([Fraction(0)] * k + [as_rational(c)])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike]) -> "RatPoly":
        p = cls.one()
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self._c) - 1

    def coeff(self, i: int) -> Fraction:
        return self._c[i] if 0 <= i < len(self._c) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    # ring operations -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RatPoly):
            other = RatPoly([other])
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return RatPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly._raw([-v for v in self._c])

    def __sub__(self, other):
        if not isinstance(other, RatPoly):
            other = RatPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatPoly):
            a, b = self._c, other._c
            if not a or not b:
                return RatPoly.zero()
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return RatPoly._raw(out)
        s = as_rational(other)
        return RatPoly._raw([v * s for v in self._c])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = RatPoly.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == RatPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __call__(self, z):
        return poly_eval(self, z)

    def shift(self, k: int = 1) -> "RatPoly":
        """Multiply by ``z**k``."""
        if not self._c:
            return self
        return RatPoly._raw([Fraction(0)] * k + list(self._c))

    def derivative(self, order: int = 1) -> "RatPoly":
        c = self._c
        if order == 0:
            return self
        if order >= len(c):
            return RatPoly.zero()
        out = []
        for i in range(order, len(c)):
            # i! / (i - order)!
            f = math.perm(i, order)
            out.append(c[i] * f)
        return RatPoly._raw(out)

    def scale_arg(self, s: RationalLike) -> "RatPoly":
        """Return ``p(s*z)``."""
        s = as_rational(s)
        out, pw = [], Fraction(1)
        for v in self._c:
            out.append(v * pw)
            pw *= s
        return RatPoly._raw(out)

    def reflect(self) -> "RatPoly":
        """Return ``p(-z)``."""
        return RatPoly._raw([v if i % 2 == 0 else -v for i, v in enumerate(self._c)])

    def taylor_shift(self, a: RationalLike) -> "RatPoly":
        """Return ``p(z + a)``; coefficient j is ``p^(j)(a) / j!``."""
        a = as_rational(a)
        c = list(self._c)
        n = len(c)
        # synthetic division repeated n times
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return RatPoly._raw(c)

    def divmod(self, other: "RatPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self._c)
        dq = len(r) - len(other._c) + 1
        if dq <= 0:
            return RatPoly.zero(), self
        q = [Fraction(0)] * dq
        lead = other._c[-1]
        d = len(other._c) - 1
        for i in range(dq - 1, -1, -1):
            t = r[i + d] / lead
            q[i] = t
            if t:
                for j, v in enumerate(other._c):
                    r[i + j] -= t * v
        return RatPoly._raw(q), RatPoly._raw(r[:d])

    def __repr__(self):
        return f"RatPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            v = self._c[i]
            if v == 0:
                continue
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if i == 0:
                body = str(mag)
            else:
                mono = "z" if i == 1 else f"z^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def poly_arith(p: RatPoly, q, op: str) -> RatPoly:
    """Functional entry point for polynomial arithmetic.

    ``op`` is one of ``add``, ``sub``, ``mul``, ``shift`` or ``derivative``.
    For ``shift`` the second operand is the (integer) power of ``z`` to
    multiply by; for ``derivative`` it is the order (``None`` means 1).
    """
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "shift":
        return p.shift(1 if q is None else int(q))
    if op == "derivative":
        return p.derivative(1 if q is None else int(q))
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_eval(p, z):
    """Horner evaluation.

    ``p`` may be a :class:`RatPoly` or an ascending coefficient sequence.
    Exact for rational ``z``; for a gmpy2 ``mpc``/``mpfr`` argument the
    coefficients are rounded once into the current context precision.
    """
    c = p.coeffs if isinstance(p, RatPoly) else tuple(p)
    if isinstance(z, (int, Fraction)):
        acc = Fraction(0)
        for v in reversed(c):
            acc = acc * z + v
        return acc
    from .mpnum import to_mpc

    acc = to_mpc(0)
    for v in reversed(c):
        acc = acc * z + to_mpc(v)
    return acc


# combinatorial kernels ----------------------------------------------------


def binomial(n: int, k: int) -> int:
    """Binomial coefficient; zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def factorial(n: int) -> int:
    return math.factorial(n)


def double_factorial(n: int) -> int:
    """``n!!`` with ``0!! = (-1)!! = 1``."""
    if n < -1:
        raise ValueError("double factorial undefined below -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def pochhammer(x: RationalLike, k: int):
    """Rising factorial ``x (x+1) ... (x+k-1)``; ``(x)_0 = 1``.

    Returns an int for integer ``x`` and a Fraction otherwise.
    """
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    out = 1 if isinstance(x, int) else Fraction(1)
    for j in range(k):
        out *= x + j
    return out


def comb_kernels(kind: str, *args):
    table = {
        "binomial": binomial,
        "factorial": factorial,
        "double_factorial": double_factorial,
        "pochhammer": pochhammer,
    }
    try:
        fn = table[kind]
    except KeyError:
        raise ValueError(f"unknown kernel {kind!r}") from None
    return fn(*args)


def hypergeom_2f1_terminating(neg_k: int, b: RationalLike, c: RationalLike,
                              x: RationalLike) -> Fraction:
    """Exact ``2F1(-k, b; c; x)`` as the finite sum over ``j = 0..k``.

    Terms are updated left to right by their exact ratio. A nonpositive
    integer ``c`` whose pole falls inside the summation range raises
    ``ZeroDivisionError``.
    """
    if neg_k > 0 or int(neg_k) != neg_k:
        raise ValueError("first parameter must be a nonpositive integer")
    k = -int(neg_k)
    b, c, x = as_rational(b), as_rational(c), as_rational(x)
    for j in range(k):
        if c + j == 0:
            raise ZeroDivisionError(
                f"2F1 lower parameter c={c} hits a pole at term {j + 1} of {k}")
    term = Fraction(1)
    total = Fraction(1)
    for j in range(k):
        term = term * (j - k) * (b + j) / ((c + j) * (j + 1)) * x
        total += term
    return total


# determinants ---------------------------------------------------------------


def bareiss_det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting.

    Works for any exact entries (int, Fraction, GaussianRational). Each
    division by the previous pivot is exact.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) / prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def cofactor_det(matrix: Sequence[Sequence]):
    """Laplace expansion along the first row; for small sizes only."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        if matrix[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0))
             for j in range(m)] for i in range(n)]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def charpoly_dense(matrix: Sequence[Sequence]) -> RatPoly:
    """Characteristic polynomial ``det(zI - M)`` by Faddeev-LeVerrier.

    Exact over the rationals; independent of any tridiagonal structure.
    """
    n = len(matrix)
    A = [[as_rational(v) for v in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = mat_mul(A, M) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[n - k + 1]
        M = AM
        AMk = mat_mul(A, M)
        tr = sum((AMk[i][i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -tr / k
    return RatPoly(coeffs)


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @staticmethod
    def _lift(x):
        return x if isinstance(x, GaussianRational) else GaussianRational(x)

    def __add__(self, o):
        o = self._lift(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, o):
        o = self._lift(o)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return GaussianRational((self.re * o.re + self.im * o.im) / den,
                                (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __pow__(self, e: int):
        out = GaussianRational(1)
        base = self if e >= 0 else GaussianRational(1) / self
        for _ in range(abs(e)):
            out = out * base
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = GaussianRational(o)
        if not isinstance(o, GaussianRational):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)
