"""Multiprecision complex scalars (``BigComplex``) backed by gmpy2.

A BigComplex is a ``gmpy2.mpc`` whose real and imaginary parts share one
binary precision. Precision is scoped with :func:`working_precision`;
nothing here mutates the global gmpy2 context permanently.
"""

from __future__ import annotations

import contextlib
import os
from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr

BigComplex = type(mpc(0))
BigFloat = type(mpfr(0))

MIN_PRECISION = 53
DEFAULT_PRECISION = 256
PRECISION_ENV = "APOTENT_PRECISION"


def default_precision() -> int:
    """Default working precision in bits (overridable via ``APOTENT_PRECISION``)."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    bits = int(raw)
    if bits < MIN_PRECISION:
        raise ValueError(f"{PRECISION_ENV}={bits} is below {MIN_PRECISION} bits")
    return bits


@contextlib.contextmanager
def working_precision(bits: int | None = None):
    """Run a block with gmpy2 arithmetic at ``bits`` of binary precision."""
    bits = default_precision() if bits is None else int(bits)
    if bits < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits, got {bits}")
    ctx = gmpy2.context(gmpy2.get_context(), precision=bits,
                        real_prec=bits, imag_prec=bits)
    with ctx:
        yield ctx


def current_precision() -> int:
    return gmpy2.get_context().precision


def to_mpfr(x) -> BigFloat:
    if isinstance(x, Fraction):
        return mpfr(gmpy2.mpq(x.numerator, x.denominator))
    return mpfr(x)


def to_mpc(x) -> BigComplex:
    """Round ``x`` once into the current context precision."""
    if isinstance(x, BigComplex):
        return mpc(x)
    if isinstance(x, Fraction):
        return mpc(to_mpfr(x), mpfr(0))
    if isinstance(x, complex):
        return mpc(mpfr(x.real), mpfr(x.imag))
    if hasattr(x, "re") and hasattr(x, "im"):  # GaussianRational
        return mpc(to_mpfr(x.re), to_mpfr(x.im))
    return mpc(mpfr(x), mpfr(0))


def make_complex(re, im) -> BigComplex:
    return mpc(to_mpfr(re), to_mpfr(im))


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def pi() -> BigFloat:
    return gmpy2.const_pi()


def cis(theta) -> BigComplex:
    """``exp(i*theta)`` for real ``theta``."""
    t = to_mpfr(theta)
    return mpc(gmpy2.cos(t), gmpy2.sin(t))


def parse_scalar(text: str):
    """Parse a scalar from its command-line form.

    ``"p/q"`` or an integer gives an exact Fraction; ``"re,im"`` gives a
    BigComplex rounded at the current precision (decimal strings allowed).
    """
    text = text.strip()
    if "," in text:
        re_s, im_s = (part.strip() for part in text.split(",", 1))
        if not re_s or not im_s:
            raise ValueError(f"malformed complex scalar {text!r}; expected 're,im'")
        return mpc(mpfr(re_s), mpfr(im_s))
    try:
        return Fraction(text)
    except ValueError:
        raise ValueError(f"malformed scalar {text!r}; expected 'p/q' or 're,im'") from None


def fmt_real(x, digits: int = 30) -> str:
    """Deterministic scientific-notation string for an mpfr value."""
    x = mpfr(x)
    if gmpy2.is_zero(x):
        return "0.0e+00" if not gmpy2.is_signed(x) else "-0.0e+00"
    if gmpy2.is_nan(x) or gmpy2.is_infinite(x):
        return str(x)
    mant, exp, _ = x.digits(10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    e = exp - 1
    body = mant[0] + "." + (mant[1:] or "0")
    return f"{sign}{body}e{'+' if e >= 0 else '-'}{abs(e):02d}"


def fmt_scalar(a, digits: int = 30) -> tuple[str, str]:
    """(real, imag) strings; exact rationals print as ``p/q``."""
    if is_exact(a):
        return str(Fraction(a)), "0"
    z = to_mpc(a)
    return fmt_real(z.real, digits), fmt_real(z.imag, digits)
