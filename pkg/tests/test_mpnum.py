from fractions import Fraction

import gmpy2
import pytest

from apotent.mpnum import (
    PRECISION_ENV,
    current_precision,
    default_precision,
    fmt_real,
    fmt_scalar,
    parse_scalar,
    working_precision,
)


def test_env_precision(monkeypatch):
    monkeypatch.delenv(PRECISION_ENV, raising=False)
    assert default_precision() == 256
    monkeypatch.setenv(PRECISION_ENV, "512")
    with working_precision():
        assert current_precision() == 512
    monkeypatch.setenv(PRECISION_ENV, "20")
    with pytest.raises(ValueError):
        default_precision()


def test_parse_scalar():
    assert parse_scalar("-2/7") == Fraction(-2, 7)
    assert parse_scalar("3") == 3
    with working_precision(128):
        z = parse_scalar("0.5, -1")
        assert z.real == 0.5 and z.imag == -1
    for bad in ("x", "1,", ",2"):
        with pytest.raises(ValueError):
            parse_scalar(bad)


def test_formatting():
    with working_precision(128):
        assert fmt_real(gmpy2.mpfr(-1234.5), 6) == "-1.23450e+03"
        assert fmt_real(gmpy2.mpfr(0)) == "0.0e+00"
        assert fmt_real(gmpy2.mpfr("1e-5"), 3) == "1.00e-05"
    assert fmt_scalar(Fraction(1, 3)) == ("1/3", "0")
