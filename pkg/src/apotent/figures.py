"""Datasets behind the zero-locus figures.

Each figure is a fixed list of jobs ``(family, k, n, a)``; a job yields
the zeros of ``P_k`` (family ``"P"``) or of the Bessel polynomial ``B_k``
(family ``"B"``, written with ``n = inf`` and ``a = 0``). Rows are
emitted in job order and, within a job, in canonical root order, so the
output does not depend on how many worker processes ran.

Exact multiple zeros (``k = n``) are written as the refined cluster
centre repeated by multiplicity.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bessel import bessel_sequence
from .mpnum import cis, default_precision, fmt_real, pi, to_mpc, working_precision
from .roots import ScaledPoly, aberth_roots, pk_coefficients, scaled_residual, _round_coeffs
from .schwarz import build_schwarz, charpoly_k

COLUMNS = ("k", "n", "a_re", "a_im", "root_re", "root_im", "residual")
ROOT_DIGITS = 30
RESIDUAL_DIGITS = 6
DEFAULT_PHI_STEPS = 8


@dataclass(frozen=True)
class FigureJob:
    family: str  # "P" or "B"
    k: int
    n: Optional[int] = None
    a: object = None  # Fraction, or ("phi", j, steps) for a = exp(i phi_j)


def _phi(j: int, steps: int):
    """``phi_j = -pi + (j / steps) * (pi / 2)``."""
    return -pi() + pi() * j / (2 * steps)


def resolve_a(a):
    """The eigenvalue at the current precision."""
    if isinstance(a, tuple) and a[0] == "phi":
        return cis(_phi(a[1], a[2]))
    return a


TITLES = {
    1: "zeros of B_50 and of P_50 with a = -1/n, n = 50..150",
    2: "zeros of B_75 and of P_75 with a = -1/n, n = 75..175",
    3: "zeros of P_k (a = -1/n) and B_k with n = k^2, k = 5..19",
    4: "zeros of P_k (a = -1/n) and B_k with n = k^2, k = 20..24",
    5: "zeros of P_70 with n = 71 and a = exp(i phi), phi from -pi to -pi/2",
    6: "zeros of P_k with a = -1, n = 50, k = 17..50",
    7: "zeros of P_k with a = -1, n = 10k, k = 10..60",
    8: "zeros of P_k with a = -1, n = k + 1, k = 50..150",
    9: "zeros of P_k with a = -1, n = k^2, k = 9..144",
    10: "zeros of P_k with a = -1, n = floor(k^(5/4)), k = 9..144",
    11: "zeros of P_k with a = -k/n, n = k^2, k = 9..144",
    12: "zeros of P_k with a = -k/n, n = floor(k^(5/4)), k = 9..144",
}

FIGURES = tuple(sorted(TITLES))


def _floor_pow54(k: int) -> int:
    """``floor(k^(5/4))`` in integer arithmetic."""
    m = math.isqrt(math.isqrt(k ** 5))
    while (m + 1) ** 4 <= k ** 5:
        m += 1
    while m ** 4 > k ** 5:
        m -= 1
    return m


def _thin(values: list, reduced: bool) -> list:
    return values[:2] if reduced else values


def figure_jobs(fig: int, reduced: bool = False,
                phi_steps: int = DEFAULT_PHI_STEPS) -> list:
    """Job list for figure ``fig``; ``reduced`` keeps the first two
    parameter values of each range (used for smoke tests)."""
    jobs = []
    if fig in (1, 2):
        k = 50 if fig == 1 else 75
        jobs.append(FigureJob("B", k))
        for n in _thin(list(range(k, k + 101)), reduced):
            jobs.append(FigureJob("P", k, n, Fraction(-1, n)))
    elif fig in (3, 4):
        ks = range(5, 20) if fig == 3 else range(20, 25)
        for k in _thin(list(ks), reduced):
            jobs.append(FigureJob("B", k))
            jobs.append(FigureJob("P", k, k * k, Fraction(-1, k * k)))
    elif fig == 5:
        if phi_steps < 1:
            raise ValueError("phi_steps must be at least 1")
        for j in _thin(list(range(phi_steps + 1)), reduced):
            jobs.append(FigureJob("P", 70, 71, ("phi", j, phi_steps)))
    elif fig == 6:
        for k in _thin(list(range(17, 51)), reduced):
            jobs.append(FigureJob("P", k, 50, Fraction(-1)))
    elif fig == 7:
        for k in _thin(list(range(10, 61)), reduced):
            jobs.append(FigureJob("P", k, 10 * k, Fraction(-1)))
    elif fig == 8:
        for k in _thin(list(range(50, 151)), reduced):
            jobs.append(FigureJob("P", k, k + 1, Fraction(-1)))
    elif fig in (9, 10, 11, 12):
        for k in _thin(list(range(9, 145)), reduced):
            n = k * k if fig in (9, 11) else _floor_pow54(k)
            a = Fraction(-1) if fig in (9, 10) else Fraction(-k, n)
            jobs.append(FigureJob("P", k, n, a))
    else:
        raise ValueError(f"unknown figure {fig}; choose from {FIGURES[0]}..{FIGURES[-1]}")
    return jobs


def _a_strings(a):
    if a is None:
        return fmt_real(0), fmt_real(0)
    z = to_mpc(resolve_a(a))
    return fmt_real(z.real, ROOT_DIGITS), fmt_real(z.imag, ROOT_DIGITS)


def run_job(job: FigureJob, precision_bits: Optional[int] = None) -> list:
    """Rows for one job as lists of strings (``k`` and ``n`` as ints/"inf")."""
    bits = default_precision() if precision_bits is None else precision_bits
    if job.family == "B":
        poly = bessel_sequence(job.k)[job.k]
    elif isinstance(job.a, tuple):
        unit = charpoly_k(build_schwarz(job.n, 1), job.k)
        poly = ScaledPoly(unit, lambda: resolve_a(job.a))
    else:
        poly = pk_coefficients(job.n, job.k, job.a)
    rs = aberth_roots(poly, bits, certify=True)
    rows = []
    with working_precision(rs.precision_bits):
        cs = _round_coeffs(poly)
        a_re, a_im = _a_strings(job.a)
        n_field = "inf" if job.family == "B" else job.n
        for cl in rs.clusters:
            res = fmt_real(scaled_residual(cs, cl.center), RESIDUAL_DIGITS)
            re = fmt_real(cl.center.real, ROOT_DIGITS)
            im = fmt_real(cl.center.imag, ROOT_DIGITS)
            for _ in range(cl.multiplicity):
                rows.append([job.k, n_field, a_re, a_im, re, im, res])
    return rows


def _run_job_star(args):
    return run_job(*args)


def figure_rows(fig: int, precision_bits: Optional[int] = None, jobs: int = 1,
                reduced: bool = False, phi_steps: int = DEFAULT_PHI_STEPS) -> list:
    """All rows for a figure; identical for every ``jobs`` value."""
    bits = default_precision() if precision_bits is None else int(precision_bits)
    work = figure_jobs(fig, reduced, phi_steps)
    if jobs <= 1:
        chunks = [run_job(j, bits) for j in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_job_star, [(j, bits) for j in work], chunksize=1))
    return [row for chunk in chunks for row in chunk]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    w.writerows(rows)
    return buf.getvalue()


def rows_to_json(rows, fig: int, precision_bits: int) -> str:
    """``k`` and ``n`` are integers (``n`` is null for Bessel rows); the
    other fields are decimal strings so no digits are lost."""
    records = []
    for row in rows:
        rec = dict(zip(COLUMNS, row))
        if rec["n"] == "inf":
            rec["n"] = None
        records.append(rec)
    doc = {
        "figure": fig,
        "title": TITLES[fig],
        "precision_bits": precision_bits,
        "columns": list(COLUMNS),
        "rows": records,
    }
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"
