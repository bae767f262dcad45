"""Command-line front end.

Every verification subcommand exits with status 1 when a check fails and
2 on a usage error. Figure datasets go to ``--output`` (or stdout).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import figures
from .bessel import compare_to_bessel
from .hankel import hankel_report
from .moments import alpha_from_taylor, alpha_vector, moments_upto, verify_moment_recurrence
from .mpnum import (
    MIN_PRECISION,
    PRECISION_ENV,
    default_precision,
    fmt_real,
    fmt_scalar,
    is_exact,
    parse_scalar,
    to_mpc,
    working_precision,
)
from .orthopoly import c_norm, gram_matrix
from .roots import (
    aberth_roots,
    cluster_distance,
    halfplane_verdict,
    hessenberg_qr_roots,
    pk_coefficients,
)
from .schwarz import build_scaled, build_schwarz, dense_matrix, verify_apotent


class UsageError(Exception):
    pass


def _q(x) -> str:
    """Exact scalars as ``p/q`` strings, BigComplex as ``re,im``."""
    if is_exact(x):
        return str(Fraction(x))
    re, im = fmt_scalar(x)
    return f"{re},{im}"


def _emit(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def _table_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _poly_text(a, n) -> str:
    """``(z+2/7)^64`` style rendering of ``(z - a)^n``."""
    if is_exact(a):
        a = Fraction(a)
        inner = f"z-{a}" if a > 0 else f"z+{-a}"
    else:
        inner = f"z-({_q(a)})"
    return f"({inner})^{n}"


# subcommands ------------------------------------------------------------------


def cmd_matrix(args, fmt):
    spec = build_schwarz(args.n, args.a, args.precision)
    if args.scaled:
        M = build_scaled(args.n, args.a) if spec.exact else None
        if M is None:
            raise UsageError("--scaled needs a rational a")
    else:
        M = dense_matrix(spec) if args.dense else None
    if fmt == "json":
        doc = {"n": spec.n, "a": _q(spec.a), "b": [_q(v) for v in spec.b]}
        if M is not None:
            doc["matrix"] = [[_q(v) for v in row] for row in M]
        return _dump_json(doc), 0
    if fmt == "csv":
        rows = [[m, _q(v)] for m, v in enumerate(spec.b)]
        return _table_csv(["m", "b_m"], rows), 0
    lines = [f"b_{m} = {_q(v)}" for m, v in enumerate(spec.b)]
    if M is not None:
        lines.append("")
        lines.extend(" ".join(_q(v) for v in row) for row in M)
    return "\n".join(lines) + "\n", 0


def cmd_charpoly(args, fmt):
    spec = build_schwarz(args.n, args.a, args.precision)
    res = verify_apotent(spec)
    how = "exact" if spec.exact else f"within {fmt_real(res.max_error, 6)} relative"
    status = 0 if res.ok else 1
    if fmt == "json":
        doc = {"n": spec.n, "a": _q(spec.a), "apotent": res.ok, "exact": spec.exact}
        if not res.ok:
            doc["witness"] = {"index": res.index, "got": _q(res.got), "expected": _q(res.expected)}
        elif not spec.exact:
            doc["max_relative_error"] = fmt_real(res.max_error, 6)
        return _dump_json(doc), status
    if res.ok:
        return f"P_{spec.n} = {_poly_text(spec.a, spec.n)} {how}\n", 0
    return (f"P_{spec.n} != {_poly_text(spec.a, spec.n)}: coefficient of z^{res.index} "
            f"is {_q(res.got)}, expected {_q(res.expected)}\n"), 1


def _need_rational(a):
    if not is_exact(a):
        raise UsageError("this subcommand works in exact arithmetic and needs a rational a")


def cmd_moments(args, fmt):
    _need_rational(args.a)
    seq = moments_upto(args.n, args.a, args.m)
    ok_rec = verify_moment_recurrence(seq) if args.m >= 2 else True
    av = alpha_vector(args.n, args.a)
    ok_alpha = av.entries == alpha_from_taylor(args.n, args.a).entries
    status = 0 if ok_rec and ok_alpha else 1
    if fmt == "json":
        doc = {"n": args.n, "a": _q(args.a), "moments": [_q(s) for s in seq.entries],
               "alpha": [_q(x) for x in av.entries], "recurrence_ok": ok_rec,
               "alpha_taylor_ok": ok_alpha}
        return _dump_json(doc), status
    if fmt == "csv":
        return _table_csv(["m", "s_m"], [[m, _q(s)] for m, s in enumerate(seq.entries)]), status
    lines = [f"s_{m} = {_q(s)}" for m, s in enumerate(seq.entries)]
    lines.append(f"moment recurrence: {'ok' if ok_rec else 'FAILED'}")
    lines.append(f"alpha vs Taylor coefficients: {'ok' if ok_alpha else 'FAILED'}")
    return "\n".join(lines) + "\n", status


def cmd_hankel(args, fmt):
    _need_rational(args.a)
    rep = hankel_report(args.n, args.a, args.m_max)
    status = 0 if rep.ok else 1
    ms = range(1, rep.m_max + 1)
    if fmt == "json":
        doc = {
            "n": rep.n, "a": _q(rep.a), "m_max": rep.m_max,
            "D": [{"m": m, "moments": _q(rep.brute[m - 1]), "alphas": _q(rep.alphas[m - 1]),
                   "closed_form": _q(rep.closed[m - 1])} for m in ms],
            "all_equal": rep.all_equal,
            "vanishing_beyond_n": rep.vanishing_ok,
            "shifted_ok": rep.shifted_ok,
            "b": {str(m): _q(v) for m, v in rep.b.items()},
            "c": {str(m): _q(v) for m, v in rep.c.items()},
            "b_ok": rep.b_ok, "c_ok": rep.c_ok,
        }
        return _dump_json(doc), status
    if fmt == "csv":
        rows = [[m, _q(rep.brute[m - 1]), _q(rep.alphas[m - 1]), _q(rep.closed[m - 1])] for m in ms]
        return _table_csv(["m", "moments", "alphas", "closed_form"], rows), status
    lines = [f"D_{m} = {_q(rep.brute[m - 1])}" for m in ms]
    lines.append(f"three routes agree: {rep.all_equal}; recovered b, c: {rep.b_ok and rep.c_ok}")
    return "\n".join(lines) + "\n", status


def cmd_ortho(args, fmt):
    _need_rational(args.a)
    G = gram_matrix(args.n, args.a)
    diag = G.diagonal()
    norms = [c_norm(args.n, args.a, m) for m in range(args.n)]
    ok = G.is_diagonal() and list(diag) == norms
    status = 0 if ok else 1
    if fmt == "json":
        doc = {"n": args.n, "a": _q(args.a), "diagonal": G.is_diagonal(),
               "C": [_q(c) for c in diag], "norms_match": list(diag) == norms}
        return _dump_json(doc), status
    if fmt == "csv":
        return _table_csv(["m", "C_m"], [[m, _q(c)] for m, c in enumerate(diag)]), status
    lines = [f"C_{m} = {_q(c)}" for m, c in enumerate(diag)]
    lines.append(f"Gram matrix diagonal: {G.is_diagonal()}; closed forms match: {list(diag) == norms}")
    return "\n".join(lines) + "\n", status


def _rootset_rows(rs, a, n, k):
    with working_precision(rs.precision_bits):
        av = to_mpc(a)
        a_re, a_im = fmt_real(av.real, figures.ROOT_DIGITS), fmt_real(av.imag, figures.ROOT_DIGITS)
        return [[k, n, a_re, a_im, fmt_real(z.real, figures.ROOT_DIGITS),
                 fmt_real(z.imag, figures.ROOT_DIGITS), fmt_real(r, figures.RESIDUAL_DIGITS)]
                for z, r in zip(rs.roots, rs.residuals)]


def cmd_roots(args, fmt):
    bits = args.precision
    if not 1 <= args.k <= args.n:
        raise UsageError("need 1 <= k <= n")
    if args.solver == "aberth":
        rs = aberth_roots(pk_coefficients(args.n, args.k, args.a), bits, certify=args.certify,
                          n=args.n, k=args.k, a=args.a)
        other = None
    else:
        rs = hessenberg_qr_roots(build_schwarz(args.n, args.a, bits), args.k, bits)
        other = None
        if args.solver == "both":
            other = rs
            rs = aberth_roots(pk_coefficients(args.n, args.k, args.a), bits,
                              n=args.n, k=args.k, a=args.a)
    verdict = halfplane_verdict(rs, args.a)
    status = 0 if verdict.ok else 1
    if other is not None:
        gap = cluster_distance(rs, other)
        if not gap < args.agree:
            status = 1
        sys.stderr.write(f"solver gap: {fmt_real(gap, 6)}\n")
    rows = _rootset_rows(rs, args.a, args.n, args.k)
    if fmt == "json":
        doc = {"n": args.n, "k": args.k, "a": _q(args.a), "solver": rs.solver,
               "precision_bits": rs.precision_bits, "halfplane": verdict.ok,
               "columns": list(figures.COLUMNS),
               "rows": [dict(zip(figures.COLUMNS, r)) for r in rows]}
        return _dump_json(doc), status
    return figures.rows_to_csv(rows), status


def cmd_bessel(args, fmt):
    rows = []
    for k in args.k:
        for n in args.n:
            if k <= n:
                d = compare_to_bessel(k, n)
                rows.append([k, n, str(d), fmt_real(d * n * n, 12)])
    if fmt == "json":
        doc = {"columns": ["k", "n", "distance", "distance_times_n2"],
               "rows": [dict(zip(["k", "n", "distance", "distance_times_n2"], r)) for r in rows]}
        return _dump_json(doc), 0
    if fmt == "csv":
        return _table_csv(["k", "n", "distance", "distance_times_n2"], rows), 0
    lines = [f"k={k} n={n} distance={d} (x n^2 = {s})" for k, n, d, s in rows]
    return "\n".join(lines) + "\n", 0


def cmd_figure(args, fmt):
    rows = figures.figure_rows(args.number, args.precision, args.jobs, args.reduced,
                               args.phi_steps)
    if fmt == "json":
        return figures.rows_to_json(rows, args.number, args.precision), 0
    return figures.rows_to_csv(rows), 0


COMMANDS = {
    "matrix": cmd_matrix,
    "charpoly": cmd_charpoly,
    "moments": cmd_moments,
    "hankel": cmd_hankel,
    "ortho": cmd_ortho,
    "roots": cmd_roots,
    "bessel": cmd_bessel,
    "figure": cmd_figure,
}


# parsing ------------------------------------------------------------------------


def _precision(text):
    bits = int(text)
    if bits < MIN_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be at least {MIN_PRECISION} bits")
    return bits


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _int_list(text):
    """``5``, ``2,3,4`` or ``2:6`` (inclusive range)."""
    if ":" in text:
        lo, hi = text.split(":", 1)
        vals = list(range(int(lo), int(hi) + 1))
    else:
        vals = [int(t) for t in text.split(",") if t]
    if not vals:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_precision, default=None,
                        help=f"working precision in bits (default ${PRECISION_ENV} or 256)")
    common.add_argument("--format", choices=("text", "csv", "json"), default=None)
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")

    p = argparse.ArgumentParser(prog="apotent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def na(sp, need_a=True):
        sp.add_argument("--n", type=_positive, required=True, help="matrix order")
        if need_a:
            sp.add_argument("--a", required=True,
                            help="eigenvalue: rational 'p/q' or complex 're,im'")

    sp = sub.add_parser("matrix", parents=[common], help="print b_0..b_{n-1} and optionally J_n")
    na(sp)
    sp.add_argument("--dense", action="store_true", help="also print the dense matrix")
    sp.add_argument("--scaled", action="store_true", help="print the a-proportional similar form")

    sp = sub.add_parser("charpoly", parents=[common], help="check P_n = (z-a)^n")
    na(sp)

    sp = sub.add_parser("moments", parents=[common], help="moments s_0..s_M and checks")
    na(sp)
    sp.add_argument("--m", type=int, default=10, help="largest moment index M")

    sp = sub.add_parser("hankel", parents=[common], help="Hankel determinant report")
    na(sp)
    sp.add_argument("--m-max", type=_positive, default=None)

    sp = sub.add_parser("ortho", parents=[common], help="Gram matrix and norms C_m")
    na(sp)

    sp = sub.add_parser("roots", parents=[common], help="zeros of P_k")
    na(sp)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--solver", choices=("aberth", "qr", "both"), default="aberth")
    sp.add_argument("--certify", action="store_true",
                    help="raise precision until the zeros are separated")
    sp.add_argument("--agree", type=float, default=1e-15,
                    help="allowed gap between solvers with --solver both")

    sp = sub.add_parser("bessel", parents=[common], help="distance between P_k(a=-1/n) and B_k")
    sp.add_argument("--k", type=_int_list, required=True, help="e.g. 2:6")
    sp.add_argument("--n", type=_int_list, required=True, help="e.g. 100,200,400")

    sp = sub.add_parser("figure", parents=[common], help="dataset behind a zero-locus figure")
    sp.add_argument("number", type=int, choices=figures.FIGURES)
    sp.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    sp.add_argument("--reduced", action="store_true",
                    help="first two parameter values of each range only")
    sp.add_argument("--phi-steps", type=_positive, default=figures.DEFAULT_PHI_STEPS,
                    help="intervals in the angle sweep of figure 5")
    return p


def _join_scalar_flags(argv):
    """Let ``--a -2/7`` through: argparse would read ``-2/7`` as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--a":
            val = next(it, None)
            out.append(tok if val is None else f"--a={val}")
        else:
            out.append(tok)
    return out


DEFAULT_FORMAT = {"roots": "csv", "figure": "csv", "hankel": "json"}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_join_scalar_flags(argv))
    if args.precision is None:
        try:
            args.precision = default_precision()
        except ValueError as exc:
            parser.error(str(exc))
    else:
        os.environ[PRECISION_ENV] = str(args.precision)  # inherited by workers
    fmt = args.format or DEFAULT_FORMAT.get(args.command, "text")
    if args.command == "figure" and fmt == "text":
        fmt = "csv"
    try:
        with working_precision(args.precision):
            if hasattr(args, "a"):
                args.a = parse_scalar(args.a)
                if args.a == 0:
                    raise UsageError("a must be nonzero")
            text, status = COMMANDS[args.command](args, fmt)
    except UsageError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        parser.error(str(exc))
    _emit(text, args.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
