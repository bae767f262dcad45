"""Schwarz matrices with one prescribed eigenvalue and their orthogonal polynomials.

Exact identities run over :class:`fractions.Fraction`; complex eigenvalues
and root finding use gmpy2 multiprecision scalars.
"""

from .exact import RatPoly, Rational, binomial, factorial, pochhammer
from .mpnum import BigComplex, working_precision
from .schwarz import (
    SchwarzSpec,
    build_schwarz,
    build_scaled,
    charpoly_sequence,
    eigvector_chain,
    parity_split,
    verify_apotent,
)
from .moments import alpha_vector, cf_phi, moment, moments_upto, pm_value, quad_phi
from .hankel import hankel_closed_form, hankel_det_alphas, hankel_det_moments, hankel_report
from .orthopoly import c_norm, functional_eval, gram_matrix, make_functional, p_sequence, q_oracle
from .bessel import bessel_sequence, compare_to_bessel
from .roots import RootSet, aberth_roots, halfplane_verdict, hessenberg_qr_roots, interlacing_verdict

__version__ = "0.1.0"

__all__ = [
    "BigComplex",
    "RatPoly",
    "Rational",
    "RootSet",
    "SchwarzSpec",
    "aberth_roots",
    "alpha_vector",
    "bessel_sequence",
    "binomial",
    "build_scaled",
    "build_schwarz",
    "c_norm",
    "cf_phi",
    "charpoly_sequence",
    "compare_to_bessel",
    "eigvector_chain",
    "factorial",
    "functional_eval",
    "gram_matrix",
    "halfplane_verdict",
    "hankel_closed_form",
    "hankel_det_alphas",
    "hankel_det_moments",
    "hankel_report",
    "hessenberg_qr_roots",
    "interlacing_verdict",
    "make_functional",
    "moment",
    "moments_upto",
    "p_sequence",
    "parity_split",
    "pm_value",
    "pochhammer",
    "q_oracle",
    "quad_phi",
    "verify_apotent",
    "working_precision",
]
