"""Spectral classification of integer dilation systems via Dirichlet series and their Bohr lift."""

__version__ = "0.1.0"

from .bivariate import BivariateDirichletSeries, classify2, convolve2, evaluate2, lift2, unlift2
from .bohr import MonomialPolynomial, degree_set, eval_point, lift, multiply, unlift
from .classifier import ClassifyConfig, FrameReport, TruncatedFamily, Verdict, classify
from .dirichlet import DirichletSeries, NotInvertibleError, convolve, evaluate, h2_norm, invert, shift
from .gallery import (bolu_riesz_basis_check, bolu_riesz_sequence_check, linear_factor_product, moebius_product,
                      monomial_minus_c, outer_function, run_gallery)
from .integer_arith import alpha, divisors, factorize, index, is_prime, nth_prime, prime_count, prime_position
from .operators import TruncatedOperator, gram_matrix, sigma_extremes, truncated_matrix
from .torus import ExtremeCertificate, polydisk_min, torus_extremes

__all__ = [
    "BivariateDirichletSeries", "ClassifyConfig", "DirichletSeries", "ExtremeCertificate", "FrameReport",
    "MonomialPolynomial", "NotInvertibleError", "TruncatedFamily", "TruncatedOperator", "Verdict",
    "alpha", "bolu_riesz_basis_check", "bolu_riesz_sequence_check", "classify", "classify2", "convolve",
    "convolve2", "degree_set", "divisors", "eval_point", "evaluate", "evaluate2", "factorize", "gram_matrix",
    "h2_norm", "index", "invert", "is_prime", "lift", "lift2", "linear_factor_product", "moebius_product",
    "monomial_minus_c", "multiply", "nth_prime", "outer_function", "polydisk_min", "prime_count",
    "prime_position", "run_gallery", "shift", "sigma_extremes", "torus_extremes", "truncated_matrix", "unlift",
    "unlift2",
]
