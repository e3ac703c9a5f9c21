"""Harmonic analysis for the trigonometric Heckman-Opdam system of type A1."""

from .functions import bump, parse_function
from .quadrature import QuadratureRule, build_circle_rule, build_interior_rule, inner_product, lp_norm
from .special_fn import e_eval, e_norm_sq, e_table, p_eval, total_mass
from .spectral import SpectralExpansion, analyze, hilbert_spectral, poisson_extend, synthesize

__version__ = "0.1.0"

__all__ = [
    "QuadratureRule",
    "SpectralExpansion",
    "analyze",
    "build_circle_rule",
    "build_interior_rule",
    "bump",
    "e_eval",
    "e_norm_sq",
    "e_table",
    "hilbert_spectral",
    "inner_product",
    "lp_norm",
    "p_eval",
    "parse_function",
    "poisson_extend",
    "synthesize",
    "total_mass",
]
