"""Exact arithmetic substrate: rationals, polynomials, cyclotomic fields, root boxes."""

from fractions import Fraction as Rat

from .cyclotomic import Cyclotomic, cyclotomic_poly
from .poly import Poly, as_rat, factor_multiplicity, poly_gcd, poly_squarefree_layers, rat_str
from .roots import RootBox, WeilCertificate, is_weil_poly, isolate_roots, weight_split

__all__ = [
    "Rat",
    "Cyclotomic",
    "cyclotomic_poly",
    "Poly",
    "as_rat",
    "factor_multiplicity",
    "poly_gcd",
    "poly_squarefree_layers",
    "rat_str",
    "RootBox",
    "WeilCertificate",
    "is_weil_poly",
    "isolate_roots",
    "weight_split",
]
