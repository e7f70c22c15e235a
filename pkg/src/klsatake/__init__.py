"""Weighted Kazhdan-Lusztig bases of affine Weyl groups and spherical structure constants."""

from .folding import DiagramAutomorphism, FoldedGroup, fold, parse_sigma
from .hecke import HeckeAlgebra, KLTable, WeightFunction
from .laurent import LaurentPoly, exact_divide
from .satake import SatakeComputer, SphericalConstantTable
from .weyl import AffineWeylGroup, FiniteWeylGroup, build_datum, group_from_label, root_datum

__all__ = [
    "AffineWeylGroup",
    "DiagramAutomorphism",
    "FiniteWeylGroup",
    "FoldedGroup",
    "HeckeAlgebra",
    "KLTable",
    "LaurentPoly",
    "SatakeComputer",
    "SphericalConstantTable",
    "WeightFunction",
    "build_datum",
    "exact_divide",
    "fold",
    "group_from_label",
    "parse_sigma",
    "root_datum",
]
__version__ = "0.1.0"
