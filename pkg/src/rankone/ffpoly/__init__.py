"""Exact arithmetic over F_q, k[T] and k[T, 1/T]."""

from .factor import factorize, irreducibles, is_irreducible, squarefree_decomposition
from .field import FieldSpec
from .multi import MultiPoly
from .ops import laurent_divides, level_period, make_gab, mult_order, t_power_minus_one, unit_group_order
from .poly import DensePoly, LaurentPoly, poly_gcd, poly_xgcd

__all__ = [
    "FieldSpec",
    "DensePoly",
    "LaurentPoly",
    "MultiPoly",
    "poly_gcd",
    "poly_xgcd",
    "make_gab",
    "laurent_divides",
    "mult_order",
    "level_period",
    "unit_group_order",
    "t_power_minus_one",
    "factorize",
    "is_irreducible",
    "irreducibles",
    "squarefree_decomposition",
]
