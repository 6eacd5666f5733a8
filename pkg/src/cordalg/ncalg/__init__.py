"""Noncommutative Z2 word algebra, the B3 word problem and 2x2 GF(2) matrices."""

from .garside import B3Normal, b3_equal, b3_normal_form, group_algebra_equal
from .matrix import Matrix2, matrix_eval
from .words import NcPoly, NcWord, nc_add, nc_inv, nc_mul, parse_nc, substitute

__all__ = [
    "B3Normal",
    "Matrix2",
    "NcPoly",
    "NcWord",
    "b3_equal",
    "b3_normal_form",
    "group_algebra_equal",
    "matrix_eval",
    "nc_add",
    "nc_inv",
    "nc_mul",
    "parse_nc",
    "substitute",
]
