"""Exact polynomial arithmetic and polynomial-matrix linear algebra over Q."""

from .expr import default_names, format_poly, parse, parse_x
from .gcd import gcd, gcd_list
from .matrix import (
    PolyMap,
    PolyMatrix,
    RankReport,
    apply_constant,
    compose,
    det,
    gradient,
    hessian,
    jacobian,
    linear_map,
    matmul,
    rank,
    rank_report,
)
from .poly import MINUS_INFINITY, Poly
from .rational import Rat, rat

__all__ = [
    "MINUS_INFINITY",
    "Poly",
    "PolyMap",
    "PolyMatrix",
    "RankReport",
    "Rat",
    "apply_constant",
    "compose",
    "default_names",
    "det",
    "format_poly",
    "gcd",
    "gcd_list",
    "gradient",
    "hessian",
    "jacobian",
    "linear_map",
    "matmul",
    "parse",
    "parse_x",
    "rank",
    "rank_report",
    "rat",
]
