"""Exact toolkit for quasi-translations x + H over the rationals."""

from .core import Poly, PolyMap, PolyMatrix, parse, parse_x
from .errors import (
    DegreeCapExceeded,
    DimensionError,
    NotQuasiTranslationError,
    ParseError,
    QtransError,
    VerificationError,
)
from .quasitrans import QtReport, check_qt, conjugate, homogenize, quasi_degree, strip_gcd
from .hessian import Relation, find_relation, hesse_check, image_span, qt_from_relation
from .classify import classify_small, decompose_two_tail, normalize_zeros

__version__ = "0.1.0"

__all__ = [
    "DegreeCapExceeded",
    "DimensionError",
    "NotQuasiTranslationError",
    "ParseError",
    "Poly",
    "PolyMap",
    "PolyMatrix",
    "QtReport",
    "QtransError",
    "Relation",
    "VerificationError",
    "check_qt",
    "classify_small",
    "conjugate",
    "decompose_two_tail",
    "find_relation",
    "hesse_check",
    "homogenize",
    "image_span",
    "normalize_zeros",
    "parse",
    "parse_x",
    "qt_from_relation",
    "quasi_degree",
    "strip_gcd",
]
