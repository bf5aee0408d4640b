"""JSON documents for library results.

Rationals are written as strings (``"3"``, ``"-2/5"``) and polynomials as
expression strings in the parser grammar, so every document round-trips
exactly.  The layouts are listed in the README.
"""

from __future__ import annotations

import json
import math
from typing import Any, Dict, List, Optional, Sequence

from .classify import Classification, NormalForm, QtFormDecomposition
from .core.expr import default_names, format_poly
from .core.matrix import PolyMap
from .core.poly import Poly
from .core.rational import Rat, to_str
from .hessian import HesseCertificate, Relation, SpanReport
from .quasitrans import QtReport


def rat_json(value: Rat) -> str:
    return to_str(value)


def vector_json(vec: Sequence[Rat]) -> List[str]:
    return [to_str(v) for v in vec]


def matrix_json(rows: Sequence[Sequence[Rat]]) -> List[List[str]]:
    return [vector_json(r) for r in rows]


def poly_json(p: Optional[Poly], prefix: str = "x") -> Optional[str]:
    if p is None:
        return None
    return format_poly(p, default_names(p.arity, prefix))


def map_json(H: PolyMap) -> List[str]:
    return H.to_strings()


def degree_json(value) -> Any:
    """Integers as-is; the minus-infinity sentinel as the string ``"-inf"``."""
    if isinstance(value, float) and math.isinf(value):
        return "-inf"
    return value


def qt_report_json(H: PolyMap, report: QtReport, rank: Optional[int] = None) -> Dict[str, Any]:
    doc = {
        "variables": default_names(H.arity),
        "map": map_json(H),
        "cond_inverse": report.cond_inverse,
        "cond_deform": report.cond_deform,
        "cond_jhh": report.cond_jhh,
        "is_quasi_translation": report.is_qt,
        "nilpotency_index": report.nilpotency_index,
        "series_identity": report.series_identity,
    }
    if rank is not None:
        doc["jacobian_rank"] = rank
    return doc


def relation_json(rel: Optional[Relation]) -> Dict[str, Any]:
    if rel is None:
        return {"relation": None}
    n = rel.target.arity
    return {
        "variables": default_names(n),
        "relation_variables": default_names(rel.R.arity, "y"),
        "target": map_json(rel.target),
        "R": rel.to_string(),
        "degree": rel.degree,
        "minimal": rel.minimal,
    }


def certificate_json(cert: Optional[HesseCertificate]) -> Dict[str, Any]:
    if cert is None:
        return {"certificate": None}
    return {"c": vector_json(cert.c), "c0": rat_json(cert.c0)}


def span_json(span: SpanReport) -> Dict[str, Any]:
    return {
        "dim": span.dim,
        "basis": matrix_json(span.basis),
        "annihilators": matrix_json(span.annihilators),
    }


def decomposition_json(dec: Optional[QtFormDecomposition]) -> Dict[str, Any]:
    if dec is None:
        return {"g": None, "a": None, "b": None, "parts": {}}
    return {
        "g": poly_json(dec.g),
        "a": poly_json(dec.a),
        "b": poly_json(dec.b),
        "parts": {str(k): poly_json(c) for k, c in sorted(dec.parts.items())},
    }


def normal_form_json(nf: NormalForm) -> Dict[str, Any]:
    return {"T": matrix_json(nf.T), "s": nf.s, "normal_form": map_json(nf.H_normalized)}


def classification_json(c: Classification) -> Dict[str, Any]:
    doc = {"T": matrix_json(c.T), "s": c.s, "normal_form": map_json(c.normal_form)}
    doc.update(decomposition_json(c.decomposition))
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


__all__ = [
    "certificate_json",
    "classification_json",
    "decomposition_json",
    "degree_json",
    "dumps",
    "map_json",
    "matrix_json",
    "normal_form_json",
    "poly_json",
    "qt_report_json",
    "rat_json",
    "relation_json",
    "span_json",
    "vector_json",
]
