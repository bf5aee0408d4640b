"""Singular Hessians and the quasi-translations they produce.

Given ``h`` with ``det Hh = 0`` there is a nonzero ``R`` with ``R(∇h) = 0``;
``H = (∇_y R)(∇h)`` is then a dependence between the rows (and, since the
Hessian is symmetric, the columns) of ``Hh``, and ``x + H`` is a
quasi-translation.  Relations are searched degree by degree with exact linear
algebra on coefficient space, so the first hit has minimal degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .core import linalg, rational
from .core.expr import default_names, format_poly
from .core.matrix import (
    PolyMap,
    PolyMatrix,
    apply_constant,
    det,
    gradient,
    hessian as hessian_matrix,
    linear_map,
    matmul,
    rank,
    row_times_matrix,
)
from .core.poly import Monomial, Poly, grevlex_key
from .core.rational import Rat
from .errors import DegreeCapExceeded, DimensionError, VerificationError
from .quasitrans import check_qt

#: Largest dimension for which :func:`affine_transport` also compares Hessian determinants.
DET_CHECK_MAX_DIM = 4


@dataclass(frozen=True)
class Relation:
    """A nonzero ``R`` in the ``y`` variables with ``R(G) = 0``."""

    R: Poly
    target: PolyMap
    degree: int
    minimal: bool

    def y_names(self) -> List[str]:
        return default_names(self.R.arity, "y")

    def to_string(self) -> str:
        return format_poly(self.R, self.y_names())


@dataclass(frozen=True)
class HesseCertificate:
    """Constants with ``sum_j c_j ∂h/∂x_j = c0``."""

    c: Tuple[Rat, ...]
    c0: Rat = 0


@dataclass(frozen=True)
class SpanReport:
    """Linear span of the image of ``H``.

    ``basis`` spans the image (reduced echelon rows); ``annihilators`` is a
    reduced echelon basis of ``{c : c^t H = 0}``.
    """

    dim: int
    basis: List[List[Rat]] = field(default_factory=list)
    annihilators: List[List[Rat]] = field(default_factory=list)


@dataclass(frozen=True)
class Transport:
    """Result of moving ``(h, R, H)`` along ``x -> Tx + c`` with linear terms ``c̃``."""

    h: Poly
    R: Poly
    H: PolyMap


# -- relation search ---------------------------------------------------------


def _y_monomials(n: int, d: int, exact: bool) -> List[Monomial]:
    """y-monomials of degree ``d`` (or ``<= d``), largest first in grevlex."""
    out = []
    for k in (range(d, d + 1) if exact else range(d + 1)):
        for combo in combinations_with_replacement(range(n), k):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return out


class _PowerTable:
    def __init__(self, G: PolyMap):
        self.G = G
        self.cache: Dict[Monomial, Poly] = {(0,) * len(G): Poly.one(G.arity)}

    def __getitem__(self, alpha: Monomial) -> Poly:
        p = self.cache.get(alpha)
        if p is None:
            i = max(k for k, e in enumerate(alpha) if e)
            prev = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
            p = self[prev] * self.G[i]
            self.cache[alpha] = p
        return p


def _kernel(columns: Sequence[Poly]) -> List[List[Rat]]:
    """Basis of the rational vectors ``v`` with ``sum v_j columns[j] = 0``."""
    rows: Dict[Monomial, List[Rat]] = {}
    for j, p in enumerate(columns):
        for m, c in p.terms.items():
            rows.setdefault(m, [0] * len(columns))[j] = c
    return linalg.nullspace(list(rows.values()), len(columns))


def _relation_kernel(table: _PowerTable, n: int, d: int, exact: bool):
    monos = _y_monomials(n, d, exact)
    return monos, _kernel([table[a] for a in monos])


def find_relation(G: PolyMap, deg_cap: int = 6, want_homogeneous: bool = False) -> Optional[Relation]:
    """Minimal-degree nonzero ``R`` with ``R(G) = 0``.

    Returns ``None`` when ``JG`` has full rank (no relation exists).  Raises
    :class:`DegreeCapExceeded` if no relation of degree ``<= deg_cap`` exists
    but the rank test could not rule one out.  When several relations of the
    minimal degree exist, the reduced-echelon kernel vector with the earliest
    free column (in grevlex order of the y-monomials) is returned.
    """
    if not G.is_square():
        raise DimensionError("relation search needs a square map")
    if deg_cap < 1:
        raise ValueError("deg_cap must be at least 1")
    n = len(G)
    # numeric rank is a lower bound, so full rank here is already a proof
    if rank(G.jacobian(), "randomized") == n:
        return None
    table = _PowerTable(G)
    for d in range(1, deg_cap + 1):
        monos, kernel = _relation_kernel(table, n, d, want_homogeneous)
        kernel = [v for v in kernel if any(v)]
        if not kernel:
            continue
        vec = kernel[0]
        R = Poly(n, {m: c for m, c in zip(monos, vec) if c})
        if not R.substitute(G.components).is_zero:
            raise VerificationError("relation does not vanish on the target map")
        _, lower = _relation_kernel(table, n, d - 1, False)
        return Relation(R, G, R.degree(), minimal=not lower)
    raise DegreeCapExceeded(f"no relation of degree <= {deg_cap}; rank(JG) < {n} so one exists")


def make_relation(R: Poly, G: PolyMap) -> Relation:
    """Wrap a caller-supplied ``R`` after checking ``R(G) = 0``; minimality is tested."""
    if R.arity != len(G):
        raise DimensionError("relation arity must equal the number of target components")
    if R.is_zero:
        raise ValueError("relation must be nonzero")
    if not R.substitute(G.components).is_zero:
        raise VerificationError("R(G) is not zero")
    d = R.degree()
    lower = _relation_kernel(_PowerTable(G), len(G), d - 1, False)[1] if d >= 1 else []
    return Relation(R, G, d, minimal=not lower)


def relation_map(rel: Relation) -> PolyMap:
    """``(∇_y R)(G)``, checked to be a dependence between the rows of ``JG``."""
    G = rel.target
    H = PolyMap([rel.R.derive(i).substitute(G.components) for i in range(rel.R.arity)], G.arity)
    if not all(p.is_zero for p in row_times_matrix(H.components, G.jacobian())):
        raise VerificationError("row dependence H^t · JG = 0 failed")
    return H


def column_dependence(G: PolyMap, Ht: PolyMap, H: Optional[PolyMap] = None) -> bool:
    """Whether ``JG · Ht = 0``.

    If it holds and ``H = (∇_y R)(G)`` is supplied, ``JH · Ht = 0`` is
    asserted as well.
    """
    ok = matmul(G.jacobian(), Ht).is_zero
    if ok and H is not None and not matmul(H.jacobian(), Ht).is_zero:
        raise VerificationError("JG·H̃ = 0 but JH·H̃ != 0")
    return ok


def qt_from_relation(h: Poly, rel: Relation) -> PolyMap:
    """``H = (∇_y R)(∇h)``.

    Always asserts ``H^t · Hh = 0``; when also ``Hh · H = 0`` (which holds for
    any Hessian by symmetry) asserts that ``x + H`` is a quasi-translation.
    """
    G = gradient(h)
    if rel.target != G:
        raise ValueError("relation target is not the gradient of h")
    H = relation_map(rel)
    if column_dependence(G, H, H):
        report = check_qt(H, extras=False)
        if not report.is_qt:
            raise VerificationError(f"column dependence holds but x + H is not a quasi-translation: {report}")
    return H


# -- Hesse-type linear dependences ------------------------------------------


def hesse_check(h: Poly, allow_affine: bool = False) -> Optional[HesseCertificate]:
    """Constant ``c != 0`` with ``Jh · c = 0`` (or ``= c0`` when ``allow_affine``).

    The first reduced-echelon kernel vector is returned, scaled so its first
    nonzero entry is 1.
    """
    n = h.arity
    partials = [h.derive(j) for j in range(n)]
    columns = partials + ([Poly.const(n, -1)] if allow_affine else [])
    for v in _kernel(columns):
        c = v[:n]
        if not any(c):
            continue
        lead = next(x for x in c if x)
        c = [rational.div(x, lead) for x in c]
        c0 = rational.div(v[n], lead) if allow_affine else 0
        lhs = sum((p.scale(x) for p, x in zip(partials, c) if x), Poly.zero(n))
        if lhs != c0:
            raise VerificationError("certificate failed exact substitution")
        return HesseCertificate(tuple(c), c0)
    return None


def image_span(H: PolyMap) -> SpanReport:
    """Dimension of the linear span of the image of ``H`` over Q."""
    n = len(H)
    rows: Dict[Monomial, List[Rat]] = {}
    for j, p in enumerate(H):
        for m, c in p.terms.items():
            rows.setdefault(m, [0] * n)[j] = c
    coeff = list(rows.values())
    basis = linalg.echelon_basis(coeff, n)
    ann = linalg.echelon_basis(linalg.nullspace(coeff, n), n) if coeff else [
        [1 if i == j else 0 for j in range(n)] for i in range(n)
    ]
    for c in ann:
        if not sum((p.scale(x) for p, x in zip(H, c) if x), Poly.zero(H.arity)).is_zero:
            raise VerificationError("annihilator does not kill H")
    if len(basis) + len(ann) != n:
        raise VerificationError("span dimension and annihilator count do not add up")
    return SpanReport(len(basis), basis, ann)


def reduce_variables(h: Poly, cert: HesseCertificate) -> List[List[Rat]]:
    """Invertible ``T`` whose last column is ``c``, so ``h(Tx)`` is free of ``x_n``."""
    n = h.arity
    c = list(cert.c)
    if len(c) != n:
        raise DimensionError("certificate length does not match arity")
    if not any(c):
        raise ValueError("certificate vector is zero")
    if cert.c0:
        raise ValueError("variable reduction needs c0 = 0")
    completed = linalg.complete_basis([c], n)
    columns = completed[1:] + [c]
    T = linalg.transpose(columns)
    reduced = h.substitute(linear_map(T).components)
    if not reduced.derive(n - 1).is_zero:
        raise VerificationError("h(Tx) still depends on the last variable")
    return T


def linear_terms(h: Poly) -> List[Rat]:
    """Coefficients of ``x_1..x_n`` in ``h``."""
    n = h.arity
    return [h.coeff(tuple(int(i == j) for j in range(n))) for i in range(n)]


def affine_transport(
    h: Poly,
    R: Poly,
    T: Sequence[Sequence],
    c: Optional[Sequence] = None,
    c_tilde: Optional[Sequence] = None,
) -> Transport:
    """Move ``(h, R, H)`` to ``h̃ = h(Tx + c) - c̃^t x``.

    ``R̃ = R((T^t)^{-1}(y + c̃))`` annihilates ``∇h̃``, and
    ``H̃ = (∇_y R̃)(∇h̃)`` is computed directly and as ``T^{-1} H(Tx + c)``;
    the two must agree.
    """
    n = h.arity
    c = [rational.rat(v) for v in (c or [0] * n)]
    c_tilde = [rational.rat(v) for v in (c_tilde or [0] * n)]
    T = [[rational.rat(v) for v in row] for row in T]
    if linalg.det(T) == 0:
        raise ValueError("T is not invertible")
    G = gradient(h)
    if not R.substitute(G.components).is_zero:
        raise ValueError("R(∇h) is not zero")
    xs = Poly.variables(n)
    h_t = h.substitute(linear_map(T, c).components) - sum(
        (x.scale(v) for x, v in zip(xs, c_tilde) if v), Poly.zero(n)
    )
    Tt_inv = linalg.inverse(linalg.transpose(T))
    R_t = R.substitute(linear_map(Tt_inv, linalg.matvec(Tt_inv, c_tilde)).components)
    G_t = gradient(h_t)
    if not R_t.substitute(G_t.components).is_zero:
        raise VerificationError("transported relation does not vanish on ∇h̃")
    H = PolyMap([R.derive(i).substitute(G.components) for i in range(n)], n)
    direct = PolyMap([R_t.derive(i).substitute(G_t.components) for i in range(n)], n)
    via_conjugation = apply_constant(linalg.inverse(T), H.compose(linear_map(T, c)))
    if direct != via_conjugation:
        raise VerificationError("the two constructions of H̃ disagree")
    if n <= DET_CHECK_MAX_DIM:
        if det(hessian_matrix(h)).is_zero != det(hessian_matrix(h_t)).is_zero:
            raise VerificationError("Hessian singularity is not preserved")
    return Transport(h_t, R_t, direct)


__all__ = [
    "HesseCertificate",
    "Relation",
    "SpanReport",
    "Transport",
    "affine_transport",
    "column_dependence",
    "find_relation",
    "hesse_check",
    "image_span",
    "linear_terms",
    "make_relation",
    "qt_from_relation",
    "reduce_variables",
    "relation_map",
]
