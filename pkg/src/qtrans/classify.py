"""Normal forms of quasi-translations in small dimension.

The pipeline is: move the linear annihilators of ``H`` to the front by a
constant change of coordinates (:func:`normalize_zeros`); if at most two
components survive, split them as ``(b g, a g)`` with ``a, b`` free of the
last two variables and rewrite ``g`` in powers of ``a x_{n-1} - b x_n``
(:func:`decompose_two_tail`).  :func:`classify_small` chains both steps and
checks that conjugating back reproduces the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .core import linalg
from .core.gcd import gcd, gcd_list
from .core.matrix import PolyMap, apply_constant, linear_map, rank
from .core.poly import Poly
from .core.rational import Rat
from .errors import DimensionError, VerificationError
from .hessian import image_span
from .quasitrans import check_qt, homogeneous_degree, linear_conjugate, require_qt


@dataclass(frozen=True)
class NormalForm:
    """``H_normalized = T^{-1} H(Tx)`` with its first ``s`` components zero."""

    T: List[List[Rat]]
    s: int
    H_normalized: PolyMap


@dataclass(frozen=True)
class QtFormDecomposition:
    """``(.., 0, b g, a g)`` with ``g = sum_k c_k (a x_{n-1} - b x_n)^k``."""

    g: Poly
    a: Poly
    b: Poly
    parts: Dict[int, Poly] = field(default_factory=dict)

    def linear_form(self) -> Poly:
        n = self.g.arity
        return self.a * Poly.var(n, n - 2) - self.b * Poly.var(n, n - 1)

    def rebuild_g(self) -> Poly:
        L = self.linear_form()
        return sum((c * L ** k for k, c in self.parts.items()), Poly.zero(self.g.arity))


@dataclass(frozen=True)
class Classification:
    """Full descriptor ``(T, s, g, a, b, parts)`` of a small quasi-translation."""

    T: List[List[Rat]]
    s: int
    normal_form: PolyMap
    decomposition: Optional[QtFormDecomposition]

    @property
    def g(self) -> Optional[Poly]:
        return self.decomposition.g if self.decomposition else None

    @property
    def a(self) -> Optional[Poly]:
        return self.decomposition.a if self.decomposition else None

    @property
    def b(self) -> Optional[Poly]:
        return self.decomposition.b if self.decomposition else None

    @property
    def parts(self) -> Dict[int, Poly]:
        return dict(self.decomposition.parts) if self.decomposition else {}

    def reconstruct(self) -> PolyMap:
        """``T · (normal form)(T^{-1} x)``."""
        Tinv = linalg.inverse(self.T)
        return apply_constant(self.T, self.normal_form.compose(linear_map(Tinv)))


def normalize_zeros(H: PolyMap) -> NormalForm:
    """Conjugate ``H`` by a constant ``T`` so its linear annihilators become leading zeros.

    The first ``s`` columns of ``S = (T^t)^{-1}`` are the echelon basis of
    ``{c : c^t H = 0}``, completed by unit vectors with the smallest indices.
    """
    require_qt(H)
    n = len(H)
    ann = image_span(H).annihilators
    s = len(ann)
    columns = linalg.complete_basis(ann, n)
    S = linalg.transpose(columns)
    T = linalg.transpose(linalg.inverse(S))
    Hn = linear_conjugate(H, T)
    if not all(Hn[i].is_zero for i in range(s)):
        raise VerificationError("leading components did not vanish")
    tail = PolyMap(Hn.components[s:], Hn.arity) if s < n else None
    if tail is not None and image_span(tail).dim != n - s:
        raise VerificationError("tail components are not linearly independent")
    if not check_qt(Hn, extras=False).is_qt:
        raise VerificationError("linear conjugate is not a quasi-translation")
    return NormalForm(T, s, Hn)


def rank_one_decompose(H: PolyMap) -> Optional[Tuple[Poly, List[Rat]]]:
    """``(g, c)`` with ``H = g c`` for a homogeneous quasi-translation of rank at most 1.

    Returns ``None`` when ``rk JH >= 2``, after asserting ``rk JH <= n - 2``.
    The zero map gives ``(0, e_1)``.
    """
    require_qt(H)
    n, arity = len(H), H.arity
    if homogeneous_degree(H) is None:
        raise ValueError("rank_one_decompose needs a homogeneous map")
    if H.is_zero:
        return Poly.zero(arity), [1] + [0] * (n - 1)
    r = rank(H.jacobian(), "certified")
    if r >= 2:
        if r > n - 2:
            raise VerificationError(f"rank {r} exceeds n - 2 = {n - 2} for a homogeneous quasi-translation")
        return None
    g = gcd_list(H.components)
    c = []
    for p in H:
        q = p.exquo(g)
        if not q.is_constant:
            raise VerificationError("rank one but components are not proportional")
        c.append(q.constant_term())
    return g, c


def _free_of_last_two(p: Poly) -> bool:
    n = p.arity
    return not (p.involves(n - 2) or p.involves(n - 1))


def decompose_two_tail(H: PolyMap) -> QtFormDecomposition:
    """Split ``H = (0, .., 0, b g, a g)`` and rewrite ``g`` in ``a x_{n-1} - b x_n``."""
    require_qt(H)
    n = len(H)
    if n < 2:
        raise DimensionError("need at least two components")
    if any(not H[i].is_zero for i in range(n - 2)):
        raise ValueError("components 1..n-2 must vanish")
    hb, ha = H[n - 2], H[n - 1]
    if hb.is_zero and ha.is_zero:
        raise ValueError("last two components are both zero")
    g = gcd_list([hb, ha])
    b, a = hb.exquo(g), ha.exquo(g)
    if not (_free_of_last_two(a) and _free_of_last_two(b)):
        raise VerificationError("a or b involves one of the last two variables")
    if not a.is_zero and not b.is_zero and gcd(a, b) != 1:
        raise VerificationError("a and b are not coprime")
    if not (b * g.derive(n - 2) + a * g.derive(n - 1)).is_zero:
        raise VerificationError("b dg/dx_{n-1} + a dg/dx_n != 0")
    L = a * Poly.var(g.arity, n - 2) - b * Poly.var(g.arity, n - 1)
    pieces: Dict[int, Dict] = {}
    for m, c in g.terms.items():
        pieces.setdefault(m[n - 2] + m[n - 1], {})[m] = c
    parts = {}
    for k in sorted(pieces):
        q = Poly(g.arity, pieces[k]).divides_by(L ** k)
        if q is None:
            raise VerificationError(f"bidegree-{k} part of g is not divisible by (a x_{{n-1}} - b x_n)^{k}")
        if not _free_of_last_two(q):
            raise VerificationError(f"coefficient c_{k} involves one of the last two variables")
        parts[k] = q
    out = QtFormDecomposition(g, a, b, parts)
    if out.rebuild_g() != g:
        raise VerificationError("g is not recovered from its parts")
    return out


#: Largest dimension handled for arbitrary and for homogeneous quasi-translations.
MAX_DIM_GENERAL = 3
MAX_DIM_HOMOGENEOUS = 4


def classify_small(H: PolyMap) -> Classification:
    """Normal form ``(0, .., 0, b g, a g)`` for ``n <= 3``, or ``n <= 4`` when homogeneous."""
    require_qt(H)
    n = len(H)
    if n > MAX_DIM_GENERAL and not (n <= MAX_DIM_HOMOGENEOUS and homogeneous_degree(H) is not None):
        raise ValueError("classification covers n <= 3, or n <= 4 for homogeneous maps")
    nf = normalize_zeros(H)
    if nf.s == n or n == 1:
        decomposition = None
    elif nf.s < n - 2:
        raise VerificationError(f"only {nf.s} leading zeros; at least {n - 2} expected")
    else:
        decomposition = decompose_two_tail(nf.H_normalized)
    out = Classification(nf.T, nf.s, nf.H_normalized, decomposition)
    if out.reconstruct() != H:
        raise VerificationError("reconstruction does not reproduce H")
    return out


__all__ = [
    "Classification",
    "NormalForm",
    "QtFormDecomposition",
    "classify_small",
    "decompose_two_tail",
    "normalize_zeros",
    "rank_one_decompose",
]
