"""Seeded generators of test inputs.

Everything takes an explicit ``seed`` (or a :class:`random.Random`) so the
same call always yields the same objects.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import List, Optional, Sequence

from .core import linalg
from .core.matrix import PolyMap, linear_map
from .core.poly import Poly
from .gallery import seed_quasi_translations
from .quasitrans import homogeneous_degree, homogenize, is_quasi_translation, linear_conjugate


@dataclass(frozen=True)
class CorpusItem:
    H: PolyMap
    origin: str
    multiplier: Optional[Poly] = None


def random_unimodular(rng: random.Random, n: int, steps: int = 3, bound: int = 2) -> List[List[int]]:
    """Random integer matrix of determinant ``±1`` built from elementary operations."""
    T = linalg.identity(n)
    if n == 1:
        return T
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([v for v in range(-bound, bound + 1) if v])
        for row in T:
            row[j] += k * row[i]
    perm = list(range(n))
    rng.shuffle(perm)
    return [[T[r][c] for c in perm] for r in range(n)]


def random_poly(rng: random.Random, arity: int, degree: int, terms: int = 4,
                homogeneous: bool = False, bound: int = 5, min_degree: int = 0) -> Poly:
    """Sparse polynomial with small integer coefficients (possibly zero if unlucky)."""
    pool = []
    for d in ([degree] if homogeneous else range(min_degree, degree + 1)):
        for combo in combinations_with_replacement(range(arity), d):
            e = [0] * arity
            for i in combo:
                e[i] += 1
            pool.append(tuple(e))
    chosen = rng.sample(pool, min(terms, len(pool)))
    return Poly(arity, {m: rng.choice([v for v in range(-bound, bound + 1) if v]) for m in chosen})


def nonzero_random_poly(rng: random.Random, *args, **kwargs) -> Poly:
    while True:
        p = random_poly(rng, *args, **kwargs)
        if not p.is_zero:
            return p


def _invariant_multiplier(rng: random.Random, H: PolyMap) -> Poly:
    """A nonconstant invariant: every component of a quasi-translation is one."""
    n = H.arity
    candidates = [p for p in H if not p.is_constant and p.degree() <= 2]
    candidates += [Poly.var(n, i) for i, p in enumerate(H) if p.is_zero]
    if not candidates:
        return Poly.const(n, rng.choice([2, 3, -1]))
    u = rng.choice(candidates)
    return u + Poly.const(n, rng.choice([1, 2, -3]))


def qt_corpus(seed: int = 0, count: int = 100) -> List[CorpusItem]:
    """Quasi-translations from the seeds by linear conjugation, homogenization and invariant scaling."""
    rng = random.Random(seed)
    seeds = [H for H in seed_quasi_translations() if len(H) <= 5]
    out: List[CorpusItem] = []
    kinds = ["conjugate", "homogenize", "multiply"]
    while len(out) < count:
        H = rng.choice(seeds)
        kind = kinds[len(out) % 3]
        # keep high-degree seeds sparse, otherwise H(x + tH) gets expensive
        light = H.degree() >= 4
        unimodular = (lambda n: random_unimodular(rng, n, 1, 1)) if light else (lambda n: random_unimodular(rng, n))
        if kind == "conjugate":
            out.append(CorpusItem(linear_conjugate(H, unimodular(len(H))), kind))
        elif kind == "homogenize":
            if homogeneous_degree(H) is not None and len(H) >= 5:
                H = linear_conjugate(H, unimodular(len(H)))
                out.append(CorpusItem(H, "conjugate"))
                continue
            out.append(CorpusItem(homogenize(H), kind))
        else:
            g = _invariant_multiplier(rng, H)
            # g is invariant for H, so g H is again a quasi-translation
            T = unimodular(len(H))
            scaled = linear_conjugate(H.scale(g), T)
            out.append(CorpusItem(scaled, kind, g.substitute(linear_map(T).components)))
    return out


def mutate(rng: random.Random, H: PolyMap) -> PolyMap:
    """Add a random monomial to a random component until the map is no longer a quasi-translation."""
    n = len(H)
    while True:
        i = rng.randrange(n)
        bump = nonzero_random_poly(rng, H.arity, rng.randint(1, 2), terms=1)
        comps = list(H.components)
        comps[i] = comps[i] + bump
        G = PolyMap(comps, H.arity)
        if not is_quasi_translation(G):
            return G


def non_qt_corpus(seed: int = 1, count: int = 100) -> List[CorpusItem]:
    rng = random.Random(seed)
    base = qt_corpus(seed + 1000, count)
    return [CorpusItem(mutate(rng, item.H), "mutated") for item in base]


def random_linear_forms(rng: random.Random, n: int, k: int, bound: int = 3) -> List[Poly]:
    return [nonzero_random_poly(rng, n, 1, terms=n, homogeneous=True, bound=bound) for _ in range(k)]


def hesse_homogeneous(seed: int = 2, count: int = 50, max_dim: int = 4) -> List[Poly]:
    """``f(l_1, .., l_{n-1})`` with random linear forms ``l`` and random homogeneous ``f``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, max_dim)
        d = rng.randint(2, 4)
        f = nonzero_random_poly(rng, n - 1, d, terms=3, homogeneous=True)
        h = f.substitute(random_linear_forms(rng, n, n - 1))
        if not h.is_zero:
            out.append(h)
    return out


def hesse_plane_inhomogeneous(seed: int = 3, count: int = 50) -> List[Poly]:
    """``f(l)`` in two variables with ``f`` univariate and free of a linear term."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        f = nonzero_random_poly(rng, 1, rng.randint(2, 5), terms=3, min_degree=2)
        f = f + Poly.const(1, rng.randint(-3, 3))
        (l,) = random_linear_forms(rng, 2, 1)
        h = f.substitute([l])
        if h.degree() >= 2:
            out.append(h)
    return out


def _univariate_in_first(rng: random.Random, arity: int, degree: int) -> Poly:
    return Poly(arity, {(e,) + (0,) * (arity - 1): rng.randint(-3, 3) for e in range(degree + 1)})


def small_qt_forms(seed: int = 4, count: int = 50) -> List[CorpusItem]:
    """Quasi-translations in dimension 2 and 3, conjugated by random unimodular matrices."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice([2, 3, 3])
        if n == 2:
            g = _univariate_in_first(rng, 2, rng.randint(0, 3))
            H = PolyMap([Poly.zero(2), g], 2)
        else:
            a = _univariate_in_first(rng, 3, rng.randint(0, 2))
            b = _univariate_in_first(rng, 3, rng.randint(0, 2))
            if a.is_zero and b.is_zero:
                continue
            x2, x3 = Poly.var(3, 1), Poly.var(3, 2)
            L = a * x2 - b * x3
            g = sum((_univariate_in_first(rng, 3, rng.randint(0, 2)) * L ** k for k in range(rng.randint(1, 3))),
                    Poly.zero(3))
            H = PolyMap([Poly.zero(3), b * g, a * g], 3)
        if H.is_zero:
            continue
        out.append(CorpusItem(linear_conjugate(H, random_unimodular(rng, n)), f"form{n}"))
    return out


def homogeneous_qt_forms(seed: int = 5, count: int = 50) -> List[CorpusItem]:
    """Homogeneous quasi-translations ``(0, 0, b g, a g)`` in dimension 4, conjugated."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        e = rng.randint(0, 1)
        a = random_poly(rng, 2, e, terms=2, homogeneous=True, bound=3).extend(2)
        b = random_poly(rng, 2, e, terms=2, homogeneous=True, bound=3).extend(2)
        if a.is_zero and b.is_zero:
            continue
        x3, x4 = Poly.var(4, 2), Poly.var(4, 3)
        L = a * x3 - b * x4
        total = rng.randint(e + 1, 2 * (e + 1))
        g = Poly.zero(4)
        for k in range(total // (e + 1) + 1):
            rest = total - k * (e + 1)
            if rest >= 0:
                c = random_poly(rng, 2, rest, terms=2, homogeneous=True, bound=3).extend(2)
                g = g + c * L ** k
        H = PolyMap([Poly.zero(4), Poly.zero(4), b * g, a * g], 4)
        if H.is_zero or homogeneous_degree(H) is None:
            continue
        out.append(CorpusItem(linear_conjugate(H, random_unimodular(rng, 4)), "form4h"))
    return out


__all__ = [
    "CorpusItem",
    "hesse_homogeneous",
    "hesse_plane_inhomogeneous",
    "homogeneous_qt_forms",
    "mutate",
    "non_qt_corpus",
    "nonzero_random_poly",
    "qt_corpus",
    "random_linear_forms",
    "random_poly",
    "random_unimodular",
    "small_qt_forms",
]
