"""Sparse multivariate polynomials over the rationals.

A :class:`Poly` is a mapping from exponent tuples to nonzero rational
coefficients, tagged with its arity (number of variables).  Values are
immutable once built.  Iteration order is the canonical graded reverse
lexicographic order, largest monomial first, with variables ranked in
declaration order (``x1 > x2 > ... > xn``).

Variable indices in this API are 0-based.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..errors import DimensionError
from . import rational
from .rational import Rat

Monomial = Tuple[int, ...]

#: Degree reported for the zero polynomial.
MINUS_INFINITY = -math.inf


def grevlex_key(exps: Monomial):
    """Sort key for graded reverse lexicographic order (ascending)."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _clean(terms: Dict[Monomial, Rat]) -> Dict[Monomial, Rat]:
    out = {}
    for m, c in terms.items():
        if c:
            if type(c) is Fraction and c.denominator == 1:
                c = c.numerator
            out[m] = c
    return out


class Poly:
    """Exact polynomial in ``arity`` variables with rational coefficients."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Optional[Mapping[Sequence[int], object]] = None):
        if arity < 0:
            raise ValueError("arity must be non-negative")
        clean: Dict[Monomial, Rat] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != arity or any(e < 0 for e in exps):
                raise DimensionError(f"monomial {exps} does not fit arity {arity}")
            c = rational.rat(coeff)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.arity = arity
        self._terms = _clean(clean)
        self._hash = None

    @classmethod
    def _raw(cls, arity: int, terms: Dict[Monomial, Rat]) -> "Poly":
        # trusted constructor: terms already canonical (no zeros, ints normalized)
        p = object.__new__(cls)
        p.arity = arity
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "Poly":
        return cls._raw(arity, {})

    @classmethod
    def const(cls, arity: int, value) -> "Poly":
        c = rational.rat(value)
        return cls._raw(arity, {(0,) * arity: c} if c else {})

    @classmethod
    def one(cls, arity: int) -> "Poly":
        return cls.const(arity, 1)

    @classmethod
    def var(cls, arity: int, index: int) -> "Poly":
        if not 0 <= index < arity:
            raise DimensionError(f"variable index {index} out of range for arity {arity}")
        exps = [0] * arity
        exps[index] = 1
        return cls._raw(arity, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Poly":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def variables(cls, arity: int) -> List["Poly"]:
        return [cls.var(arity, i) for i in range(arity)]

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Rat]:
        """The underlying monomial -> coefficient mapping.  Do not mutate."""
        return self._terms

    def items(self) -> List[Tuple[Monomial, Rat]]:
        """Terms in canonical order, largest monomial first."""
        return sorted(self._terms.items(), key=lambda mc: grevlex_key(mc[0]), reverse=True)

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.items()]

    def coeff(self, exps: Sequence[int]) -> Rat:
        return self._terms.get(tuple(exps), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Rat]]:
        return iter(self.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Rat:
        return self._terms.get((0,) * self.arity, 0)

    def degree(self):
        """Total degree; ``MINUS_INFINITY`` for the zero polynomial."""
        if not self._terms:
            return MINUS_INFINITY
        return max(sum(m) for m in self._terms)

    def degree_in(self, index: int):
        if not self._terms:
            return MINUS_INFINITY
        return max(m[index] for m in self._terms)

    def support(self) -> set:
        """Indices of the variables that actually occur."""
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def involves(self, index: int) -> bool:
        return any(m[index] for m in self._terms)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=grevlex_key)

    def leading_coefficient(self) -> Rat:
        return self._terms[self.leading_monomial()] if self._terms else 0

    def homogeneous_parts(self) -> Dict[int, "Poly"]:
        parts: Dict[int, Dict[Monomial, Rat]] = {}
        for m, c in self._terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: Poly._raw(self.arity, t) for d, t in sorted(parts.items())}

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly._raw(self.arity, {m: c for m, c in self._terms.items() if sum(m) == degree})

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        """True when every term has the same total degree (``degree`` if given).

        The zero polynomial counts as homogeneous of every degree.
        """
        degs = {sum(m) for m in self._terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs.pop() == degree

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if other.arity != self.arity:
            raise DimensionError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            self._check(other)
            return other
        try:
            return Poly.const(self.arity, other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._raw(self.arity, _clean(out))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, factor) -> "Poly":
        c = rational.rat(factor)
        if not c:
            return Poly.zero(self.arity)
        if c == 1:
            return self
        return Poly._raw(self.arity, _clean({m: v * c for m, v in self._terms.items()}))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Poly.zero(self.arity)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((mb, cb),) = b.items()
            return Poly._raw(self.arity, _clean({tuple([x + y for x, y in zip(ma, mb)]): ca * cb for ma, ca in a.items()}))
        # exponent vectors are packed into one integer so a monomial product is one addition
        width = max(self.degree(), other.degree()) * 2 + 1
        bits = width.bit_length()
        shifts = [bits * i for i in range(self.arity)]
        pack = lambda m: sum(e << s for e, s in zip(m, shifts))
        packed: Dict[int, Rat] = {}
        get = packed.get
        bitems = [(pack(mb), cb) for mb, cb in b.items()]
        for ma, ca in a.items():
            ka = pack(ma)
            for kb, cb in bitems:
                k = ka + kb
                v = get(k)
                packed[k] = ca * cb if v is None else v + ca * cb
        mask = (1 << bits) - 1
        out = {tuple([(k >> s) & mask for s in shifts]): c for k, c in packed.items() if c}
        return Poly._raw(self.arity, _clean(out))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.one(self.arity)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __truediv__(self, other):
        """Exact division by a scalar or by a polynomial that divides ``self``."""
        if isinstance(other, Poly):
            return self.exquo(other)
        return self.scale(rational.div(1, rational.rat(other)))

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.arity == other.arity and self._terms == other._terms
        try:
            c = rational.rat(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self._terms
        return len(self._terms) == 1 and self._terms.get((0,) * self.arity) == c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ---------------------------------------

    def derive(self, index: int) -> "Poly":
        """Partial derivative with respect to variable ``index`` (0-based)."""
        if not 0 <= index < self.arity:
            raise DimensionError(f"variable index {index} out of range for arity {self.arity}")
        out = {}
        for m, c in self._terms.items():
            e = m[index]
            if e:
                out[m[:index] + (e - 1,) + m[index + 1:]] = c * e
        return Poly._raw(self.arity, out)

    def substitute(self, values: Sequence["Poly"]) -> "Poly":
        """Compose: replace variable ``i`` by ``values[i]``.

        All values must share one arity, which becomes the arity of the result.
        Evaluation is a multivariate Horner scheme on the first variable with a
        power cache, which keeps intermediate swell down.
        """
        if len(values) != self.arity:
            raise DimensionError(f"need {self.arity} substitution values, got {len(values)}")
        if not values:
            raise DimensionError("cannot infer result arity from an empty substitution")
        target = values[0].arity
        for v in values:
            if v.arity != target:
                raise DimensionError("substitution values have mixed arities")
        if not self._terms:
            return Poly.zero(target)
        caches: List[Dict[int, Poly]] = [{0: Poly.one(target), 1: v} for v in values]

        def power(i: int, e: int) -> Poly:
            cache = caches[i]
            p = cache.get(e)
            if p is None:
                p = power(i, e // 2)
                p = p * p
                if e % 2:
                    p = p * values[i]
                cache[e] = p
            return p

        def horner(terms: Dict[Monomial, Rat], start: int) -> Poly:
            if start == self.arity:
                c = terms.get((), 0)
                return Poly.const(target, c)
            groups: Dict[int, Dict[Monomial, Rat]] = {}
            for m, c in terms.items():
                groups.setdefault(m[0], {})[m[1:]] = c
            acc = Poly.zero(target)
            for e, sub in groups.items():
                inner = horner(sub, start + 1)
                acc = acc + (inner if e == 0 else power(start, e) * inner)
            return acc

        return horner(dict(self._terms), 0)

    def __call__(self, *values: "Poly") -> "Poly":
        return self.substitute(values)

    def evaluate(self, point: Sequence) -> Rat:
        """Exact value at a rational point."""
        if len(point) != self.arity:
            raise DimensionError(f"point has {len(point)} coordinates, arity is {self.arity}")
        point = [rational.rat(v) for v in point]
        total = 0
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x ** e
            total += v
        return rational.normalize(total)

    # -- structural helpers ----------------------------------------------

    def extend(self, extra: int = 1) -> "Poly":
        """Same polynomial viewed in ``arity + extra`` variables (new ones last)."""
        pad = (0,) * extra
        return Poly._raw(self.arity + extra, {m + pad: c for m, c in self._terms.items()})

    def restrict(self, arity: int) -> "Poly":
        """Drop trailing variables that do not occur."""
        if any(any(m[arity:]) for m in self._terms):
            raise DimensionError("polynomial involves variables beyond the requested arity")
        return Poly._raw(arity, {m[:arity]: c for m, c in self._terms.items()})

    def coefficients_in(self, index: int) -> Dict[int, "Poly"]:
        """Split as ``sum_k x_index^k * c_k`` with ``c_k`` free of ``x_index``."""
        groups: Dict[int, Dict[Monomial, Rat]] = {}
        for m, c in self._terms.items():
            groups.setdefault(m[index], {})[m[:index] + (0,) + m[index + 1:]] = c
        return {k: Poly._raw(self.arity, t) for k, t in groups.items()}

    def shift_var(self, index: int, power: int) -> "Poly":
        """Multiply by ``x_index ** power``."""
        out = {}
        for m, c in self._terms.items():
            out[m[:index] + (m[index] + power,) + m[index + 1:]] = c
        return Poly._raw(self.arity, out)

    def divide_monomial(self, exps: Monomial) -> Optional["Poly"]:
        out = {}
        for m, c in self._terms.items():
            q = tuple([a - b for a, b in zip(m, exps)])
            if min(q, default=0) < 0:
                return None
            out[q] = c
        return Poly._raw(self.arity, out)

    def exquo(self, divisor: "Poly") -> "Poly":
        """Exact quotient ``self / divisor``; raises ``ArithmeticError`` if inexact."""
        q = self.divides_by(divisor)
        if q is None:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides_by(self, divisor: "Poly") -> Optional["Poly"]:
        """Return ``self / divisor`` if the division is exact, else ``None``."""
        self._check(divisor)
        if not divisor._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return self
        if len(divisor._terms) == 1:
            (dm, dc), = divisor._terms.items()
            q = self.divide_monomial(dm)
            return None if q is None else q.scale(rational.div(1, dc))
        lm = divisor.leading_monomial()
        lc = divisor._terms[lm]
        rest = [(m, c) for m, c in divisor._terms.items() if m != lm]
        rem = dict(self._terms)
        quot: Dict[Monomial, Rat] = {}
        while rem:
            m = max(rem, key=grevlex_key)
            qm = tuple([a - b for a, b in zip(m, lm)])
            if min(qm) < 0:
                return None
            qc = rational.div(rem.pop(m), lc)
            quot[qm] = qc
            for dm, dc in rest:
                t = tuple([a + b for a, b in zip(qm, dm)])
                v = rem.get(t, 0) - qc * dc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return Poly._raw(self.arity, _clean(quot))

    def content(self) -> Rat:
        """Positive rational ``c`` with ``self / c`` integral and primitive."""
        if not self._terms:
            return 0
        num = 0
        den = 1
        for c in self._terms.values():
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return rational.div(num, den)

    def monic_normal(self) -> "Poly":
        """Scale to content 1 with positive leading coefficient (canonical unit)."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(rational.div(1, c))

    # -- printing ---------------------------------------------------------

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        from .expr import format_poly

        return format_poly(self, names)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Poly({self.arity}, {self.to_string()!r})"


def poly_sum(items: Iterable[Poly], arity: int) -> Poly:
    out: Dict[Monomial, Rat] = {}
    for p in items:
        for m, c in p._terms.items():
            out[m] = out.get(m, 0) + c
    return Poly._raw(arity, _clean(out))
