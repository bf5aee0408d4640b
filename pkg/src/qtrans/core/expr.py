"""Text form of polynomials.

Grammar (whitespace is insignificant)::

    expr    := ['+' | '-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | power
    power   := atom ['^' INTEGER]
    atom    := INTEGER ['/' INTEGER] | IDENT | '(' expr ')'

Identifiers are resolved against an explicit ordered list of variable names.
The printer emits the same grammar with terms in canonical order, so output
is stable enough for golden files and ``parse(format_poly(p)) == p``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Sequence

from ..errors import ParseError
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def default_names(arity: int, prefix: str = "x") -> List[str]:
    return [f"{prefix}{i + 1}" for i in range(arity)]


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(names)}
        self.arity = len(names)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def parse(self) -> Poly:
        result = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", pos)
        return result

    def expr(self) -> Poly:
        sign = 1
        kind, text, _ = self.peek()
        if kind == "op" and text in "+-":
            self.take()
            sign = -1 if text == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                t = self.term()
                acc = acc + t if text == "+" else acc - t
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Poly:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.take()
            return -self.factor()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            return base ** int(text)
        return base

    def atom(self) -> Poly:
        kind, text, pos = self.take()
        if kind == "num":
            value = Fraction(int(text))
            nk, nt, _ = self.peek()
            if nk == "op" and nt == "/":
                self.take()
                dk, dt, dpos = self.take()
                if dk != "num":
                    raise ParseError("denominator must be an integer literal", dpos)
                if int(dt) == 0:
                    raise ParseError("zero denominator", dpos)
                value = Fraction(int(text), int(dt))
            return Poly.const(self.arity, value)
        if kind == "id":
            if text not in self.index:
                raise ParseError(f"unknown identifier {text!r}", pos)
            return Poly.var(self.arity, self.index[text])
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)


def parse(text: str, names: Sequence[str]) -> Poly:
    """Parse ``text`` into a polynomial over the variables ``names`` (in order)."""
    if len(set(names)) != len(names):
        raise ValueError("variable names must be distinct")
    return _Parser(text, names).parse()


def parse_x(text: str, arity: int) -> Poly:
    """Shorthand for ``parse(text, ["x1", ..., "x<arity>"])``."""
    return parse(text, default_names(arity))


def _monomial_str(exps, names) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly, names: Optional[Sequence[str]] = None) -> str:
    names = list(names) if names is not None else default_names(p.arity)
    if len(names) != p.arity:
        raise ValueError(f"need {p.arity} variable names, got {len(names)}")
    if p.is_zero:
        return "0"
    out = []
    for k, (m, c) in enumerate(p.items()):
        negative = c < 0
        mag = -c if negative else c
        mono = _monomial_str(m, names)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)
