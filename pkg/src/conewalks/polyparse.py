"""Tiny expression parser for bivariate polynomials over Q.

Grammar: integer and rational literals (e.g. 3, 5/2), variables i and j
(x and y accepted as synonyms), operators + - * ^ and parentheses.
Exponents are nonnegative integer literals.  '/' only forms rational
literals; general division is not part of the language.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .polynomials import Poly2

__all__ = ["parse_poly2", "PolyParseError"]


class PolyParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[ijxy()+\-*^])")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.take()
        if got != tok:
            raise PolyParseError(f"expected {tok!r}, got {got!r}")

    def parse_expr(self) -> Poly2:
        value = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> Poly2:
        value = self.parse_power()
        while self.peek() == "*":
            self.take()
            value = value * self.parse_power()
        return value

    def parse_power(self) -> Poly2:
        base = self.parse_atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise PolyParseError("exponent must be a nonnegative integer")
            return base ** int(tok)
        return base

    def parse_atom(self) -> Poly2:
        tok = self.take()
        if tok is None:
            raise PolyParseError("unexpected end of expression")
        if tok == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if tok == "-":
            return -self.parse_power()
        if tok == "+":
            return self.parse_power()
        if tok in ("i", "x"):
            return Poly2.x()
        if tok in ("j", "y"):
            return Poly2.y()
        if re.fullmatch(r"\d+/\d+|\d+", tok):
            return Poly2.const(Fraction(tok))
        raise PolyParseError(f"unexpected token {tok!r}")


def parse_poly2(text: str) -> Poly2:
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty expression")
    parser = _Parser(tokens)
    result = parser.parse_expr()
    if parser.peek() is not None:
        raise PolyParseError(f"trailing input at {parser.tokens[parser.pos:]!r}")
    return result
