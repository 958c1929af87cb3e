"""Parser for rational functions in ``Z`` with rational coefficients.

Accepted: integers, decimals, ``Z``, ``+ - * /``, ``^`` (or ``**``) with an
integer exponent, parentheses, and juxtaposition as multiplication, so that
``-(1/16)Z^6(Z+2)^6`` is read as written.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .qpoly import QPoly

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|(\*\*|[-+*/^()])|([Zz]))")


class ParseError(ValueError):
    pass


Frac = tuple[QPoly, QPoly]


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at position {pos}")
        num, op, var = m.groups()
        if num is not None:
            out.append(("num", num))
        elif var is not None:
            out.append(("var", "Z"))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    if not out:
        raise ParseError("empty expression")
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> Frac:
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.peek()[1]!r}")
        return val

    def expr(self) -> Frac:
        val = self.term()
        while (tok := self.peek()) and tok[1] in "+-" and tok[0] == "op":
            self.take()
            rhs = self.term()
            val = _add(val, rhs) if tok[1] == "+" else _add(val, _neg(rhs))
        return val

    def term(self) -> Frac:
        val = self.unary()
        while (tok := self.peek()) is not None:
            if tok == ("op", "*"):
                self.take()
                val = _mul(val, self.unary())
            elif tok == ("op", "/"):
                self.take()
                val = _div(val, self.unary())
            elif tok[0] in ("num", "var") or tok == ("op", "("):
                val = _mul(val, self.power())
            else:
                break
        return val

    def unary(self) -> Frac:
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return _neg(self.unary())
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Frac:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return _pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        paren = self.peek() == ("op", "(")
        if paren:
            self.take()
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        kind, text = self.take()
        if kind != "num" or not text.isdigit():
            raise ParseError(f"exponent must be an integer, got {text!r}")
        if paren:
            self.take(")")
        return sign * int(text)

    def atom(self) -> Frac:
        kind, text = self.take()
        if kind == "num":
            return QPoly.const(Fraction(text)), QPoly.const(1)
        if kind == "var":
            return QPoly.x(), QPoly.const(1)
        if text == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected token {text!r}")


def _add(a: Frac, b: Frac) -> Frac:
    if a[1] == b[1]:
        return a[0] + b[0], a[1]
    return a[0] * b[1] + b[0] * a[1], a[1] * b[1]


def _neg(a: Frac) -> Frac:
    return -a[0], a[1]


def _mul(a: Frac, b: Frac) -> Frac:
    return a[0] * b[0], a[1] * b[1]


def _div(a: Frac, b: Frac) -> Frac:
    if not b[0]:
        raise ParseError("division by zero")
    return a[0] * b[1], a[1] * b[0]


def _pow(a: Frac, k: int) -> Frac:
    if k < 0:
        if not a[0]:
            raise ParseError("division by zero")
        a, k = (a[1], a[0]), -k
    return a[0] ** k, a[1] ** k


def parse_fraction(text: str) -> Frac:
    """(numerator, denominator) exactly as written, not yet reduced."""
    return _Parser(text).parse()
