"""Text form of graded Lie polynomials.

Grammar (whitespace is ignored)::

    poly   := [sign] term (sign term)*
    term   := [coeff '*'] elem
    coeff  := int ['/' int]
    elem   := var | '[' elem (',' elem)+ ']'
    var    := 'x' index ':' degree
    degree := int | '(' int ',' int ')'

A bracket with three or more entries is left-normed.  ``format_poly`` is the
inverse: ``parse_poly(format_poly(t)) == t``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import Field, Grading, QQ, ZZ
from .freelie import Bracket, Expr, MultilinearPoly, MultilinearityError, Var, normalize


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.degree_kind = None

    def error(self, msg, pos=None):
        return ParseError(msg, self.i if pos is None else pos, self.text)

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, got {got}")
        self.i += 1

    def integer(self, signed: bool = True) -> int:
        self.skip()
        start = self.i
        if signed and self.peek() in ("+", "-"):
            self.i += 1
            self.skip()
        digits = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == digits:
            raise self.error("expected an integer", start)
        return int("".join(self.text[start:self.i].split()))

    def poly(self) -> list[tuple[Fraction, Expr]]:
        terms = []
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        terms.append(self.term(sign))
        while self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
            terms.append(self.term(sign))
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return terms

    def term(self, sign: int) -> tuple[Fraction, Expr]:
        coeff = Fraction(1)
        if self.peek().isdigit():
            num = self.integer(signed=False)
            den = 1
            if self.peek() == "/":
                self.i += 1
                pos = self.i
                den = self.integer(signed=False)
                if den == 0:
                    raise self.error("zero denominator", pos)
            coeff = Fraction(num, den)
            self.expect("*")
        start = self.i
        e = self.elem()
        seen = set()
        for v in _leaves(e):
            if v.index in seen:
                raise MultilinearityError(f"variable x{v.index} repeated in the term at position {start}")
            seen.add(v.index)
        return sign * coeff, e

    def elem(self) -> Expr:
        ch = self.peek()
        if ch == "[":
            self.i += 1
            children = [self.elem()]
            while self.peek() == ",":
                self.i += 1
                children.append(self.elem())
            if len(children) < 2:
                raise self.error("a bracket needs at least two entries")
            self.expect("]")
            return Bracket(tuple(children))
        if ch == "x":
            return self.var()
        raise self.error(f"expected a variable or '[', got {ch!r}" if ch else "unexpected end of input")

    def var(self) -> Var:
        self.expect("x")
        pos = self.i
        index = self.integer(signed=False)
        if index < 1:
            raise self.error("variable indices start at 1", pos)
        self.expect(":")
        pos = self.i
        if self.peek() == "(":
            self.i += 1
            first = self.integer()
            self.expect(",")
            second = self.integer()
            self.expect(")")
            degree, kind = (first, second), "pair"
        else:
            degree, kind = self.integer(), "int"
        if self.degree_kind is None:
            self.degree_kind = kind
        elif self.degree_kind != kind:
            raise self.error("integer and pair degrees mixed", pos)
        return Var(index, degree)


def _leaves(e: Expr):
    if isinstance(e, Var):
        yield e
    else:
        for c in e.children:
            yield from _leaves(c)


def parse_poly(text: str) -> list[tuple[Fraction, Expr]]:
    """Parse ``text`` into (coefficient, expression) pairs in input order."""
    return _Parser(text).poly()


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.elem()
    if p.peek():
        raise p.error(f"unexpected {p.peek()!r}")
    return e


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(terms: Sequence[tuple[Fraction, Expr]]) -> str:
    if not terms:
        raise ValueError("the grammar has no empty sum")
    parts = []
    for k, (c, e) in enumerate(terms):
        c = Fraction(c)
        neg = c < 0
        mag = "" if abs(c) == 1 else format_coeff(abs(c)) + "*"
        if k == 0:
            parts.append(("-" if neg else "") + mag + str(e))
        else:
            parts.append((" - " if neg else " + ") + mag + str(e))
    return "".join(parts)


def reduce_degrees(e: Expr, grading: Grading) -> Expr:
    if isinstance(e, Var):
        return Var(e.index, grading.reduce(e.degree))
    return Bracket(tuple(reduce_degrees(c, grading) for c in e.children))


def to_poly(text: str, field: Field = QQ, grading: Grading = ZZ) -> MultilinearPoly:
    """Parse and normalize over the ``N_sigma`` basis of ``field``; degrees are reduced in ``grading``."""
    terms = [(c, reduce_degrees(e, grading)) for c, e in parse_poly(text)]
    return normalize(terms, field)
