"""Multilinear components of the free graded Lie algebra.

A multilinear Lie polynomial in variables ``x_1..x_n`` is stored by its
coordinates over the basis ``N_sigma = [x_n, x_sigma(1), ..., x_sigma(n-1)]``
(pivot = variable of largest index).  Normalization goes through the free
associative algebra: the coefficient of ``N_sigma`` equals the coefficient of
the word ``x_n x_sigma(1) ... x_sigma(n-1)`` in the associative expansion,
since that word occurs in exactly one basis monomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence, Union

from .core import Field, Grading, QQ, ZZ


class MultilinearityError(ValueError):
    pass


class DegenerateGenerator(ValueError):
    """A generator instance that is zero in the free Lie algebra."""


@dataclass(frozen=True, order=True)
class Var:
    index: int
    degree: object = 0

    def __str__(self):
        d = self.degree
        ds = "(" + ",".join(map(str, d)) + ")" if isinstance(d, tuple) else str(d)
        return f"x{self.index}:{ds}"


@dataclass(frozen=True)
class Bracket:
    """Left-normed bracket ``[c1, c2, ..., ck]`` of at least two subexpressions."""

    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("a bracket needs at least two entries")

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.children) + "]"


Expr = Union[Var, Bracket]


def bracket(*children: Expr) -> Expr:
    if len(children) == 1:
        return children[0]
    return Bracket(tuple(children))


def variables(e: Expr) -> list[Var]:
    """Leaves of ``e`` in left-to-right order."""
    if isinstance(e, Var):
        return [e]
    out = []
    for c in e.children:
        out.extend(variables(c))
    return out


def check_multilinear(e: Expr) -> list[Var]:
    vs = variables(e)
    seen = set()
    for v in vs:
        if v.index in seen:
            raise MultilinearityError(f"variable x{v.index} occurs twice")
        seen.add(v.index)
    return vs


def substitute(e: Expr, mapping: dict) -> Expr:
    """Replace leaves ``x_i`` by ``mapping[i]`` (leaves not in the mapping stay)."""
    if isinstance(e, Var):
        return mapping.get(e.index, e)
    return Bracket(tuple(substitute(c, mapping) for c in e.children))


@dataclass(frozen=True)
class Monomial:
    """Left-normed commutator of single variables."""

    vars: tuple

    def __post_init__(self):
        if not self.vars:
            raise ValueError("empty monomial")
        if len({v.index for v in self.vars}) != len(self.vars):
            raise MultilinearityError("repeated variable in monomial")

    def expr(self) -> Expr:
        return bracket(*self.vars)

    def __str__(self):
        return str(self.expr())


def degree_sequence(m: Monomial) -> tuple:
    return tuple(v.degree for v in m.vars)


# associative expansion ------------------------------------------------------


def assoc_terms(e: Expr) -> list[tuple[int, tuple]]:
    """Unmerged signed words of the associative expansion of ``e``."""
    if isinstance(e, Var):
        return [(1, (e.index,))]
    acc = assoc_terms(e.children[0])
    for c in e.children[1:]:
        right = assoc_terms(c)
        acc = [(s * t, u + w) for s, u in acc for t, w in right] + [
            (-s * t, w + u) for s, u in acc for t, w in right
        ]
    return acc


def assoc_expand(e: Expr) -> dict[tuple, int]:
    """Associative expansion with duplicate words merged; zero words dropped."""
    out: dict[tuple, int] = {}
    for s, w in assoc_terms(e):
        out[w] = out.get(w, 0) + s
    return {w: c for w, c in out.items() if c}


def _pivot_words(e: Expr, pivot: int) -> dict[tuple, int]:
    """Coefficients of the words of ``e`` that start with ``pivot``."""
    return {w: c for w, c in assoc_expand(e).items() if w[0] == pivot}


# multilinear polynomials ----------------------------------------------------


def basis_keys(indices: Sequence[int]) -> list[tuple]:
    """The sigma keys for variable indices ``indices`` in lexicographic order."""
    idx = sorted(indices)
    return list(permutations(idx[:-1]))


@dataclass(frozen=True)
class MultilinearPoly:
    """Element of ``P_n^g`` given by coordinates over the ``N_sigma`` basis.

    ``context`` lists the variables sorted by index; ``coords`` maps a tuple of
    the non-pivot indices (the order after the pivot) to a field value.
    """

    context: tuple
    field: Field
    coords: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        clean = {k: v for k, v in self.coords.items() if not self.field.is_zero(v)}
        object.__setattr__(self, "coords", clean)

    def __eq__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return (self.context, self.field, self.coords) == (other.context, other.field, other.coords)

    def __hash__(self):
        return hash((self.context, self.field, tuple(sorted(self.coords.items()))))

    @property
    def n(self) -> int:
        return len(self.context)

    @property
    def pivot(self) -> Var:
        return self.context[-1]

    @property
    def degrees(self) -> tuple:
        return tuple(v.degree for v in self.context)

    def var(self, index: int) -> Var:
        for v in self.context:
            if v.index == index:
                return v
        raise KeyError(index)

    def keys(self) -> list[tuple]:
        return basis_keys([v.index for v in self.context])

    def basis_monomial(self, key: tuple) -> Monomial:
        return Monomial((self.pivot,) + tuple(self.var(i) for i in key))

    def vector(self) -> list:
        z = self.field.zero()
        return [self.coords.get(k, z) for k in self.keys()]

    @classmethod
    def from_vector(cls, context: tuple, field: Field, vec: Sequence) -> "MultilinearPoly":
        keys = basis_keys([v.index for v in context])
        return cls(context, field, dict(zip(keys, vec)))

    def is_zero(self) -> bool:
        return not self.coords

    def _same(self, other: "MultilinearPoly") -> None:
        if self.context != other.context or self.field != other.field:
            raise ValueError("polynomials live in different spaces")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = self.field.add(out.get(k, self.field.zero()), v)
        return MultilinearPoly(self.context, self.field, out)

    def __neg__(self):
        return MultilinearPoly(self.context, self.field, {k: self.field.neg(v) for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MultilinearPoly":
        return MultilinearPoly(self.context, self.field, {k: self.field.mul(c, v) for k, v in self.coords.items()})

    def terms(self) -> list[tuple[object, Expr]]:
        """(coefficient, N_sigma expression) pairs in basis order."""
        return [(self.coords[k], self.basis_monomial(k).expr()) for k in self.keys() if k in self.coords]

    def __str__(self):
        if not self.coords:
            return "0"
        f = self.field
        return " + ".join(f"({f.format(c)})*{e}" for c, e in self.terms())


def _coerce(field: Field, c):
    if isinstance(c, int):
        return field.from_int(c)
    if isinstance(c, Fraction):
        return field.from_fraction(c)
    return c


def normalize(terms: Iterable[tuple[object, Expr]], field: Field = QQ) -> MultilinearPoly:
    """Rewrite a linear combination of bracket expressions over the ``N_sigma`` basis.

    Coefficients may be ints, Fractions or raw values of ``field``.  All
    expressions must be multilinear in one common set of variables.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("cannot infer the variable set of an empty sum")
    context = None
    for _, e in terms:
        vs = tuple(sorted(check_multilinear(e)))
        if context is None:
            context = vs
        elif vs != context:
            raise MultilinearityError("terms use different variable sets")
    pivot = context[-1].index
    coords: dict[tuple, object] = {}
    zero = field.zero()
    for c, e in terms:
        c = _coerce(field, c)
        if field.is_zero(c):
            continue
        if isinstance(e, Var):
            coords[()] = field.add(coords.get((), zero), c)
            continue
        for w, k in _pivot_words(e, pivot).items():
            key = w[1:]
            coords[key] = field.add(coords.get(key, zero), field.mul(c, field.from_int(k)))
    return MultilinearPoly(context, field, coords)


def zero_poly(context: Sequence[Var], field: Field = QQ) -> MultilinearPoly:
    return MultilinearPoly(tuple(sorted(context)), field, {})


def basis_monomials(block: Sequence[Var]) -> list[Expr]:
    """The ``N_tau`` expressions on the variables of ``block``."""
    vs = sorted(block)
    if len(vs) == 1:
        return [vs[0]]
    return [Bracket((vs[-1],) + p) for p in permutations(vs[:-1])]


# generator families ----------------------------------------------------------

FAMILIES = ("comm_pair", "triple", "support_zero", "commuting_pair", "swap_lambda", "pauli_deg4")


def triple_coefficients(a: int, b: int, c: int) -> tuple[int, int]:
    """The pair (alpha, beta) of the degree-3 identity at degrees (a, b, c)."""
    return (c - a) * (b - c - a), (b - a) * (c - b - a)


def make_generator(family: str, params: Sequence, field: Field = QQ) -> MultilinearPoly:
    """Build one generator identity on variables ``x1, x2, ...``.

    ``params`` are the variable degrees, followed by the scalar ``lambda`` for
    ``swap_lambda`` and ``pauli_deg4`` (as a raw value of ``field``).  Side
    conditions (which instances are identities of which algebra) are not
    checked here.
    """
    params = list(params)
    if family in ("comm_pair", "commuting_pair"):
        g, h = params
        x1, x2 = Var(1, g), Var(2, h)
        return normalize([(1, Bracket((x1, x2)))], field)
    if family == "support_zero":
        (g,) = params
        return normalize([(1, Var(1, g))], field)
    if family == "triple":
        a, b, c = params
        alpha, beta = triple_coefficients(a, b, c)
        al, be = field.from_int(alpha), field.from_int(beta)
        if field.is_zero(al) and field.is_zero(be):
            raise DegenerateGenerator(f"triple{(a, b, c)} has alpha = beta = 0 in {field}")
        x1, x2, x3 = Var(1, a), Var(2, b), Var(3, c)
        return normalize([(al, Bracket((x1, x2, x3))), (field.neg(be), Bracket((x1, x3, x2)))], field)
    if family == "swap_lambda":
        g, h, k, lam = params
        x1, x2, x3 = Var(1, g), Var(2, h), Var(3, k)
        lam = _coerce(field, lam)
        return normalize([(1, Bracket((x1, x3, x2))), (field.neg(lam), Bracket((x1, x2, x3)))], field)
    if family == "pauli_deg4":
        g1, g2, g3, g4, lam = params
        x1, x2, x3, x4 = Var(1, g1), Var(2, g2), Var(3, g3), Var(4, g4)
        lam = _coerce(field, lam)
        return normalize([(1, Bracket((x4, x1, x2, x3))), (field.neg(lam), Bracket((x4, x3, x2, x1)))], field)
    raise ValueError(f"unknown generator family {family!r}")


def standard_context(degrees: Sequence, grading: Grading = ZZ) -> tuple:
    """Variables ``x1..xn`` carrying ``degrees``."""
    return tuple(Var(i + 1, grading.reduce(d)) for i, d in enumerate(degrees))
