"""Independence of the U_1 basis identities via graded upper triangular algebras.

A generator ``f`` is not a consequence of a set ``S`` as soon as some graded
algebra satisfies every member of ``S`` but not ``f``.  The witnesses used
here are nilpotent, so their supports are finite and "satisfies every member
of S" reduces to finitely many exhaustive checks: an identity any of whose
variable degrees lies outside the support holds vacuously.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterable

from .algebras import StructureAlgebra, from_matrices
from .core import Field, PrimeField, QQ, field_for_char, is_prime
from .freelie import Bracket, DegenerateGenerator, MultilinearPoly, Var, make_generator, normalize
from .tideal import CommPair, Family, consequence_span


class PreconditionError(ValueError):
    pass


def _unit(field: Field, n: int, i: int, j: int):
    z, one = field.zero(), field.one()
    return [[one if (r, c) == (i - 1, j - 1) else z for c in range(n)] for r in range(n)]


def build_H(r: int, s: int, field: Field = QQ) -> StructureAlgebra:
    """UT(3) graded by deg E12 = r, deg E23 = s, deg E13 = r + s."""
    units = [(1, 2), (2, 3), (1, 3)]
    return from_matrices(
        [f"E{i}{j}" for i, j in units],
        [_unit(field, 3, i, j) for i, j in units],
        [r, s, r + s],
        field,
        name=f"H({r},{s})",
    )


def build_L4(a: int, b: int, c: int, field: Field = QQ) -> StructureAlgebra:
    """UT(4) graded so that E12, E23, E34 have degrees a, b, c."""
    units = [(1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4)]
    degrees = [a, b, c, a + b, b + c, a + b + c]
    return from_matrices(
        [f"E{i}{j}" for i, j in units],
        [_unit(field, 4, i, j) for i, j in units],
        degrees,
        field,
        name=f"L({a},{b},{c})",
    )


@dataclass
class Violation:
    family: str
    params: tuple
    substitution: tuple
    value: str

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "params": [str(x) for x in self.params],
            "substitution": list(self.substitution),
            "value": self.value,
        }


@dataclass
class IndependenceEvidence:
    """Outcome of one independence check.

    ``target`` is the failing substitution of the generator under test (None
    if the witness algebra satisfies it); ``violations`` lists other
    generators the witness algebra fails, which spoil the argument.
    """

    kind: str
    params: tuple
    char: int
    algebra: str
    target: Violation | None
    violations: list = dc_field(default_factory=list)
    checked: int = 0

    @property
    def independent(self) -> bool:
        return self.target is not None and not self.violations

    def __bool__(self):
        return self.independent

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": [str(x) for x in self.params],
            "char": str(self.char),
            "algebra": self.algebra,
            "independent": self.independent,
            "target": None if self.target is None else self.target.as_dict(),
            "violations": [v.as_dict() for v in self.violations],
            "checked": self.checked,
        }


def _violation(L: StructureAlgebra, P: MultilinearPoly, family: str, params: tuple) -> Violation | None:
    hit = L.find_violation(P)
    if hit is None:
        return None
    labels, value = hit
    return Violation(family, params, labels, L.format_element(value))


def _congruent(u: int, v: int, char: int) -> bool:
    return u == v if char == 0 else (u - v) % char == 0


def _pair_field(char: int) -> Field:
    if char != 0 and (char == 2 or not is_prime(char)):
        raise PreconditionError(f"characteristic must be 0 or an odd prime, got {char}")
    return field_for_char(char)


def _check_pairs(L: StructureAlgebra, field: Field, char: int, skip, evidence: IndependenceEvidence,
                 allowed=lambda u, v: True) -> None:
    supp = sorted(L.support())
    for u, v in product(supp, repeat=2):
        if not _congruent(u, v, char) or skip(u, v) or not allowed(u, v):
            continue
        evidence.checked += 1
        bad = _violation(L, make_generator("comm_pair", (u, v), field), "comm_pair", (u, v))
        if bad:
            evidence.violations.append(bad)


def check_pair_independence(r: int, s: int, p: int = 0) -> IndependenceEvidence:
    """Is ``[x1^r, x2^s]`` independent of the other basis identities?

    Witness: ``build_H(r, s)``.  It must fail ``[x^r, x^s]`` and satisfy every
    triple identity and every other congruent pair with degrees in its
    support.
    """
    field = _pair_field(p)
    if not _congruent(r, s, p):
        want = "r = s" if p == 0 else f"r = s mod {p}"
        raise PreconditionError(f"pair ({r}, {s}) violates {want}")
    H = build_H(r, s, field)
    target = _violation(H, make_generator("comm_pair", (r, s), field), "comm_pair", (r, s))
    ev = IndependenceEvidence("pair", (r, s), p, H.name, target)
    _check_pairs(H, field, p, lambda u, v: {u, v} == {r, s}, ev)
    for a, b, c in product(sorted(H.support()), repeat=3):
        try:
            P = make_generator("triple", (a, b, c), field)
        except DegenerateGenerator:
            continue
        ev.checked += 1
        bad = _violation(H, P, "triple", (a, b, c))
        if bad:
            ev.violations.append(bad)
    return ev


def triple_incongruences(a: int, b: int, c: int, p: int) -> dict:
    """The congruence side conditions of a triple generator, each True when it holds."""
    return {
        "a!=b": (a - b) % p != 0,
        "a!=c": (a - c) % p != 0,
        "a!=b+c": (a - b - c) % p != 0,
        "b!=a+c": (b - a - c) % p != 0,
        "b!=c": (b - c) % p != 0,
        "c!=a+b": (c - a - b) % p != 0,
    }


LITERAL_TRIPLE_CONDITIONS = ("a!=b", "a!=c", "a!=b+c", "b!=a+c")


def _triple_ok(a: int, b: int, c: int, p: int, strict: bool) -> bool:
    conds = triple_incongruences(a, b, c, p)
    names = conds if strict else LITERAL_TRIPLE_CONDITIONS
    return a > b > c and all(conds[k] for k in names)


def check_triple_independence(a: int, b: int, c: int, p: int) -> IndependenceEvidence:
    """Is the triple identity at degrees (a, b, c) independent of the rest in characteristic p?

    Witness: ``build_L4(a, b, c)``.  It must fail the triple identity and
    satisfy every congruent pair ``[x^u, x^v]`` and both monomials
    ``[x^a', x^b', x^c']``, ``[x^a', x^c', x^b']`` for every other
    ``a' > b' > c'`` in its support.
    """
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"p must be an odd prime, got {p}")
    if not _triple_ok(a, b, c, p, strict=False):
        raise PreconditionError(f"triple ({a}, {b}, {c}) fails a > b > c or the incongruences mod {p}")
    field = PrimeField(p)
    L = build_L4(a, b, c, field)
    try:
        P = make_generator("triple", (a, b, c), field)
        target = _violation(L, P, "triple", (a, b, c))
    except DegenerateGenerator:
        target = None
    ev = IndependenceEvidence("triple", (a, b, c), p, L.name, target)
    _check_pairs(L, field, p, lambda u, v: False, ev)
    for t in product(sorted(L.support()), repeat=3):
        if not t[0] > t[1] > t[2] or t == (a, b, c):
            continue
        for order, name in (((0, 1, 2), "monomial"), ((0, 2, 1), "monomial_swapped")):
            vs = [Var(i + 1, t[i]) for i in range(3)]
            M = normalize([(1, Bracket(tuple(vs[i] for i in order)))], field)
            ev.checked += 1
            bad = _violation(L, M, name, t)
            if bad:
                ev.violations.append(bad)
    return ev


def minimal_filter(kind: str, params, p: int = 0, strict: bool = False) -> bool:
    """Membership in the minimal generating family.

    Pairs ``(a, b)``: ``b - a >= 0`` and divisible by p (char 0: a = b).
    Triples ``(a, b, c)``: ``a > b > c`` and the incongruences in
    ``LITERAL_TRIPLE_CONDITIONS``.  ``strict`` also requires ``b != c`` and
    ``c != a + b`` mod p; when either fails the triple identity is a multiple
    of a pair identity bracketed with one more variable (see
    ``pair_reducible``).
    """
    if kind == "pair":
        a, b = params
        return b - a >= 0 and _congruent(a, b, p)
    if kind == "triple":
        if p == 0:
            raise ValueError("the triple filter needs an odd prime")
        a, b, c = params
        return _triple_ok(a, b, c, p, strict)
    raise ValueError(f"unknown generator kind {kind!r}")


def pair_reducible(a: int, b: int, c: int, p: int) -> bool:
    """Is the triple identity at (a, b, c) a consequence of the pair identities mod p?

    Decided by membership in the consequence span of all congruent pairs
    inside ``P_3`` at these degrees.
    """
    field = PrimeField(p)
    try:
        P = make_generator("triple", (a, b, c), field)
    except DegenerateGenerator:
        return True
    span = consequence_span([CommPair(p)], (a, b, c), field)
    return span.contains(P.vector())


def pair_family(level: int, p: int) -> list[tuple]:
    """Filtered pairs ``(r, s)`` with ``max(|r|, |s|) == level``."""
    rng = range(-level, level + 1)
    return [(r, s) for r, s in product(rng, repeat=2)
            if max(abs(r), abs(s)) == level and minimal_filter("pair", (r, s), p)]


class PairSet(Family):
    """Pair generators ``[x1^r, x2^s]`` restricted to an explicit finite set."""

    name = "comm_pair"
    arity = 2

    def __init__(self, pairs: Iterable[tuple]):
        self.pairs = set()
        for r, s in pairs:
            self.pairs.add((r, s))
            self.pairs.add((s, r))

    def instance(self, degrees, field):
        if tuple(degrees) not in self.pairs:
            return None
        return make_generator("comm_pair", degrees, field)


@dataclass
class LevelEvidence:
    level: int
    target: tuple
    in_span: bool
    witness: IndependenceEvidence

    @property
    def independent(self) -> bool:
        return not self.in_span and self.witness.independent

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "target": [str(x) for x in self.target],
            "in_span": self.in_span,
            "witness": self.witness.as_dict(),
            "independent": self.independent,
        }


def no_finite_basis_evidence(N: int, p: int = 5) -> list[LevelEvidence]:
    """Every level ``N + 1`` pair generator against all pair generators of level ``<= N``.

    Two checks per target: it is not in the consequence span of the lower
    generators inside its own degree-2 space, and ``build_H`` of the target
    fails it while satisfying every lower generator.
    """
    field = _pair_field(p)
    lower = [t for lvl in range(N + 1) for t in pair_family(lvl, p)]
    gens = [PairSet(lower)]
    out = []
    for r, s in pair_family(N + 1, p):
        P = make_generator("comm_pair", (r, s), field)
        span = consequence_span(gens, (r, s), field)
        H = build_H(r, s, field)
        target = _violation(H, P, "comm_pair", (r, s))
        ev = IndependenceEvidence("pair", (r, s), p, H.name, target)
        allowed = {(u, v) for u, v in PairSet(lower).pairs}
        _check_pairs(H, field, p, lambda u, v: False, ev, allowed=lambda u, v: (u, v) in allowed)
        out.append(LevelEvidence(N + 1, (r, s), span.contains(P.vector()), ev))
    return out
