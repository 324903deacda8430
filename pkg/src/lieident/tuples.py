"""Good/bad classification of degree tuples for U_1.

``classify`` applies the closed-form characterization of bad tuples (in
characteristic 0 and p); ``oracle_classify`` decides the same question by
folding every left-normed order of the variables, which span ``P_n^g``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from .algebras import ThinAlgebra, eval_degrees_thin, make_thin
from .core import field_for_char

ORACLE_BOUND = 7


class BoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class TupleClass:
    """Verdict plus certificate.

    Good verdicts carry ``witness``: positions (0-based) whose left-normed
    order evaluates to a nonzero multiple.  Bad verdicts from the closed form
    carry ``pattern`` and, for the matched-negatives pattern, the base degree
    and the multiplicities ``lambdas``.
    """

    verdict: str
    witness: tuple | None = None
    pattern: str | None = None
    base: int | None = None
    lambdas: tuple = ()
    g_count: int | None = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def good(self) -> bool:
        return self.verdict == "good"


def compact(g: Sequence[int], char: int = 0) -> list[int]:
    """Entries of ``g`` that are nonzero (char 0) or nonzero residues mod p (kept as residues)."""
    if char == 0:
        return [a for a in g if a != 0]
    return [a % char for a in g if a % char]


def _bad_base(entries: list[int], char: int):
    """Smallest-|g| base degree making ``entries`` a bad pattern, as (g, lambdas, count)."""
    counts = Counter(entries)
    for g in sorted(counts, key=lambda x: (abs(x), x)):
        lambdas = []
        ok = True
        for a, m in counts.items():
            if a == g:
                continue
            if char == 0:
                # a must be -lambda*g with lambda >= 1
                if a % g or -a // g < 1:
                    ok = False
                    break
                lam = -a // g
            else:
                lam = (-a * pow(g, -1, char)) % char
            lambdas.extend([lam] * m)
        if ok and counts[g] >= sum(lambdas) + 2:
            return g, tuple(sorted(lambdas)), counts[g]
    return None


def classify(g: Sequence[int], char: int = 0) -> TupleClass:
    """Closed-form classification for U_1 in characteristic ``char`` (0 or odd prime)."""
    g = tuple(g)
    if not g:
        raise ValueError("empty tuple")
    n = len(g)
    c = compact(g, char)
    if not c:
        if n == 1:
            return TupleClass("good", witness=(0,), pattern="single-variable")
        return TupleClass("bad", pattern="all-zero-residues")
    if len(c) == 1:
        return TupleClass("good", pattern="single-nonzero")
    hit = _bad_base(c, char)
    if hit is None:
        return TupleClass("good")
    base, lambdas, count = hit
    pattern = "all-equal-g" if not lambdas else "matched-negatives"
    return TupleClass("bad", pattern=pattern, base=base, lambdas=lambdas, g_count=count)


def _check_bound(n: int, bound: int) -> None:
    if n > bound:
        raise BoundExceeded(f"tuple length {n} exceeds the oracle bound {bound}")


def standard_order(g: Sequence, A: ThinAlgebra, bound: int = ORACLE_BOUND) -> tuple | None:
    """Positions ``pi`` with ``[x_pi(1), ..., x_pi(n)]`` not an identity, or None if bad.

    Orders are tried in lexicographic order of positions; orders that repeat a
    degree sequence already tried are skipped.
    """
    g = tuple(g)
    _check_bound(len(g), bound)
    seen = set()
    f = A.field
    for pi in permutations(range(len(g))):
        seq = tuple(g[i] for i in pi)
        if seq in seen:
            continue
        seen.add(seq)
        if not f.is_zero(eval_degrees_thin(seq, A)[0]):
            return pi
    return None


def oracle_classify(g: Sequence, A: ThinAlgebra, bound: int = ORACLE_BOUND) -> TupleClass:
    pi = standard_order(g, A, bound)
    if pi is None:
        return TupleClass("bad", pattern="oracle-exhausted")
    return TupleClass("good", witness=pi)


def u1(char: int = 0) -> ThinAlgebra:
    return make_thin("u1", field_for_char(char))


def is_standard(g: Sequence, A: ThinAlgebra) -> bool:
    return not A.field.is_zero(eval_degrees_thin(tuple(g), A)[0])
