"""Consequence spans, evaluation kernels and tuple-by-tuple basis verification.

For a degree tuple ``g`` the identities of a thin algebra inside ``P_n^g``
form the kernel of one linear functional (evaluation at the canonical basis
vectors).  The consequences of a generator set inside ``P_n^g`` are spanned
by ``[f(m_1, ..., m_k), x_j1, ..., x_jt]`` where ``f`` is a generator
instance, each ``m_i`` is a basis monomial on a block of variables and the
remaining variables are appended in every order.  A basis theorem holds on
``P_n^g`` iff the two subspaces coincide.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations, combinations_with_replacement, permutations, product
from math import factorial
from typing import Iterable, Iterator, Sequence

from .algebras import ThinAlgebra, derive_pauli_lambda, derive_swap_lambda, functional
from .core import Field, ZZ
from .freelie import (
    Bracket,
    DegenerateGenerator,
    MultilinearPoly,
    Var,
    basis_keys,
    basis_monomials,
    make_generator,
    normalize,
    standard_context,
    substitute,
)
from .linalg import Subspace, nullspace
from .tuples import TupleClass, classify, oracle_classify

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 5
LARGE_MAX_N = 6


class BoundExceeded(ValueError):
    pass


def check_bound(n: int, allow_large: bool = False) -> None:
    limit = LARGE_MAX_N if allow_large else DEFAULT_MAX_N
    if n > limit:
        hint = "" if allow_large else " (n = 6 needs allow_large)"
        raise BoundExceeded(f"n = {n} exceeds the bound {limit}{hint}")


# generator families ----------------------------------------------------------------


class Family:
    """A family of generator identities instantiated at given variable degrees.

    ``instance`` returns the generator on variables ``x1..xk`` carrying the
    block degrees, or None when the family has no member there.
    """

    name = "family"
    arity = 0

    def instance(self, degrees: tuple, field: Field) -> MultilinearPoly | None:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}()"


class CommPair(Family):
    """``[x1^r, x2^s]`` with r = s (char 0) or r = s mod p."""

    name = "comm_pair"
    arity = 2

    def __init__(self, char: int = 0):
        self.char = char

    def applies(self, r: int, s: int) -> bool:
        return r == s if self.char == 0 else (r - s) % self.char == 0

    def instance(self, degrees, field):
        r, s = degrees
        if not self.applies(r, s):
            return None
        return make_generator("comm_pair", (r, s), field)

    def __repr__(self):
        return f"CommPair(char={self.char})"


class Triple(Family):
    """``alpha [x1^a, x2^b, x3^c] - beta [x1^a, x3^c, x2^b]``, skipped when degenerate."""

    name = "triple"
    arity = 3

    def instance(self, degrees, field):
        try:
            return make_generator("triple", degrees, field)
        except DegenerateGenerator:
            return None


class SupportZero(Family):
    """``x^c`` for degrees outside the support; for W_1 this is c <= -2."""

    name = "support_zero"
    arity = 1

    def __init__(self, max_degree: int = -2):
        self.max_degree = max_degree

    def instance(self, degrees, field):
        (c,) = degrees
        if c > self.max_degree:
            return None
        return make_generator("support_zero", (c,), field)

    def __repr__(self):
        return f"SupportZero(c<={self.max_degree})"


class CommutingPair(Family):
    """``[x1^g, x2^h]`` with ``[L_g, L_h] = 0`` and g + h in the support of a thin algebra."""

    name = "commuting_pair"
    arity = 2

    def __init__(self, algebra: ThinAlgebra):
        self.algebra = algebra

    def instance(self, degrees, field):
        A = self.algebra
        g, h = degrees
        if not A.supports(A.grading.add(g, h)):
            return None
        if not (A.supports(g) and A.supports(h)) or A.field.is_zero(A.c(g, h)):
            return make_generator("commuting_pair", (g, h), field)
        return None


class SwapLambda(Family):
    """``[x1^g, x3^k, x2^h] - lambda [x1^g, x2^h, x3^k]`` with lambda read off the algebra."""

    name = "swap_lambda"
    arity = 3

    def __init__(self, algebra: ThinAlgebra):
        self.algebra = algebra

    def instance(self, degrees, field):
        lam = derive_swap_lambda(*degrees, self.algebra)
        if lam is None:
            return None
        return make_generator("swap_lambda", (*degrees, lam), field)


class PauliDeg4(Family):
    """``[x4, x1, x2, x3] - lambda [x4, x3, x2, x1]`` with lambda read off the algebra."""

    name = "pauli_deg4"
    arity = 4

    def __init__(self, algebra: ThinAlgebra):
        self.algebra = algebra

    def instance(self, degrees, field):
        lam = derive_pauli_lambda(degrees, self.algebra)
        if lam is None:
            return None
        return make_generator("pauli_deg4", (*degrees, lam), field)


class SupportZeroThin(Family):
    """``x^g`` for g outside the support of a thin algebra."""

    name = "support_zero"
    arity = 1

    def __init__(self, algebra: ThinAlgebra):
        self.algebra = algebra

    def instance(self, degrees, field):
        (g,) = degrees
        if self.algebra.supports(g):
            return None
        return make_generator("support_zero", (g,), field)


def u1_generators(char: int = 0) -> list[Family]:
    return [CommPair(char), Triple()]


def w1_generators(char: int = 0) -> list[Family]:
    return [CommPair(char), Triple(), SupportZero(-2)]


def thin_generators(A: ThinAlgebra, deg4: bool = False) -> list[Family]:
    fams: list[Family] = [SupportZeroThin(A), CommutingPair(A), SwapLambda(A)]
    if deg4:
        fams.append(PauliDeg4(A))
    return fams


# ambient spaces -------------------------------------------------------------------


@dataclass(frozen=True)
class Ambient:
    """``P_n^g`` with its ordered ``N_sigma`` basis."""

    context: tuple
    field: Field

    @classmethod
    def of(cls, g: Sequence, field: Field, grading=ZZ) -> "Ambient":
        return cls(standard_context(g, grading), field)

    @property
    def n(self) -> int:
        return len(self.context)

    @property
    def keys(self) -> list[tuple]:
        return basis_keys([v.index for v in self.context])

    @property
    def dim(self) -> int:
        return factorial(self.n - 1)

    def empty(self) -> Subspace:
        return Subspace(self.field, self.dim)

    def poly(self, vec: Sequence) -> MultilinearPoly:
        return MultilinearPoly.from_vector(self.context, self.field, vec)


def identity_kernel(g: Sequence, A: ThinAlgebra, allow_large: bool = False) -> Subspace:
    """Identities of ``A`` inside ``P_n^g``: the kernel of the evaluation functional."""
    check_bound(len(g), allow_large)
    amb = Ambient.of(g, A.field, A.grading)
    phi = functional(amb.context, amb.keys, A)
    return Subspace(A.field, amb.dim, nullspace(A.field, [phi], amb.dim))


def _ordered_partitions(items: Sequence, k: int) -> Iterator[tuple]:
    """Ordered partitions of ``items`` into ``k`` nonempty blocks."""
    for labels in product(range(k), repeat=len(items)):
        if len(set(labels)) < k:
            continue
        yield tuple(tuple(x for x, l in zip(items, labels) if l == b) for b in range(k))


@dataclass(frozen=True)
class ConsequenceRow:
    poly: MultilinearPoly
    family: str
    params: tuple


def consequence_rows(gens: Iterable[Family], g: Sequence, field: Field, grading=ZZ,
                     allow_large: bool = False) -> Iterator[ConsequenceRow]:
    """Every spanning consequence ``[f(N_tau1, ..., N_tauk), x_j1, ..., x_jt]`` in ``P_n^g``."""
    check_bound(len(g), allow_large)
    amb = Ambient.of(g, field, grading)
    vs = amb.context
    n = len(vs)
    for fam in gens:
        k = fam.arity
        cache: dict[tuple, MultilinearPoly | None] = {}
        for size in range(k, n + 1):
            for S in combinations(vs, size):
                rest = tuple(v for v in vs if v not in S)
                for blocks in _ordered_partitions(S, k):
                    degs = tuple(grading.sum(v.degree for v in B) for B in blocks)
                    if degs not in cache:
                        cache[degs] = fam.instance(degs, field)
                    inst = cache[degs]
                    if inst is None:
                        continue
                    gen_terms = inst.terms()
                    for monos in product(*(basis_monomials(B) for B in blocks)):
                        sub = {i + 1: m for i, m in enumerate(monos)}
                        inner = [(c, substitute(e, sub)) for c, e in gen_terms]
                        for outer in permutations(rest):
                            terms = [(c, Bracket((e,) + outer)) if outer else (c, e) for c, e in inner]
                            yield ConsequenceRow(normalize(terms, field), fam.name, degs)


def consequence_span(gens: Iterable[Family], g: Sequence, field: Field, grading=ZZ,
                     allow_large: bool = False) -> Subspace:
    gens = list(gens)
    amb = Ambient.of(g, field, grading)
    span = amb.empty()
    seen = set()
    for row in consequence_rows(gens, g, field, grading, allow_large):
        vec = tuple(row.poly.vector())
        if vec in seen:
            continue
        seen.add(vec)
        span.add(vec)
        if span.is_full():
            break
    return span


def is_member(P: MultilinearPoly, S: Subspace) -> bool:
    if P.field != S.field or factorial(P.n - 1) != S.dim:
        raise ValueError("polynomial and subspace live in different ambient spaces")
    return S.contains(P.vector())


# verification ---------------------------------------------------------------------


@dataclass
class TupleVerdict:
    tuple: tuple
    classification: str
    dim_ambient: int
    dim_kernel: int
    dim_span: int
    span_subset_kernel: bool
    kernel_subset_span: bool
    good_equivalence: bool | None = None
    closed_form: str | None = None
    flags: list = dc_field(default_factory=list)
    unsound_rows: list = dc_field(default_factory=list)
    kernel_rows: list | None = None
    span_rows: list | None = None

    @property
    def verified(self) -> bool:
        return self.span_subset_kernel and self.kernel_subset_span

    def as_dict(self) -> dict:
        d = {
            "tuple": [str(x) for x in self.tuple],
            "classification": self.classification,
            "dim_ambient": self.dim_ambient,
            "dim_kernel": self.dim_kernel,
            "dim_span": self.dim_span,
            "span_subset_kernel": self.span_subset_kernel,
            "kernel_subset_span": self.kernel_subset_span,
            "verified": self.verified,
        }
        if self.good_equivalence is not None:
            d["good_equivalence"] = self.good_equivalence
        if self.closed_form is not None:
            d["closed_form"] = self.closed_form
        if self.flags:
            d["flags"] = list(self.flags)
        if self.kernel_rows is not None:
            d["kernel_rows"] = self.kernel_rows
            d["span_rows"] = self.span_rows
        return d


W1_SUPPORT_NOTE = "support generator used at c = -2: W1 vanishes in every degree <= -2, including -2 itself"


def verify_tuple(g: Sequence[int], A: ThinAlgebra, gens: Sequence[Family],
                 allow_large: bool = False, keep_rows: bool = False) -> TupleVerdict:
    """Compare the consequence span of ``gens`` with the identity kernel of ``A`` on ``P_n^g``.

    Every generated consequence is evaluated (soundness).  Once the span
    reaches the kernel dimension with all consequences sound, the two spaces
    coincide and further sound rows need no reduction.  ``keep_rows`` stores
    both echelon forms as formatted strings.
    """
    g = tuple(g)
    check_bound(len(g), allow_large)
    field = A.field
    amb = Ambient.of(g, field, A.grading)
    phi = functional(amb.context, amb.keys, A)
    kernel = Subspace(field, amb.dim, nullspace(field, [phi], amb.dim))
    span = amb.empty()
    sound = True
    unsound = []
    flags: list[str] = []
    seen = set()
    for row in consequence_rows(gens, g, field, A.grading, allow_large):
        if row.family == "support_zero" and row.params == (-2,) and W1_SUPPORT_NOTE not in flags:
            flags.append(W1_SUPPORT_NOTE)
        vec = tuple(row.poly.vector())
        if vec in seen:
            continue
        seen.add(vec)
        if not field.is_zero(field.dot(vec, phi)):
            sound = False
            unsound.append((row.family, row.params))
            span.add(vec)
            continue
        if sound and span.rank == kernel.rank:
            continue
        span.add(vec)

    span_in_kernel = sound and span.issubset(kernel)
    kernel_in_span = kernel.issubset(span)
    oracle = oracle_classify(g, A)
    closed = classify(g, field.characteristic).verdict if A.name == "u1" else None
    equiv = None
    if oracle.good:
        equiv = _good_equivalence(amb, phi, span)
    return TupleVerdict(
        tuple=g,
        classification=oracle.verdict,
        dim_ambient=amb.dim,
        dim_kernel=kernel.rank,
        dim_span=span.rank,
        span_subset_kernel=span_in_kernel,
        kernel_subset_span=kernel_in_span,
        good_equivalence=equiv,
        closed_form=closed,
        flags=flags,
        unsound_rows=unsound,
        kernel_rows=_format_rows(field, kernel) if keep_rows else None,
        span_rows=_format_rows(field, span) if keep_rows else None,
    )


def _format_rows(field: Field, S: Subspace) -> list:
    return [[field.format(x) for x in r] for r in S.rows]


def _good_equivalence(amb: Ambient, phi: list, span: Subspace) -> bool:
    """All non-identity ``N_sigma`` are scalar multiples of one another modulo ``span``.

    Checked against one reference monomial; the relation is an equivalence.
    """
    f = amb.field
    live = [i for i, v in enumerate(phi) if not f.is_zero(v)]
    ref = live[0]
    for i in live[1:]:
        lam = f.div(phi[i], phi[ref])
        vec = [f.zero()] * amb.dim
        vec[i] = f.one()
        vec[ref] = f.neg(lam)
        if not span.contains(vec):
            return False
    return True


@dataclass
class VerificationReport:
    algebra: str
    field: str
    parameters: dict
    verdicts: list[TupleVerdict]
    notes: list = dc_field(default_factory=list)

    @property
    def counterexamples(self) -> list[tuple]:
        return [v.tuple for v in self.verdicts if not v.verified]

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "field": self.field,
            "parameters": self.parameters,
            "passed": self.passed,
            "tuples": len(self.verdicts),
            "counterexamples": [[str(x) for x in t] for t in self.counterexamples],
            "notes": list(self.notes),
            "verdicts": [v.as_dict() for v in self.verdicts],
        }


def grid(n_range: Iterable[int], entry_range: tuple[int, int]) -> list[tuple]:
    """Sorted multiset representatives, ordered by length then lexicographically."""
    lo, hi = entry_range
    return [t for n in n_range for t in combinations_with_replacement(range(lo, hi + 1), n)]


def sweep(n_range: Iterable[int], entry_range: tuple[int, int], A: ThinAlgebra,
          gens: Sequence[Family], allow_large: bool = False, workers: int = 1,
          keep_rows: bool = False) -> VerificationReport:
    """Verify every tuple multiset of the grid; verdicts come back in canonical order."""
    n_range = list(n_range)
    for n in n_range:
        check_bound(n, allow_large)
    tuples = grid(n_range, entry_range)
    if workers > 1:
        # algebras hold lambdas and are rebuilt inside the workers
        with ProcessPoolExecutor(workers) as pool:
            jobs = [(t, A.name, A.field, _gens_spec(gens), allow_large, keep_rows) for t in tuples]
            verdicts = list(pool.map(_sweep_worker, jobs))
    else:
        verdicts = [verify_tuple(t, A, gens, allow_large, keep_rows) for t in tuples]
    notes = sorted({fl for v in verdicts for fl in v.flags})
    return VerificationReport(
        algebra=A.name,
        field=str(A.field),
        parameters={
            "n_range": [min(n_range), max(n_range)],
            "entry_range": list(entry_range),
            "generators": [repr(f) for f in gens],
        },
        verdicts=verdicts,
        notes=notes,
    )


def _gens_spec(gens: Sequence[Family]) -> list:
    spec = []
    for f in gens:
        if isinstance(f, CommPair):
            spec.append(("comm_pair", f.char))
        elif isinstance(f, Triple):
            spec.append(("triple", None))
        elif isinstance(f, SupportZero):
            spec.append(("support_zero", f.max_degree))
        else:
            raise ValueError(f"{f!r} cannot be shipped to worker processes")
    return spec


def _sweep_worker(args):
    from .algebras import make_thin

    g, name, field, spec, allow_large, keep_rows = args
    A = make_thin(name, field)
    build = {"comm_pair": CommPair, "triple": lambda _: Triple(), "support_zero": SupportZero}
    gens = [build[kind](arg) for kind, arg in spec]
    return verify_tuple(g, A, gens, allow_large, keep_rows)
