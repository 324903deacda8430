"""Runners for the bounded verification suite.

Each ``criterion_k`` performs one exhaustive (or seeded randomized) check and
returns a :class:`CheckResult`.  The CLI ``selftest`` command and the
acceptance tests both call these.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb, factorial

from .algebras import (
    build_pauli_matrix_oracle,
    derive_pauli_lambda,
    derive_swap_lambda,
    eval_degrees_thin,
    is_identity,
    make_thin,
)
from .core import QQ, CyclotomicField, Grading, PrimeField
from .freelie import (
    Bracket,
    Var,
    assoc_terms,
    basis_keys,
    bracket,
    make_generator,
    normalize,
    triple_coefficients,
)
from .independence import (
    check_pair_independence,
    check_triple_independence,
    minimal_filter,
    no_finite_basis_evidence,
    pair_reducible,
)
from .tideal import CommPair, consequence_span, grid, sweep, u1_generators, w1_generators
from .tuples import classify, oracle_classify


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    elapsed: float = 0.0
    failures: list = dc_field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail}; {self.elapsed:.2f}s)"

    def as_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "failures": [str(f) for f in self.failures],
        }


def _timed(number: int, title: str, fn) -> CheckResult:
    t0 = time.perf_counter()
    passed, detail, failures = fn()
    return CheckResult(number, title, passed, detail, time.perf_counter() - t0, failures)


# 1 ---------------------------------------------------------------------------------


def _thin_sanity(A, degrees) -> list:
    f, gr = A.field, A.grading
    bad = []
    for g, h in product(degrees, repeat=2):
        if not f.is_zero(f.add(A.c(g, h), A.c(h, g))):
            bad.append(("antisymmetry", A.name, g, h))
    for g, h, k in product(degrees, repeat=3):
        terms = [
            f.mul(A.c(g, h), A.c(gr.add(g, h), k)),
            f.mul(A.c(h, k), A.c(gr.add(h, k), g)),
            f.mul(A.c(k, g), A.c(gr.add(k, g), h)),
        ]
        if not f.is_zero(f.add(f.add(terms[0], terms[1]), terms[2])):
            bad.append(("jacobi", A.name, g, h, k))
    return bad


def pauli_matches_oracle(q: int) -> list:
    """Entries where the Pauli structure function differs from the matrix commutators."""
    field = QQ if q == 2 else CyclotomicField(q)
    A = make_thin("sl_pauli", field, q)
    M = build_pauli_matrix_oracle(q, field)
    index = {d: i for i, d in enumerate(M.degrees)}
    bad = []
    for g, h in product(sorted(index), repeat=2):
        got = M.table.get((index[g], index[h]), {})
        s = A.grading.add(g, h)
        want = A.c(g, h)
        expected = {} if field.is_zero(want) else {index[s]: want}
        if got != expected:
            bad.append(("oracle", q, g, h))
    return bad


def criterion_1() -> CheckResult:
    def run():
        bad = []
        ints = range(-10, 11)
        bad += _thin_sanity(make_thin("u1"), ints)
        bad += _thin_sanity(make_thin("w1"), ints)
        for q in (2, 3, 5):
            field = QQ if q == 2 else CyclotomicField(q)
            A = make_thin("sl_pauli", field, q)
            bad += _thin_sanity(A, list(Grading.pauli(q).elements()))
            bad += pauli_matches_oracle(q)
        return not bad, f"{len(bad)} failures", bad
    return _timed(1, "structure sanity", run)


# 2 ---------------------------------------------------------------------------------


def criterion_2() -> CheckResult:
    def run():
        A = make_thin("u1")
        bad = []
        for a, b, c in product(range(-5, 6), repeat=3):
            alpha, beta = triple_coefficients(a, b, c)
            left = alpha * eval_degrees_thin((a, b, c), A)[0]
            right = beta * eval_degrees_thin((a, c, b), A)[0]
            if left != right:
                bad.append((a, b, c))
        return not bad, f"1331 triples, {len(bad)} failures", bad
    return _timed(2, "triple identity holds on U1", run)


# 3 ---------------------------------------------------------------------------------


def classifier_disagreements(char: int, lo: int, hi: int, n_max: int = 5) -> tuple[int, list]:
    A = make_thin("u1", QQ if char == 0 else PrimeField(char))
    bad, count = [], 0
    for n in range(1, n_max + 1):
        for g in combinations_with_replacement(range(lo, hi + 1), n):
            count += 1
            if classify(g, char).verdict != oracle_classify(g, A).verdict:
                bad.append((char, g))
    return count, bad


def criterion_3() -> CheckResult:
    def run():
        total, bad = 0, []
        for char, lo, hi in ((0, -3, 3), (3, -3, 3), (5, -5, 5)):
            c, b = classifier_disagreements(char, lo, hi)
            total += c
            bad += b
        return not bad, f"{total} tuples, {len(bad)} disagreements", bad
    return _timed(3, "closed-form classifier agrees with the oracle", run)


# 4 to 8 ----------------------------------------------------------------------------


@lru_cache(maxsize=None)
def basis_report(algebra: str, char: int, n_max: int, entries: tuple):
    """Sweep of ``algebra`` against its generator set (cached: criteria 4 and 8 share it)."""
    field = QQ if char == 0 else PrimeField(char)
    gens = u1_generators(char) if algebra == "u1" else w1_generators(char)
    return sweep(range(1, n_max + 1), entries, make_thin(algebra, field), gens)


def _basis_check(number, title, n_max, entries, algebra, char):
    def run():
        report = basis_report(algebra, char, n_max, entries)
        bad = report.counterexamples
        return not bad, f"{len(report.verdicts)} tuples, {len(bad)} counterexamples", bad
    return _timed(number, title, run)


def criterion_4(n_max: int = 5) -> CheckResult:
    return _basis_check(4, f"basis theorem for U1, char 0, n <= {n_max}", n_max, (-2, 2), "u1", 0)


def criterion_5(n_max: int = 5) -> CheckResult:
    return _basis_check(5, f"basis theorem for U1, char 3, n <= {n_max}", n_max, (-2, 2), "u1", 3)


def criterion_6() -> CheckResult:
    def run():
        fails, total = [], 0
        for char in (0, 3):
            report = basis_report("w1", char, 4, (-2, 3))
            total += len(report.verdicts)
            fails += [(char, t) for t in report.counterexamples]
        return not fails, f"{total} tuples, {len(fails)} counterexamples", fails
    return _timed(6, "basis theorem for W1, char 0 and 3", run)


def criterion_7(n_max: int = 5) -> CheckResult:
    def run():
        bad, count = [], 0
        for g in grid(range(1, n_max + 1), (-2, 2)):
            if classify(g).good:
                continue
            count += 1
            span = consequence_span([CommPair(0)], g, QQ)
            if not span.is_full():
                bad.append(g)
        return not bad, f"{count} bad tuples, {len(bad)} not covered", bad
    return _timed(7, "monomial identities follow from the pair identities", run)


def criterion_8(n_max: int = 5) -> CheckResult:
    def run():
        report = basis_report("u1", 0, n_max, (-2, 2))
        bad, count = [], 0
        for v in report.verdicts:
            if v.classification != "good":
                continue
            count += 1
            n = len(v.tuple)
            if v.dim_kernel != factorial(n - 1) - 1 or not v.verified or v.good_equivalence is False:
                bad.append(v.tuple)
        return not bad, f"{count} good tuples, {len(bad)} failures", bad
    return _timed(8, "good tuples have codimension one", run)


# 9 ---------------------------------------------------------------------------------


def pauli_generator_failures(q: int) -> tuple[int, list]:
    """Instances of the four Pauli families that fail on the thin algebra or the matrix model."""
    field = QQ if q == 2 else CyclotomicField(q)
    A = make_thin("sl_pauli", field, q)
    M = build_pauli_matrix_oracle(q, field)
    G = A.grading
    elems = list(G.elements())
    checked, bad = 0, []

    def check(P, label):
        nonlocal checked
        checked += 1
        if not is_identity(P, A) or M.find_violation(P) is not None:
            bad.append(label)

    for g in elems:
        if not A.supports(g):
            check(make_generator("support_zero", (g,), field), ("support_zero", g))
    for g, h in product(elems, repeat=2):
        if A.supports(g) and A.supports(h) and field.is_zero(A.c(g, h)):
            check(make_generator("commuting_pair", (g, h), field), ("commuting_pair", g, h))
    for g, h, k in product(elems, repeat=3):
        lam = derive_swap_lambda(g, h, k, A)
        if lam is not None:
            check(make_generator("swap_lambda", (g, h, k, lam), field), ("swap_lambda", g, h, k))
    for degs in product(elems, repeat=4):
        lam = derive_pauli_lambda(degs, A)
        if lam is not None:
            check(make_generator("pauli_deg4", (*degs, lam), field), ("pauli_deg4",) + degs)
    return checked, bad


def criterion_9() -> CheckResult:
    def run():
        total, bad = 0, []
        for q in (2, 3):
            c, b = pauli_generator_failures(q)
            total += c
            bad += b
        return not bad, f"{total} instances, {len(bad)} failures", bad
    return _timed(9, "Pauli generators are identities", run)


# 10, 11 ----------------------------------------------------------------------------


def filtered_triples(p: int, lo: int = -3, hi: int = 4, strict: bool = False) -> list[tuple]:
    return [t for t in product(range(lo, hi + 1), repeat=3) if minimal_filter("triple", t, p, strict)]


def independence_failures(pairs_max: int = 6, triples_range=(-3, 4), primes=(3, 5),
                          strict: bool = False) -> tuple[int, list]:
    checked, bad = 0, []
    rng = range(-pairs_max, pairs_max + 1)
    for r, s in product(rng, repeat=2):
        if (r - s) % 5 == 0:
            checked += 1
            if not check_pair_independence(r, s, 5):
                bad.append(("pair", 5, r, s))
    for r in range(-3, 4):
        checked += 1
        if not check_pair_independence(r, r, 0):
            bad.append(("pair", 0, r, r))
    for p in primes:
        for t in filtered_triples(p, *triples_range, strict=strict):
            checked += 1
            if not check_triple_independence(*t, p):
                bad.append(("triple", p) + t)
    return checked, bad


def criterion_10() -> CheckResult:
    def run():
        checked, bad = independence_failures()
        reducible = sum(1 for f in bad if f[0] == "triple" and pair_reducible(*f[2:], f[1]))
        detail = f"{checked} generators, {len(bad)} not independent"
        if bad:
            detail += f", {reducible} of them are consequences of the pair identities"
        return not bad, detail, bad
    return _timed(10, "each filtered generator is independent of the others", run)


def criterion_11() -> CheckResult:
    def run():
        bad, count = [], 0
        for N in range(1, 6):
            for ev in no_finite_basis_evidence(N, 5):
                count += 1
                if not ev.independent:
                    bad.append((N, ev.target))
        return not bad, f"{count} level-(N+1) generators for N = 1..5, {len(bad)} dependent", bad
    return _timed(11, "higher pair generators escape every finite level", run)


# 12 --------------------------------------------------------------------------------


def random_expr(vars_: list, rng: random.Random):
    """Random bracket tree over ``vars_`` (each used once), mixing binary and left-normed nodes."""
    if len(vars_) == 1:
        return vars_[0]
    if len(vars_) >= 3 and rng.random() < 0.3:
        parts = rng.randint(3, len(vars_))
        cuts = sorted(rng.sample(range(1, len(vars_)), parts - 1))
        bounds = [0] + cuts + [len(vars_)]
        return Bracket(tuple(random_expr(vars_[a:b], rng) for a, b in zip(bounds, bounds[1:])))
    k = rng.randint(1, len(vars_) - 1)
    return Bracket((random_expr(vars_[:k], rng), random_expr(vars_[k:], rng)))


def random_vars(n: int, rng: random.Random, lo: int = -3, hi: int = 3) -> list:
    vs = [Var(i + 1, rng.randint(lo, hi)) for i in range(n)]
    rng.shuffle(vs)
    return vs


def _split(vs: list, parts: int, rng: random.Random) -> list:
    cuts = sorted(rng.sample(range(1, len(vs)), parts - 1))
    bounds = [0] + cuts + [len(vs)]
    return [vs[a:b] for a, b in zip(bounds, bounds[1:])]


def freelie_property_failures(instances: int = 1000, seed: int = 0) -> dict:
    """Randomized exact checks of the free Lie algebra normal form; failures per property."""
    rng = random.Random(seed)
    out = {k: [] for k in ("round_trip", "anticommutativity", "jacobi", "four_term", "linearity", "expansion")}
    for _ in range(instances):
        n = rng.randint(1, 6)
        vs = sorted(random_vars(n, rng))
        keys = basis_keys([v.index for v in vs])
        key = rng.choice(keys)
        P = normalize([(1, bracket(vs[-1], *[vs[i - 1] for i in key]))])
        if P.coords != {key: Fraction(1)}:
            out["round_trip"].append(key)

        n = rng.randint(2, 6)
        u, v = (random_expr(part, rng) for part in _split(random_vars(n, rng), 2, rng))
        if not normalize([(1, Bracket((u, v))), (1, Bracket((v, u)))]).is_zero():
            out["anticommutativity"].append((str(u), str(v)))

        n = rng.randint(3, 6)
        u, v, w = (random_expr(part, rng) for part in _split(random_vars(n, rng), 3, rng))
        jac = [(1, Bracket((Bracket((u, v)), w))), (1, Bracket((Bracket((v, w)), u))),
               (1, Bracket((Bracket((w, u)), v)))]
        if not normalize(jac).is_zero():
            out["jacobi"].append((str(u), str(v), str(w)))

        n = rng.randint(4, 6)
        y1, y2, y3, y4 = (random_expr(part, rng) for part in _split(random_vars(n, rng), 4, rng))
        four = [(1, bracket(y1, y2, y3, y4)), (1, bracket(y2, y1, y4, y3)),
                (1, bracket(y4, y3, y2, y1)), (1, bracket(y3, y4, y1, y2))]
        if not normalize(four).is_zero():
            out["four_term"].append(tuple(map(str, (y1, y2, y3, y4))))

        n = rng.randint(1, 6)
        vs = random_vars(n, rng)
        e1, e2 = random_expr(vs, rng), random_expr(rng.sample(vs, len(vs)), rng)
        a, b = Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        lhs = normalize([(a, e1), (b, e2)])
        rhs = normalize([(1, e1)]).scale(a) + normalize([(1, e2)]).scale(b)
        if lhs != rhs:
            out["linearity"].append((str(e1), str(e2), a, b))

        n = rng.randint(1, 6)
        mono = bracket(*random_vars(n, rng))
        words = assoc_terms(mono)
        first = mono if isinstance(mono, Var) else mono.children[0]
        positions = [w.index(first.index) for _, w in words]
        if len(words) != 2 ** (n - 1) or any(positions.count(k) != comb(n - 1, k) for k in range(n)):
            out["expansion"].append(str(mono))
    return out


def criterion_12(instances: int = 1000, seed: int = 0) -> CheckResult:
    def run():
        fails = freelie_property_failures(instances, seed)
        bad = [(k, x) for k, xs in fails.items() for x in xs]
        return not bad, f"{instances} instances per property, {len(bad)} failures", bad
    return _timed(12, "free Lie algebra normal form properties", run)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
}


def run_all(numbers=None) -> list[CheckResult]:
    return [CRITERIA[k]() for k in (numbers or sorted(CRITERIA))]
