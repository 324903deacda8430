import random
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from lieident.checks import random_expr, random_vars
from lieident.core import QQ, PrimeField
from lieident.freelie import (
    Bracket,
    DegenerateGenerator,
    MultilinearityError,
    Var,
    assoc_expand,
    basis_keys,
    bracket,
    make_generator,
    normalize,
)


def mat(rng, k=3):
    return [[Fraction(rng.randint(-3, 3)) for _ in range(k)] for _ in range(k)]


def mul(X, Y):
    return [[sum(X[i][t] * Y[t][j] for t in range(len(X))) for j in range(len(X))] for i in range(len(X))]


def ev(e, assign):
    if isinstance(e, Var):
        return assign[e.index]
    acc = ev(e.children[0], assign)
    for c in e.children[1:]:
        y = ev(c, assign)
        p, q = mul(acc, y), mul(y, acc)
        acc = [[p[i][j] - q[i][j] for j in range(len(p))] for i in range(len(p))]
    return acc


def ev_poly(terms, assign):
    k = len(next(iter(assign.values())))
    out = [[Fraction(0)] * k for _ in range(k)]
    for c, e in terms:
        m = ev(e, assign)
        out = [[out[i][j] + Fraction(c) * m[i][j] for j in range(k)] for i in range(k)]
    return out


def test_triple_generator_at_0_1_2():
    x1, x2, x3 = Var(1, 0), Var(2, 1), Var(3, 2)
    want = normalize([(-2, bracket(x1, x2, x3)), (-1, bracket(x1, x3, x2))])
    assert make_generator("triple", (0, 1, 2)) == want


def test_right_nested_is_basis_monomial():
    x1, x2, x3 = Var(1, 0), Var(2, 1), Var(3, 2)
    P = normalize([(1, bracket(x1, bracket(x2, x3)))])
    assert P == normalize([(1, bracket(x3, x2, x1))])
    assert P.vector().count(1) == 1


def test_basis_size():
    for n in range(1, 6):
        assert len(basis_keys(range(1, n + 1))) == factorial(n - 1)


def test_repeated_variable_rejected():
    x = Var(1, 0)
    with pytest.raises(MultilinearityError):
        normalize([(1, Bracket((x, x)))])


def test_degenerate_triple():
    with pytest.raises(DegenerateGenerator):
        make_generator("triple", (1, 1, 1))


def test_mod_p_coefficients():
    # at (0, 1, 2) alpha = 3 and beta = 2, so over F_3 only one monomial survives
    P = make_generator("triple", (0, 1, 2), PrimeField(3))
    assert sum(1 for c in P.vector() if c) == 1


@given(st.integers(0, 10**6))
def test_normalize_agrees_with_matrices(seed):
    rng = random.Random(seed)
    vs = random_vars(rng.randint(2, 5), rng)
    e = random_expr(vs, rng)
    P = normalize([(1, e)])
    assign = {v.index: mat(rng) for v in vs}
    assert ev_poly(P.terms(), assign) == ev(e, assign)


@given(st.integers(0, 10**6))
def test_anticommutativity(seed):
    rng = random.Random(seed)
    vs = random_vars(rng.randint(2, 5), rng)
    k = rng.randint(1, len(vs) - 1)
    a, b = random_expr(vs[:k], rng), random_expr(vs[k:], rng)
    assert normalize([(1, bracket(a, b)), (1, bracket(b, a))]).is_zero()


@given(st.integers(0, 10**6))
def test_jacobi(seed):
    rng = random.Random(seed)
    vs = random_vars(rng.randint(3, 6), rng)
    i, j = sorted(rng.sample(range(1, len(vs)), 2))
    a, b, c = (random_expr(vs[:i], rng), random_expr(vs[i:j], rng), random_expr(vs[j:], rng))
    P = normalize([(1, bracket(a, bracket(b, c))), (1, bracket(b, bracket(c, a))), (1, bracket(c, bracket(a, b)))])
    assert P.is_zero()


@given(st.integers(0, 10**6))
def test_round_trip_through_terms(seed):
    rng = random.Random(seed)
    vs = random_vars(rng.randint(1, 5), rng)
    P = normalize([(rng.randint(-5, 5), random_expr(vs, rng)), (rng.randint(-5, 5), random_expr(vs, rng))])
    if not P.is_zero():
        assert normalize(P.terms()) == P
    assert type(P).from_vector(P.context, QQ, P.vector()) == P


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_left_normed_expansion_size(n):
    vs = [Var(i, 0) for i in range(1, n + 1)]
    words = assoc_expand(bracket(*vs))
    assert len(words) == 2 ** (n - 1)
    assert all(abs(c) == 1 for c in words.values())


def test_all_orders_span():
    vs = [Var(i, i) for i in range(1, 5)]
    from lieident.linalg import Subspace
    S = Subspace(QQ, 6, [normalize([(1, bracket(*p))]).vector() for p in permutations(vs)])
    assert S.is_full()
