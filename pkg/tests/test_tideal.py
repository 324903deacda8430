from math import factorial

import pytest
from hypothesis import given, strategies as st

from lieident.algebras import eval_poly_thin, make_thin
from lieident.core import QQ, PrimeField
from lieident.linalg import Subspace
from lieident.freelie import MultilinearPoly, Var, bracket, make_generator, normalize, standard_context
from lieident.tideal import (
    BoundExceeded,
    CommPair,
    Family,
    SupportZero,
    Triple,
    consequence_span,
    identity_kernel,
    is_member,
    sweep,
    u1_generators,
    verify_tuple,
    w1_generators,
)
from lieident.tuples import classify

U1 = make_thin("u1")
F5 = PrimeField(5)
U1_5 = make_thin("u1", F5)


def test_kernel_dims():
    assert identity_kernel((0, 1, 2), U1).rank == 1
    assert identity_kernel((1, 1), U1).rank == 1
    assert identity_kernel((1, 2), U1).rank == 0


def test_kernel_of_0_1_2_is_the_triple():
    K = identity_kernel((0, 1, 2), U1)
    assert is_member(make_generator("triple", (0, 1, 2)), K)


def test_span_examples():
    assert consequence_span([Triple()], (0, 1, 2), QQ) == identity_kernel((0, 1, 2), U1)
    assert consequence_span([], (1, 2, 3), QQ).rank == 0
    S = consequence_span([CommPair(0)], (1, 1, 2), QQ)
    x1, x2, x3 = Var(1, 1), Var(2, 1), Var(3, 2)
    assert is_member(normalize([(1, bracket(x1, x2, x3))]), S)


def test_membership():
    S = consequence_span(u1_generators(0), (0, 1, 2), QQ)
    assert is_member(make_generator("triple", (0, 1, 2)), S)
    x1, x2 = Var(1, 1), Var(2, 2)
    assert not is_member(normalize([(1, bracket(x1, x2))]), consequence_span(u1_generators(0), (1, 2), QQ))
    assert is_member(MultilinearPoly.from_vector(standard_context((1, 2)), QQ, [0]), Subspace(QQ, 1))
    with pytest.raises(ValueError):
        is_member(make_generator("triple", (0, 1, 2)), consequence_span([], (1, 2), QQ))


def test_verify_good_tuple():
    v = verify_tuple((0, 1, 2), U1, u1_generators(0))
    assert (v.dim_ambient, v.dim_kernel, v.dim_span) == (2, 1, 1)
    assert v.verified and v.good_equivalence


def test_verify_bad_tuple_spans_everything():
    v = verify_tuple((2, 2, 2), U1, u1_generators(0))
    assert v.classification == "bad"
    assert v.dim_span == v.dim_kernel == 2
    S = consequence_span([CommPair(0)], (2, 2, 2), QQ)
    assert S.is_full()


def test_verify_char5_instance():
    assert verify_tuple((1, 6, 2), U1_5, u1_generators(5)).verified


def test_bound():
    with pytest.raises(BoundExceeded):
        identity_kernel((1, 2, 3, 4, 5, 6), U1)
    assert identity_kernel((1, 2, 3, 4, 5, 6), U1, allow_large=True).rank == 119


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4), st.sampled_from([0, 3, 7]))
def test_span_is_sound(g, p):
    field = QQ if p == 0 else PrimeField(p)
    A = U1 if p == 0 else make_thin("u1", field)
    S = consequence_span(u1_generators(p), g, field)
    assert S.issubset(identity_kernel(g, A))


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4))
def test_kernel_dimension_tracks_classification(g):
    K = identity_kernel(g, U1)
    dim = factorial(len(g) - 1)
    assert K.rank == (dim if classify(g).verdict == "bad" else dim - 1)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4))
def test_bad_tuples_follow_from_commutation(g):
    if classify(g).verdict == "bad":
        assert consequence_span([CommPair(0)], g, QQ).is_full()


def test_sweep_small_grids():
    assert sweep(range(2, 5), (-2, 2), U1, u1_generators(0)).passed
    assert sweep(range(2, 5), (-2, 2), make_thin("u1", PrimeField(3)), u1_generators(3)).passed


def test_sweep_is_order_independent():
    a = sweep(range(2, 4), (-1, 2), U1, u1_generators(0)).as_dict()
    b = sweep(range(2, 4), (-1, 2), U1, u1_generators(0), workers=2).as_dict()
    assert a == b


def test_w1_support_generator():
    W1 = make_thin("w1")
    v = verify_tuple((-2, 3), W1, w1_generators(0))
    assert v.verified and v.dim_kernel == 1
    assert consequence_span([SupportZero(-2)], (-2, 3), QQ).is_full()
    assert consequence_span([SupportZero(-3)], (-2, 3), QQ).rank == 0


def test_unsound_generator_is_reported():
    v = verify_tuple((1, 2), U1, [CommPair(1)])
    assert not v.span_subset_kernel and not v.verified


class KernelVector(Family):
    """The ``index``-th kernel basis vector of ``A`` at the block degrees."""

    name = "kernel_vector"

    def __init__(self, A, arity, index):
        self.A, self.arity, self.index = A, arity, index

    def instance(self, degrees, field):
        K = identity_kernel(degrees, self.A)
        if self.index >= K.rank:
            return None
        return MultilinearPoly.from_vector(standard_context(degrees), field, K.rows[self.index])


def test_f5_gap_survives_every_low_degree_identity():
    # over F_5 the identities of degree <= 3 do not generate everything at (-2, -1, 1, 2)
    g = (-2, -1, 1, 2)
    v = verify_tuple(g, U1_5, u1_generators(5))
    assert (v.dim_kernel, v.dim_span) == (5, 4)
    gens = [KernelVector(U1_5, 2, 0), KernelVector(U1_5, 3, 0), KernelVector(U1_5, 3, 1)]
    S = consequence_span(gens, g, F5)
    assert S.issubset(identity_kernel(g, U1_5))
    assert S.rank == 4
    missing = normalize([
        (1, bracket(Var(4, 2), Var(1, -2), Var(2, -1), Var(3, 1))),
        (3, bracket(Var(4, 2), Var(3, 1), Var(2, -1), Var(1, -2))),
    ], F5)
    assert eval_poly_thin(missing, U1_5) == 0
    assert not is_member(missing, S)


def test_f7_has_no_such_gap():
    assert verify_tuple((-2, -1, 1, 2), make_thin("u1", PrimeField(7)), u1_generators(7)).verified
