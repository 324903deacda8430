from itertools import product

import pytest
from hypothesis import given, strategies as st

from lieident.core import PrimeField
from lieident.freelie import make_generator
from lieident.independence import (
    PreconditionError,
    build_H,
    build_L4,
    check_pair_independence,
    check_triple_independence,
    minimal_filter,
    no_finite_basis_evidence,
    pair_reducible,
    triple_incongruences,
)


def test_H_is_heisenberg():
    H = build_H(1, 2)
    assert H.dim == 3 and H.nilpotency_class() == 2
    assert H.check_jacobi() and H.check_grading()
    assert H.support() == {1, 2, 3}
    assert not H.is_identity(make_generator("comm_pair", (1, 2)))


def test_L4_is_class_three():
    L = build_L4(3, 2, 1)
    assert L.dim == 6 and L.nilpotency_class() == 3
    assert L.check_jacobi() and L.check_grading()
    assert L.support() == {1, 2, 3, 5, 6}


def test_pair_independence():
    assert check_pair_independence(1, 1).independent
    assert check_pair_independence(1, 6, 5).independent
    assert check_pair_independence(2, 2, 3).independent


def test_pair_preconditions():
    with pytest.raises(PreconditionError):
        check_pair_independence(1, 2)
    with pytest.raises(PreconditionError):
        check_pair_independence(1, 5, 5)


def test_triple_preconditions():
    with pytest.raises(PreconditionError):
        check_triple_independence(3, 2, 1, 5)
    with pytest.raises(PreconditionError):
        check_triple_independence(4, 2, 1, 0)
    with pytest.raises(PreconditionError):
        check_triple_independence(4, 2, 1, 2)


def test_triple_independent_case():
    ev = check_triple_independence(6, 4, 1, 7)
    assert ev.independent and ev.target is not None
    assert ev.checked > 0


def test_triple_reducible_case():
    # 1 + 4 = 5: the witness breaks the pair identity [x^1, x^6]
    assert minimal_filter("triple", (4, 2, 1), 5)
    ev = check_triple_independence(4, 2, 1, 5)
    assert not ev.independent
    assert ("comm_pair", (1, 6)) in {(v.family, v.params) for v in ev.violations}
    assert pair_reducible(4, 2, 1, 5)
    assert not minimal_filter("triple", (4, 2, 1), 5, strict=True)
    assert not triple_incongruences(4, 2, 1, 5)["c!=a+b"]


def test_minimal_filter_pairs():
    assert minimal_filter("pair", (1, 1))
    assert minimal_filter("pair", (1, 6), 5)
    assert not minimal_filter("pair", (6, 1), 5)
    assert not minimal_filter("pair", (1, 2))
    with pytest.raises(ValueError):
        minimal_filter("triple", (3, 2, 1), 0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_strict_filter_characterizes_independence(p):
    for a, b, c in product(range(-4, 6), repeat=3):
        if not minimal_filter("triple", (a, b, c), p):
            continue
        strict = minimal_filter("triple", (a, b, c), p, strict=True)
        assert check_triple_independence(a, b, c, p).independent == strict
        assert pair_reducible(a, b, c, p) == (not strict)


@given(st.integers(-6, 6), st.sampled_from([0, 3, 5]))
def test_every_filtered_pair_is_independent(r, p):
    assert check_pair_independence(r, r + p, p).independent


def test_no_finite_basis_evidence():
    levels = no_finite_basis_evidence(3, 5)
    assert levels and all(e.independent for e in levels)
    assert all(e.level == 4 for e in levels)
