from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lieident.core import (
    QQ,
    CyclotomicField,
    FieldError,
    Grading,
    GradingError,
    PrimeField,
    cyclotomic_canonical,
    degree_add,
    degree_residue,
    scalar,
    scalar_arith,
)


def test_rational_sum():
    r = scalar_arith("add", scalar(QQ, Fraction(1, 2)), scalar(QQ, Fraction(1, 3)))
    assert r.value == Fraction(5, 6)


def test_prime_product():
    F5 = PrimeField(5)
    assert scalar_arith("mul", scalar(F5, 3), scalar(F5, 4)).value == 2


def test_cyclotomic_root_cubed():
    K = CyclotomicField(3)
    e = K.root_power(1)
    assert K.mul(e, K.mul(e, e)) == K.one()
    assert cyclotomic_canonical({3: 1}, 3).value == K.one()


def test_cyclotomic_relation_and_elimination():
    K = CyclotomicField(3)
    assert K.is_zero(cyclotomic_canonical({0: 1, 1: 1, 2: 1}, 3).value)
    assert cyclotomic_canonical({-1: 1}, 3).value == K.canonical({0: -1, 1: -1})
    assert str(cyclotomic_canonical({-1: 1}, 3)) == "-1 - e"


@pytest.mark.parametrize("bad", [2, 4, 9, 1])
def test_rejected_fields(bad):
    with pytest.raises(FieldError):
        PrimeField(bad)
    if bad != 2:
        with pytest.raises(FieldError):
            CyclotomicField(bad)


def test_division_by_zero():
    for F in (QQ, PrimeField(7), CyclotomicField(5)):
        with pytest.raises(ZeroDivisionError):
            F.inv(F.zero())


def test_field_mismatch():
    with pytest.raises(FieldError):
        scalar_arith("add", scalar(QQ, 1), scalar(PrimeField(3), 1))


def test_cyclotomic_int_coordinates_match_fractions():
    K = CyclotomicField(5)
    x = K.canonical({1: Fraction(2), 3: 1})
    assert x == K.canonical({1: 2, 3: Fraction(1)})
    assert hash(x) == hash(K.canonical({1: 2, 3: Fraction(1)}))


@given(st.integers(-50, 50))
def test_cyclotomic_depends_on_residue(k):
    for q in (3, 5, 7):
        K = CyclotomicField(q)
        assert K.root_power(k) == K.root_power(k % q)


@given(st.lists(st.fractions(min_value=-30, max_value=30, max_denominator=20), min_size=4, max_size=4))
def test_cyclotomic_inverse(coords):
    K = CyclotomicField(5)
    x = K.canonical(dict(enumerate(coords)))
    if not K.is_zero(x):
        assert K.mul(x, K.inv(x)) == K.one()
        assert all(not isinstance(c, float) for c in K.inv(x))


@given(st.integers(1, 10**6), st.sampled_from([3, 5, 7, 11, 13]))
def test_prime_inverse(x, p):
    F = PrimeField(p)
    v = F.from_int(x)
    if not F.is_zero(v):
        assert F.mul(v, F.inv(v)) == F.one()


def test_prime_root_of_unity():
    F = PrimeField(7)
    w = F.root_of_unity(3)
    assert w != 1 and pow(w, 3, 7) == 1
    with pytest.raises(FieldError):
        PrimeField(5).root_of_unity(3)


def test_degree_add():
    assert degree_add([3, -1]) == 2
    assert degree_add([(2, 1), (2, 2)], Grading.pauli(3)) == (1, 0)
    assert degree_add([]) == 0
    with pytest.raises(GradingError):
        degree_add([1, (1, 0)])


def test_degree_residue():
    assert [degree_residue(d, 5) for d in (7, -1, 10)] == [2, 4, 0]


@given(st.integers(-100, 100), st.integers(-100, 100), st.sampled_from([3, 5, 7]))
def test_residue_is_additive(a, b, p):
    assert degree_residue(a + b, p) == (degree_residue(a, p) + degree_residue(b, p)) % p


@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), max_size=6))
def test_pauli_sum_order_free(ds):
    G = Grading.pauli(5)
    assert degree_add(ds, G) == degree_add(list(reversed(ds)), G)
