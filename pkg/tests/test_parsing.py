import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lieident.checks import random_expr, random_vars
from lieident.core import Grading, PrimeField
from lieident.freelie import Bracket, MultilinearityError, Var, make_generator
from lieident.parsing import ParseError, format_poly, parse_expr, parse_poly, to_poly


def test_single_monomial():
    terms = parse_poly("[x1:1, x2:2]")
    assert terms == [(1, Bracket((Var(1, 1), Var(2, 2))))]


def test_triple_text():
    assert to_poly("-2*[x1:0,x2:1,x3:2] - [x1:0,x3:2,x2:1]") == make_generator("triple", (0, 1, 2))


def test_nested_pauli():
    e = parse_expr("[x1:(1,0), [x2:(0,1), x3:(1,1)]]")
    assert e == Bracket((Var(1, (1, 0)), Bracket((Var(2, (0, 1)), Var(3, (1, 1))))))


def test_fraction_and_signs():
    terms = parse_poly(" 3/4 * [x1:-1 ,x2:+2] ")
    assert terms == [(Fraction(3, 4), Bracket((Var(1, -1), Var(2, 2))))]


def test_degrees_reduced_in_grading():
    P = to_poly("[x1:(4,0), x2:(0,1)]", grading=Grading.pauli(3))
    assert P.degrees == ((1, 0), (0, 1))


def test_coefficients_mod_p():
    assert to_poly("5*[x1:1,x2:2]", field=PrimeField(5)).is_zero()


@pytest.mark.parametrize("text,pos", [
    ("", 0),
    ("[x1:1]", 5),
    ("[x1:1, x2:2", 11),
    ("[x1:1, y2:2]", 7),
    ("1/0*[x1:1,x2:2]", 2),
    ("[x0:1, x2:2]", 2),
    ("[x1:1, x2:(0,1)]", 10),
    ("[x1:1, x2:2] +", 14),
    ("[x1:1, x2:2] )", 13),
])
def test_error_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.pos == pos


def test_repeated_index():
    with pytest.raises(MultilinearityError, match="x1 repeated"):
        parse_poly("[x1:1, [x2:2, x1:3]]")


def random_terms(rng):
    vs = random_vars(rng.randint(1, 6), rng)
    if rng.random() < 0.3:
        vs = [Var(v.index, (v.degree % 3, rng.randint(0, 2))) for v in vs]
    terms = []
    for _ in range(rng.randint(1, 4)):
        c = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
        terms.append((c, random_expr(vs, rng)))
    return terms


def test_round_trip_corpus():
    rng = random.Random(2024)
    for _ in range(1000):
        terms = random_terms(rng)
        text = format_poly(terms)
        assert parse_poly(text) == terms
        assert format_poly(parse_poly(text)) == text


@given(st.integers(0, 10**9))
def test_round_trip_property(seed):
    terms = random_terms(random.Random(seed))
    assert parse_poly(format_poly(terms)) == terms
