from fractions import Fraction

from hypothesis import given, strategies as st

from lieident.core import QQ, PrimeField
from lieident.linalg import Subspace, nullspace, solve_in_basis

vectors = st.lists(st.lists(st.integers(-4, 4), min_size=5, max_size=5), max_size=7)


def dot(u, v):
    return sum(Fraction(a) * b for a, b in zip(u, v))


@given(vectors)
def test_echelon_is_canonical(rows):
    S = Subspace(QQ, 5, rows)
    T = Subspace(QQ, 5, list(reversed(rows)))
    assert S == T
    rows_ = S.rows
    for k, piv in enumerate(S.pivots):
        assert [r[piv] for r in rows_] == [int(i == k) for i in range(len(rows_))]


@given(vectors)
def test_rows_reconstructed(rows):
    S = Subspace(QQ, 5, rows)
    for r in rows:
        coords = S.coordinates(r)
        assert coords is not None
        back = [sum(c * row[i] for c, row in zip(coords, S.rows)) for i in range(5)]
        assert back == [Fraction(x) for x in r]


@given(vectors)
def test_nullspace(rows):
    N = nullspace(QQ, rows, 5)
    rank = Subspace(QQ, 5, rows).rank
    assert len(N) == 5 - rank
    assert all(dot(r, v) == 0 for r in rows for v in N)
    assert Subspace(QQ, 5, N).rank == len(N)


def test_prime_field_rank_drops():
    rows = [[1, 2], [3, 1]]
    assert Subspace(QQ, 2, rows).rank == 2
    assert Subspace(PrimeField(5), 2, rows).rank == 1


def test_solve_in_basis():
    assert solve_in_basis(QQ, [[1, 0, 1], [0, 1, 1]], [2, 3, 5]) == [2, 3]
    assert solve_in_basis(QQ, [[1, 0, 1], [0, 1, 1]], [2, 3, 4]) is None


def test_zero_always_member():
    S = Subspace(QQ, 3)
    assert S.contains([0, 0, 0])
    assert not S.contains([0, 1, 0])
