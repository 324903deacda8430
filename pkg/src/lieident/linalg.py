"""Exact row reduction over the fields in :mod:`lieident.core`."""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import Field


class Subspace:
    """A subspace of ``field^dim`` kept in reduced row echelon form.

    Rows are fully reduced (pivot entry 1, zeros above and below every pivot),
    so two subspaces are equal iff their row lists are equal.
    """

    def __init__(self, field: Field, dim: int, rows: Iterable[Sequence] = ()):
        self.field = field
        self.dim = dim
        self._rows: list[list] = []
        self._pivots: list[int] = []
        for r in rows:
            self.add(r)

    @property
    def rows(self) -> list[list]:
        return [list(r) for r in self._rows]

    @property
    def pivots(self) -> list[int]:
        return list(self._pivots)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def is_full(self) -> bool:
        return len(self._rows) == self.dim

    def reduce(self, vec: Sequence) -> list:
        """Remainder of ``vec`` after elimination against the echelon rows."""
        f = self.field
        v = list(vec)
        for piv, row in zip(self._pivots, self._rows):
            c = v[piv]
            if not f.is_zero(c):
                v = f.axpy(c, row, v)
        return v

    def add(self, vec: Sequence) -> bool:
        """Insert ``vec``; return True iff the rank grew."""
        if len(vec) != self.dim:
            raise ValueError(f"vector of length {len(vec)} in ambient dimension {self.dim}")
        f = self.field
        v = self.reduce(vec)
        piv = next((i for i, c in enumerate(v) if not f.is_zero(c)), None)
        if piv is None:
            return False
        v = f.scale(f.inv(v[piv]), v)
        for k, row in enumerate(self._rows):
            c = row[piv]
            if not f.is_zero(c):
                self._rows[k] = f.axpy(c, v, row)
        pos = next((k for k, p in enumerate(self._pivots) if p > piv), len(self._pivots))
        self._rows.insert(pos, v)
        self._pivots.insert(pos, piv)
        return True

    def contains(self, vec: Sequence) -> bool:
        if len(vec) != self.dim:
            raise ValueError("ambient dimension mismatch")
        f = self.field
        return all(f.is_zero(c) for c in self.reduce(vec))

    def coordinates(self, vec: Sequence) -> list | None:
        """Coefficients ``c`` with ``vec == sum c[k] * rows[k]``, or None if not a member."""
        if not self.contains(vec):
            return None
        return [vec[p] for p in self._pivots]

    def combine(self, coeffs: Sequence) -> list:
        f = self.field
        out = [f.zero()] * self.dim
        for c, row in zip(coeffs, self._rows):
            out = f.axpy(f.neg(c), row, out)
        return out

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self._rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field, self.dim, self._rows) == (other.field, other.dim, other._rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank})"


def nullspace(field: Field, rows: Sequence[Sequence], dim: int) -> list[list]:
    """Basis of ``{v : row . v = 0 for every row}``."""
    space = Subspace(field, dim, rows)
    pivots = space.pivots
    echelon = space.rows
    free = [j for j in range(dim) if j not in set(pivots)]
    basis = []
    for j in free:
        v = [field.zero()] * dim
        v[j] = field.one()
        for piv, row in zip(pivots, echelon):
            v[piv] = field.neg(row[j])
        basis.append(v)
    return basis


def solve_in_basis(field: Field, basis: Sequence[Sequence], target: Sequence) -> list | None:
    """Coordinates of ``target`` over the (independent) vectors ``basis``, or None."""
    m, n = len(target), len(basis)
    aug = [[basis[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((k for k in range(r, m) if not field.is_zero(aug[k][c])), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        aug[r] = field.scale(field.inv(aug[r][c]), aug[r])
        for k in range(m):
            if k != r and not field.is_zero(aug[k][c]):
                aug[k] = field.axpy(aug[k][c], aug[r], aug[k])
        pivots.append(c)
        r += 1
    if any(not field.is_zero(aug[k][n]) for k in range(r, m)):
        return None
    if len(pivots) < n:
        raise ValueError("basis vectors are linearly dependent")
    sol = [field.zero()] * n
    for k, c in enumerate(pivots):
        sol[c] = aug[k][n]
    return sol
