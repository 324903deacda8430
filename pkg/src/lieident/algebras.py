"""Concrete graded Lie algebras and evaluation of multilinear polynomials.

Thin algebras (every homogeneous component of dimension <= 1) are described
by a support predicate and a structure function ``c(g, h)`` with
``[d_g, d_h] = c(g, h) d_{g+h}``; evaluation is a scalar fold and never
materializes basis vectors.  Finite algebras with explicit bracket tables
(:class:`StructureAlgebra`) cover the upper triangular counterexamples and
the matrix model of the Pauli grading.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from .core import CyclotomicField, Field, FieldError, Grading, PrimeField, QQ, RationalField, ZZ, is_prime
from .freelie import Bracket, Expr, Monomial, MultilinearPoly, Var
from .linalg import Subspace


@dataclass(frozen=True, eq=False)
class ThinAlgebra:
    name: str
    grading: Grading
    field: Field
    support: Callable[[object], bool]
    structure: Callable[[object, object], object]

    def supports(self, d) -> bool:
        return self.support(self.grading.reduce(d))

    def c(self, g, h):
        """Bracket coefficient, zero whenever g, h or g+h leaves the support."""
        gr = self.grading
        g, h = gr.reduce(g), gr.reduce(h)
        if not (self.support(g) and self.support(h) and self.support(gr.add(g, h))):
            return self.field.zero()
        return self.structure(g, h)

    def __repr__(self):
        return f"ThinAlgebra({self.name}, {self.field})"


def _u1_structure(field: Field):
    return lambda g, h: field.from_int(h - g)


def make_thin(name: str, field: Field = QQ, q: int | None = None) -> ThinAlgebra:
    """Build ``u1``, ``w1`` or ``sl_pauli`` (alias ``pauli``, needs ``q``).

    For the Pauli grading the field must contain a primitive q-th root of
    unity: Q(eps_q), the rationals when q = 2, or F_p with q | p - 1.
    """
    if name == "u1":
        return ThinAlgebra("u1", ZZ, field, lambda d: True, _u1_structure(field))
    if name == "w1":
        return ThinAlgebra("w1", ZZ, field, lambda d: d >= -1, _u1_structure(field))
    if name in ("sl_pauli", "pauli"):
        if q is None or not is_prime(q):
            raise FieldError(f"Pauli grading needs a prime q, got {q}")
        power = _root_powers(field, q)
        grading = Grading.pauli(q)

        def structure(g, h):
            (i, j), (r, s) = g, h
            return field.sub(power(-r * j), power(-i * s))

        return ThinAlgebra(f"sl_pauli({q})", grading, field, lambda d: d != (0, 0), structure)
    raise ValueError(f"unknown thin algebra {name!r}")


def _root_powers(field: Field, q: int) -> Callable[[int], object]:
    """``k -> eps^k`` for a primitive q-th root eps in ``field``."""
    if isinstance(field, CyclotomicField):
        if field.q != q:
            raise FieldError(f"{field} does not contain a primitive {q}-th root of unity")
        table = [field.root_power(k) for k in range(q)]
    elif isinstance(field, PrimeField):
        eps = field.root_of_unity(q)
        table = [pow(eps, k, field.p) for k in range(q)]
    elif isinstance(field, RationalField):
        if q != 2:
            raise FieldError(f"Q has no primitive {q}-th root of unity")
        table = [field.one(), field.from_int(-1)]
    else:
        raise FieldError(f"unsupported field {field}")
    return lambda k: table[k % q]


# thin evaluation -------------------------------------------------------------


def eval_degrees_thin(degrees: Sequence, A: ThinAlgebra):
    """Fold ``[d_h1, ..., d_hn]`` to ``(value, degree)``."""
    f, gr = A.field, A.grading
    deg = gr.reduce(degrees[0])
    value = f.one() if A.supports(deg) else f.zero()
    for h in degrees[1:]:
        if f.is_zero(value):
            deg = gr.add(deg, gr.reduce(h))
            continue
        value = f.mul(value, A.c(deg, h))
        deg = gr.add(deg, gr.reduce(h))
    return value, deg


def eval_monomial_thin(M: Monomial, A: ThinAlgebra):
    return eval_degrees_thin([v.degree for v in M.vars], A)


def eval_expr_thin(e: Expr, A: ThinAlgebra):
    """Recursive evaluation of a bracket tree at the canonical basis vectors."""
    f, gr = A.field, A.grading
    if isinstance(e, Var):
        d = gr.reduce(e.degree)
        return (f.one() if A.supports(d) else f.zero()), d
    value, deg = eval_expr_thin(e.children[0], A)
    for ch in e.children[1:]:
        v2, d2 = eval_expr_thin(ch, A)
        value = f.mul(f.mul(value, v2), A.c(deg, d2))
        deg = gr.add(deg, d2)
    return value, deg


def functional(P_context: Sequence[Var], keys: Sequence[tuple], A: ThinAlgebra) -> list:
    """Values of the ``N_sigma`` basis monomials under the canonical substitution."""
    by_index = {v.index: v.degree for v in P_context}
    pivot = P_context[-1].degree
    return [eval_degrees_thin([pivot] + [by_index[i] for i in k], A)[0] for k in keys]


def eval_poly_thin(P: MultilinearPoly, A: ThinAlgebra):
    f = A.field
    if f != P.field:
        raise FieldError(f"polynomial over {P.field}, algebra over {f}")
    vals = functional(P.context, P.keys(), A)
    return f.dot(P.vector(), vals)


# structure-constant algebras ----------------------------------------------------


class StructureAlgebra:
    """Finite-dimensional graded Lie algebra given by a bracket table.

    Elements are dicts ``basis index -> field value``.  ``table[(i, j)]`` is
    the element ``[b_i, b_j]``; missing entries are zero.
    """

    def __init__(self, labels: Sequence[str], degrees: Sequence, table: dict, field: Field,
                 grading: Grading = ZZ, name: str = ""):
        self.labels = list(labels)
        self.degrees = [grading.reduce(d) for d in degrees]
        self.field = field
        self.grading = grading
        self.name = name
        self.table = {k: {i: c for i, c in v.items() if not field.is_zero(c)} for k, v in table.items()}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def components(self) -> dict:
        comp: dict = {}
        for i, d in enumerate(self.degrees):
            comp.setdefault(d, []).append(i)
        return comp

    def support(self) -> set:
        return set(self.degrees)

    def basis_element(self, i: int) -> dict:
        return {i: self.field.one()}

    def bracket(self, x: dict, y: dict) -> dict:
        f = self.field
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.table.get((i, j), {}).items():
                    out[k] = f.add(out.get(k, f.zero()), f.mul(f.mul(a, b), c))
        return {k: v for k, v in out.items() if not f.is_zero(v)}

    def add(self, x: dict, y: dict) -> dict:
        f = self.field
        out = dict(x)
        for k, v in y.items():
            out[k] = f.add(out.get(k, f.zero()), v)
        return {k: v for k, v in out.items() if not f.is_zero(v)}

    def scale(self, c, x: dict) -> dict:
        f = self.field
        return {k: f.mul(c, v) for k, v in x.items() if not f.is_zero(f.mul(c, v))}

    def evaluate(self, e: Expr, assignment: dict) -> dict:
        """Evaluate a bracket tree with ``assignment[var index] = element``."""
        if isinstance(e, Var):
            return assignment[e.index]
        acc = self.evaluate(e.children[0], assignment)
        for ch in e.children[1:]:
            acc = self.bracket(acc, self.evaluate(ch, assignment))
        return acc

    def evaluate_poly(self, P: MultilinearPoly, assignment: dict) -> dict:
        out: dict = {}
        for c, e in P.terms():
            out = self.add(out, self.scale(c, self.evaluate(e, assignment)))
        return out

    def substitutions(self, context: Sequence[Var]):
        """All assignments of basis elements of matching degree to the variables."""
        comp = self.components()
        choices = [comp.get(self.grading.reduce(v.degree), []) for v in context]
        for combo in product(*choices):
            yield {v.index: self.basis_element(i) for v, i in zip(context, combo)}, combo

    def find_violation(self, P: MultilinearPoly):
        """First basis substitution on which ``P`` is nonzero, as ``(labels, value)``."""
        if P.field != self.field:
            raise FieldError(f"polynomial over {P.field}, algebra over {self.field}")
        for assignment, combo in self.substitutions(P.context):
            val = self.evaluate_poly(P, assignment)
            if val:
                return tuple(self.labels[i] for i in combo), val
        return None

    def is_identity(self, P: MultilinearPoly) -> bool:
        return self.find_violation(P) is None

    def format_element(self, x: dict) -> str:
        if not x:
            return "0"
        return " + ".join(f"({self.field.format(c)})*{self.labels[i]}" for i, c in sorted(x.items()))

    # table sanity --------------------------------------------------------------

    def check_antisymmetry(self) -> bool:
        for i, j in product(range(self.dim), repeat=2):
            if self.add(self.table.get((i, j), {}), self.table.get((j, i), {})):
                return False
        return True

    def check_jacobi(self) -> bool:
        e = self.basis_element
        for i, j, k in product(range(self.dim), repeat=3):
            x, y, z = e(i), e(j), e(k)
            s = self.add(self.add(self.bracket(self.bracket(x, y), z), self.bracket(self.bracket(y, z), x)),
                         self.bracket(self.bracket(z, x), y))
            if s:
                return False
        return True

    def check_grading(self) -> bool:
        gr = self.grading
        for (i, j), val in self.table.items():
            target = gr.add(self.degrees[i], self.degrees[j])
            if any(self.degrees[k] != target for k in val):
                return False
        return True

    def _span(self, elems) -> Subspace:
        f = self.field
        sp = Subspace(f, self.dim)
        for x in elems:
            sp.add([x.get(k, f.zero()) for k in range(self.dim)])
        return sp

    def nilpotency_class(self, max_steps: int = 20) -> int | None:
        """Smallest c with ``L^(c+1) = 0`` in the lower central series, or None."""
        f = self.field
        current = [self.basis_element(i) for i in range(self.dim)]
        for c in range(1, max_steps + 1):
            nxt = self._span(self.bracket(x, self.basis_element(j)) for x in current for j in range(self.dim))
            if nxt.rank == 0:
                return c
            current = [{k: v for k, v in enumerate(r) if not f.is_zero(v)} for r in nxt.rows]
        return None


def _matmul(field: Field, X, Y):
    n = len(X)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = field.zero()
            for k in range(n):
                if not field.is_zero(X[i][k]) and not field.is_zero(Y[k][j]):
                    acc = field.add(acc, field.mul(X[i][k], Y[k][j]))
            row.append(acc)
        out.append(row)
    return out


def _commutator(field: Field, X, Y):
    a, b = _matmul(field, X, Y), _matmul(field, Y, X)
    return [[field.sub(u, v) for u, v in zip(r, s)] for r, s in zip(a, b)]


def from_matrices(labels: Sequence[str], matrices: Sequence, degrees: Sequence, field: Field,
                  grading: Grading = ZZ, name: str = "") -> StructureAlgebra:
    """Structure algebra spanned by explicit matrices under the commutator.

    Brackets are decomposed in the given basis by exact linear solving, so the
    span must be closed under commutators.
    """
    # echelon form of [M_i | e_i]: reducing [C | 0] leaves [0 | -coordinates of C]
    k = len(matrices)
    z, one = field.zero(), field.one()
    flat = [[x for row in M for x in row] for M in matrices]
    m = len(flat[0]) if flat else 0
    basis = Subspace(field, m + k, [f + [one if t == i else z for t in range(k)] for i, f in enumerate(flat)])
    if any(p >= m for p in basis.pivots):
        raise ValueError("matrices are linearly dependent")
    table = {}
    for i, j in product(range(k), repeat=2):
        C = [x for row in _commutator(field, matrices[i], matrices[j]) for x in row]
        if all(field.is_zero(x) for x in C):
            table[(i, j)] = {}
            continue
        rest = basis.reduce(C + [z] * k)
        if any(not field.is_zero(x) for x in rest[:m]):
            raise ValueError(f"[{labels[i]}, {labels[j]}] leaves the span")
        table[(i, j)] = {t: field.neg(c) for t, c in enumerate(rest[m:]) if not field.is_zero(c)}
    return StructureAlgebra(labels, degrees, table, field, grading, name)


def clock_shift(q: int, field: Field):
    """The clock matrix A and shift matrix B over ``field``."""
    power = _root_powers(field, q)
    z, one = field.zero(), field.one()
    A = [[power(q - 1 - i) if i == j else z for j in range(q)] for i in range(q)]
    B = [[one if j == (i + 1) % q else z for j in range(q)] for i in range(q)]
    return A, B


def _matpow(field: Field, M, k: int):
    n = len(M)
    out = [[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = _matmul(field, out, M)
    return out


def build_pauli_matrix_oracle(q: int, field: Field | None = None) -> StructureAlgebra:
    """sl_q spanned by the q^2 - 1 matrices ``A^i B^j != I`` with degree (i, j)."""
    if not is_prime(q):
        raise FieldError(f"{q} is not prime")
    if field is None:
        field = QQ if q == 2 else CyclotomicField(q)
    A, B = clock_shift(q, field)
    labels, mats, degs = [], [], []
    for i, j in product(range(q), repeat=2):
        if (i, j) == (0, 0):
            continue
        labels.append(f"A^{i}B^{j}")
        mats.append(_matmul(field, _matpow(field, A, i), _matpow(field, B, j)))
        degs.append((i, j))
    return from_matrices(labels, mats, degs, field, Grading.pauli(q), name=f"pauli_matrices({q})")


# identity checking -----------------------------------------------------------


def is_identity(P: MultilinearPoly, A) -> bool:
    """Decide ``P in T_G(A)``.

    Thin algebras: one evaluation at the canonical basis vectors decides.
    Structure algebras: ``P`` must vanish on every basis substitution of
    matching degrees (exhaustive, by multilinearity).
    """
    if isinstance(A, ThinAlgebra):
        return A.field.is_zero(eval_poly_thin(P, A))
    return A.is_identity(P)


def derive_swap_lambda(g, h, k, A: ThinAlgebra):
    """lambda with ``[x1^g, x3^k, x2^h] - lambda [x1^g, x2^h, x3^k]`` an identity, or None."""
    f = A.field
    den, _ = eval_degrees_thin([g, h, k], A)
    if f.is_zero(den):
        return None
    num, _ = eval_degrees_thin([g, k, h], A)
    return f.div(num, den)


def derive_pauli_lambda(degrees: Sequence, A: ThinAlgebra):
    """lambda with ``[x4,x1,x2,x3] - lambda [x4,x3,x2,x1]`` an identity, or None."""
    g1, g2, g3, g4 = degrees
    f = A.field
    num, _ = eval_degrees_thin([g4, g1, g2, g3], A)
    den, _ = eval_degrees_thin([g4, g3, g2, g1], A)
    if f.is_zero(num) or f.is_zero(den):
        return None
    return f.div(num, den)
