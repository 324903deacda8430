"""Exact scalar fields and grading-group arithmetic.

Three fields are supported: the rationals, prime fields F_p with p odd, and
the cyclotomic extension Q(eps) of the rationals by a primitive q-th root of
unity for a prime q.  Field elements are plain Python values (``Fraction``,
``int`` residues, tuples of ``Fraction``) manipulated through the owning
:class:`Field`; :class:`Scalar` wraps a value together with its field for
user-facing arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class FieldError(ValueError):
    """Invalid field construction or mixed-field arithmetic."""


class GradingError(ValueError):
    """Degrees from incompatible grading groups."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class Field:
    """Base class for the exact fields.

    Subclasses implement the element operations on raw values; vector helpers
    are provided so the linear algebra hot loops avoid per-element dispatch.
    """

    characteristic: int = 0

    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, x: Fraction):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def format(self, x) -> str:
        return str(x)

    # vector helpers -------------------------------------------------------

    def axpy(self, c, x: Sequence, y: Sequence) -> list:
        """Return ``y - c*x`` componentwise."""
        return [self.sub(b, self.mul(c, a)) for a, b in zip(x, y)]

    def scale(self, c, x: Sequence) -> list:
        return [self.mul(c, a) for a in x]

    def dot(self, x: Sequence, y: Sequence):
        acc = self.zero()
        for a, b in zip(x, y):
            acc = self.add(acc, self.mul(a, b))
        return acc


@dataclass(frozen=True)
class RationalField(Field):
    characteristic: int = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, x):
        return Fraction(x)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / x

    def is_zero(self, x):
        return x == 0

    def axpy(self, c, x, y):
        return [b - c * a for a, b in zip(x, y)]

    def scale(self, c, x):
        return [c * a for a in x]

    def dot(self, x, y):
        return sum((a * b for a, b in zip(x, y)), Fraction(0))

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int = 3

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.p == 2:
            raise FieldError("characteristic 2 is not supported")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, x):
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return x * y % self.p

    def neg(self, x):
        return -x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def is_zero(self, x):
        return x % self.p == 0

    def axpy(self, c, x, y):
        p = self.p
        return [(b - c * a) % p for a, b in zip(x, y)]

    def scale(self, c, x):
        p = self.p
        return [c * a % p for a in x]

    def dot(self, x, y):
        return sum(a * b for a, b in zip(x, y)) % self.p

    def root_of_unity(self, q: int) -> int:
        """Smallest element of multiplicative order ``q`` (q prime)."""
        if (self.p - 1) % q:
            raise FieldError(f"F_{self.p} has no primitive {q}-th root of unity")
        for g in range(2, self.p):
            if pow(g, q, self.p) == 1:
                return g
        raise FieldError(f"no primitive {q}-th root of unity in F_{self.p}")

    def __str__(self):
        return f"F_{self.p}"


def _integral(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class CyclotomicField(Field):
    """Q(eps) with eps a primitive q-th root of unity, q prime.

    Elements are tuples ``(c_0, ..., c_{q-2})`` of rationals, the coordinates
    over the power basis ``1, eps, ..., eps^(q-2)``.  Integral coordinates are
    kept as ints (equal and hash-equal to the corresponding fractions), which
    keeps arithmetic on the common integral elements fast.
    """

    q: int = 3
    characteristic: int = 0

    def __post_init__(self):
        if not is_prime(self.q):
            raise FieldError(f"cyclotomic order {self.q} is not prime")

    @property
    def degree(self) -> int:
        return self.q - 1

    def zero(self):
        return (0,) * (self.q - 1)

    def from_int(self, n):
        return self.from_fraction(Fraction(n))

    def from_fraction(self, x):
        return (_integral(Fraction(x)),) + (0,) * (self.q - 2)

    def _reduce(self, dense: Sequence) -> tuple:
        """Fold a coefficient list indexed by exponent into canonical form."""
        q = self.q
        acc = [0] * q
        for k, c in enumerate(dense):
            if c:
                acc[k % q] += c
        top = acc[q - 1]
        return tuple(_integral(c - top) for c in acc[: q - 1])

    def canonical(self, exps: dict) -> tuple:
        q = self.q
        dense = [0] * q
        for k, c in exps.items():
            dense[k % q] += Fraction(c)
        return self._reduce(dense)

    def root_power(self, k: int) -> tuple:
        return self.canonical({k: 1})

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        dense = [0] * (2 * self.q - 3)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        dense[i + j] += a * b
        return self._reduce(dense)

    def is_zero(self, x):
        return not any(x)

    def inv(self, x):
        if self.is_zero(x):
            raise ZeroDivisionError("inverse of zero")
        d = self.q - 1
        # Solve (multiplication-by-x matrix) * y = 1; column j is x*eps^j.
        cols = [self.mul(x, self.root_power(j)) for j in range(d)]
        aug = [[Fraction(cols[j][i]) for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            lead = aug[c][c]
            aug[c] = [v / lead for v in aug[c]]
            for r in range(d):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
        return tuple(_integral(aug[i][d]) for i in range(d))

    def format(self, x) -> str:
        parts = []
        for k, c in enumerate(x):
            if not c:
                continue
            mono = "" if k == 0 else ("e" if k == 1 else f"e^{k}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return f"Q(e{self.q})"


QQ = RationalField()


def field_from_spec(kind: str, p: int | None = None, q: int | None = None) -> Field:
    """Build a field from a (kind, parameter) description."""
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(p)
    if kind == "cyclotomic":
        return CyclotomicField(q)
    raise FieldError(f"unknown field kind {kind!r}")


def field_for_char(char: int) -> Field:
    return QQ if char == 0 else PrimeField(char)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    field: Field
    value: object

    def _check(self, other: "Scalar") -> None:
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        self._check(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inv(self):
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __str__(self):
        return self.field.format(self.value)


def scalar(field: Field, x) -> Scalar:
    """Coerce an int or Fraction into ``field``."""
    if isinstance(x, int):
        return Scalar(field, field.from_int(x))
    return Scalar(field, field.from_fraction(Fraction(x)))


def scalar_arith(op: str, x: Scalar, y: Scalar | None = None) -> Scalar:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown scalar operation {op!r}")


def cyclotomic_canonical(exps: dict, q: int) -> Scalar:
    """Canonical form of ``sum c_k eps^k`` in Q(eps), eps of prime order q."""
    field = CyclotomicField(q)
    return Scalar(field, field.canonical(exps))


# gradings -------------------------------------------------------------------


@dataclass(frozen=True)
class Grading:
    """The grading group: Z when ``moduli`` is None, else a product of cyclic groups.

    Degrees are ``int`` for Z and tuples of reduced residues otherwise.
    """

    moduli: tuple | None = None

    @classmethod
    def integers(cls) -> "Grading":
        return cls(None)

    @classmethod
    def pauli(cls, q: int) -> "Grading":
        return cls((q, q))

    @property
    def is_integer(self) -> bool:
        return self.moduli is None

    def zero(self):
        return 0 if self.moduli is None else (0,) * len(self.moduli)

    def check(self, d) -> None:
        if self.moduli is None:
            if not isinstance(d, int) or isinstance(d, bool):
                raise GradingError(f"{d!r} is not an integer degree")
        elif not (isinstance(d, tuple) and len(d) == len(self.moduli)):
            raise GradingError(f"{d!r} is not a degree in Z_{self.moduli}")

    def reduce(self, d):
        self.check(d)
        if self.moduli is None:
            return d
        return tuple(a % m for a, m in zip(d, self.moduli))

    def add(self, a, b):
        if self.moduli is None:
            return a + b
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        if self.moduli is None:
            return -a
        return tuple(-x % m for x, m in zip(a, self.moduli))

    def sum(self, ds: Iterable):
        acc = self.zero()
        for d in ds:
            acc = self.add(acc, d)
        return acc

    def elements(self) -> list:
        """All group elements; only defined for finite gradings."""
        if self.moduli is None:
            raise GradingError("Z is infinite")
        from itertools import product

        return list(product(*(range(m) for m in self.moduli)))

    def format(self, d) -> str:
        if self.moduli is None:
            return str(d)
        return "(" + ",".join(str(x) for x in d) + ")"


ZZ = Grading.integers()


def infer_grading(d) -> Grading:
    if isinstance(d, int) and not isinstance(d, bool):
        return ZZ
    raise GradingError(f"cannot infer a grading for {d!r}")


def degree_add(ds: Sequence, grading: Grading | None = None):
    """Sum degrees in the grading group (Z when ``grading`` is omitted)."""
    grading = grading or ZZ
    for d in ds:
        grading.check(d)
    return grading.reduce(grading.sum(ds))


def degree_residue(d: int, p: int) -> int:
    ZZ.check(d)
    return d % p
