"""Exact verification of graded polynomial identities of U_1, W_1 and Pauli-graded sl_q."""

from .algebras import StructureAlgebra, ThinAlgebra, is_identity, make_thin
from .core import QQ, CyclotomicField, Field, FieldError, Grading, PrimeField, Scalar
from .freelie import Bracket, MultilinearPoly, Var, bracket, make_generator, normalize
from .independence import (
    build_H,
    build_L4,
    check_pair_independence,
    check_triple_independence,
    minimal_filter,
    no_finite_basis_evidence,
)
from .parsing import format_poly, parse_poly, to_poly
from .tideal import consequence_span, identity_kernel, sweep, verify_tuple
from .tuples import classify, oracle_classify

__version__ = "0.1.0"

__all__ = [
    "Bracket",
    "CyclotomicField",
    "Field",
    "FieldError",
    "Grading",
    "MultilinearPoly",
    "PrimeField",
    "QQ",
    "Scalar",
    "StructureAlgebra",
    "ThinAlgebra",
    "Var",
    "__version__",
    "bracket",
    "build_H",
    "build_L4",
    "check_pair_independence",
    "check_triple_independence",
    "classify",
    "consequence_span",
    "format_poly",
    "identity_kernel",
    "is_identity",
    "make_generator",
    "make_thin",
    "minimal_filter",
    "no_finite_basis_evidence",
    "normalize",
    "oracle_classify",
    "parse_poly",
    "sweep",
    "to_poly",
    "verify_tuple",
]
