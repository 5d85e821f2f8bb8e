"""Prime fields, bigraded free graded-commutative algebras and sparse F_p linear algebra."""
from .algebra import (
    Bidegree,
    Element,
    FreeGCAlgebra,
    GeneratorSpec,
    Monomial,
    Parity,
    PoincareTable,
    basis_in_bidegree,
    ext,
    make_algebra,
    multiply,
    poincare_series,
    poly,
    positive_functional,
)
from .field import check_prime, inverse, is_prime
from .linalg import Span, axpy, columns_from_rows, mat_vec, rank, rank_kernel

__all__ = [
    "Bidegree", "Element", "FreeGCAlgebra", "GeneratorSpec", "Monomial", "Parity",
    "PoincareTable", "Span", "axpy", "basis_in_bidegree", "check_prime", "columns_from_rows",
    "ext", "inverse", "is_prime", "make_algebra", "mat_vec", "multiply", "poincare_series",
    "poly", "positive_functional", "rank", "rank_kernel",
]
