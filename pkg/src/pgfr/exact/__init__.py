"""Exact arithmetic: integer polynomials, algebraic numbers, integer lattices."""

from .lattice import IntMatrix, hnf, integer_kernel, solve_in_lattice, xgcd
from .numbers import (
    AlgebraicNumber,
    ConjugateCombination,
    CubicRoot,
    CyclotomicElement,
    Surd,
    approx,
    cubic_roots,
    exact_linear_combination,
    is_zero,
    surd,
)
from .numtheory import (
    cubic_reducibility,
    double_star_cubic,
    factorize,
    is_perfect_square,
    prime_power,
    rational_roots,
    squarefree_decomposition,
)
from .poly import IntPolynomial, cyclotomic, isolate_real_roots, poly_divmod, relation_poly

__all__ = [
    "AlgebraicNumber", "ConjugateCombination", "CubicRoot", "CyclotomicElement", "IntMatrix",
    "IntPolynomial", "Surd", "approx", "cubic_reducibility", "cubic_roots", "cyclotomic",
    "double_star_cubic", "exact_linear_combination", "factorize", "hnf", "integer_kernel",
    "is_perfect_square", "is_zero", "isolate_real_roots", "poly_divmod", "prime_power",
    "rational_roots", "relation_poly", "solve_in_lattice", "squarefree_decomposition", "surd", "xgcd",
]
