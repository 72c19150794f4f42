"""Exact arithmetic kernel: rationals, polynomials, rational functions, linear algebra, lattices."""
from fractions import Fraction as Rational

from .lattice import IntLattice, hnf_lattice, kernel_of
from .linalg import QMatrix, SparseEchelon, nullspace, rref_rows, solve_affine, sparse_nullspace, sparse_rank
from .poly import (
    Monomial, NotDivisible, Poly, mono_degree, mono_key, mono_mul, monomials_up_to, poly_exact_divide, q,
    try_divide,
)
from .ratfunc import DegenerateSubstitution, RatFunc, as_ratfunc, substitute


def differentiate(f, v: int) -> RatFunc:
    """Partial derivative of a polynomial or rational function."""
    return as_ratfunc(f).diff(v)


__all__ = [
    "Rational", "IntLattice", "hnf_lattice", "kernel_of", "QMatrix", "SparseEchelon", "nullspace",
    "rref_rows", "solve_affine", "sparse_nullspace", "sparse_rank", "Monomial", "NotDivisible", "Poly",
    "mono_degree", "mono_key", "mono_mul", "monomials_up_to", "poly_exact_divide", "q", "try_divide",
    "DegenerateSubstitution", "RatFunc", "as_ratfunc", "substitute", "differentiate",
]
