from fractions import Fraction

import pytest
import sympy as sp

from relinv.algebra import (
    NotDivisible, Poly, QMatrix, RatFunc, SparseEchelon, hnf_lattice, kernel_of, monomials_up_to,
    poly_exact_divide, q, rref_rows, solve_affine, sparse_nullspace, substitute,
)
from relinv.algebra.identities import identity_rows
from relinv.expressions import VariableTable, parse_expression, parse_poly

T = VariableTable.of("x", "y", "z")
SX, SY, SZ = sp.symbols("x y z")


def P(text):
    return parse_poly(text, T)


def to_sympy(p: Poly):
    syms = [SX, SY, SZ]
    out = 0
    for m, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sp.Integer(c)
        for v, e in m:
            term *= syms[v] ** e
        out += term
    return sp.expand(out)


def test_q_normalizes_integral_fractions():
    assert q(Fraction(4, 2)) == 2 and type(q(Fraction(4, 2))) is int
    assert q(Fraction(1, 3)) == Fraction(1, 3)


def test_poly_arithmetic_matches_sympy():
    a, b = P("x^2*y - 3*z + 1/2"), P("y - x*z^3 + 2")
    assert to_sympy(a * b) == sp.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a - b) == sp.expand(to_sympy(a) - to_sympy(b))
    assert to_sympy(a ** 3) == sp.expand(to_sympy(a) ** 3)
    assert to_sympy(a.diff(0)) == sp.diff(to_sympy(a), SX)


def test_zero_coefficients_are_dropped():
    p = P("x - x")
    assert p.is_zero() and len(p) == 0


def test_exact_division():
    a, b = P("x + y"), P("x^2 - y + 3")
    assert poly_exact_divide(a * b, b) == a
    with pytest.raises(NotDivisible):
        poly_exact_divide(a * b + Poly.const(1), b)


def test_ratfunc_canonical_form():
    f = parse_expression("(x^2 - y^2)/(2*x - 2*y)", T)
    assert f == parse_expression("(x + y)/2", T)
    assert f.is_poly()
    g = parse_expression("1/(x*y)", T)
    assert not g.is_poly()
    assert (g * RatFunc(P("x*y"))).is_constant()


def test_ratfunc_diff_matches_sympy():
    f = parse_expression("(x^2 + y)/(x - z^2)", T)
    d = f.diff(0)
    expr = (SX ** 2 + SY) / (SX - SZ ** 2)
    assert sp.simplify(to_sympy(d.num) / to_sympy(d.den) - sp.diff(expr, SX)) == 0


def test_substitution():
    f = parse_expression("x^2*y", T)
    sigma = {0: parse_expression("1/y", T), 1: parse_expression("x/y", T)}
    assert substitute(f, sigma) == parse_expression("x/y^3", T)


def test_monomials_up_to_counts():
    assert len(monomials_up_to([0, 1, 2], 3)) == 20
    assert len(monomials_up_to([0, 1], 2, min_degree=1)) == 5


def test_nullspace_matches_sympy():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, Fraction(1, 2), 0]]
    ours = sparse_nullspace([{i: x for i, x in enumerate(r) if x} for r in rows], 4)
    M = sp.Matrix(rows)
    assert len(ours) == len(M.nullspace())
    for v in ours:
        assert all(x == 0 for x in M * sp.Matrix([sp.Rational(Fraction(c)) for c in v]))


def test_rref_matches_sympy():
    rows = [[2, 4, 1], [1, 2, 0], [3, 6, 1]]
    red, piv = rref_rows(rows, 3)
    R, spiv = sp.Matrix(rows).rref()
    assert tuple(piv) == spiv
    for i, row in enumerate(red):
        assert [sp.Rational(Fraction(x)) for x in row] == list(R.row(i))


def test_sparse_echelon_rank_tracking():
    e = SparseEchelon(3)
    assert e.add({0: 1, 1: 1})
    assert not e.add({0: 2, 1: 2})
    assert e.add({2: 5})
    assert e.rank == 2


def test_dense_matrix_nullspace():
    M = QMatrix.from_rows([[1, 1], [1, 1]])
    assert M.rank() == 1
    (v,) = M.nullspace()
    assert M @ v == [0, 0]


def test_solve_affine():
    x = solve_affine([{0: 1, 1: 1}, {1: 2}], [3, 4], 2)
    assert x == [1, 2]
    assert solve_affine([{0: 1}, {0: 1}], [1, 2], 1) is None


def test_hnf_lattice_membership():
    L = hnf_lattice([[3, -3], [2, 0]])
    assert L.same_as(hnf_lattice([[1, 3], [0, 6]]))
    assert L.contains([5, -3]) and not L.contains([1, 0])


def test_hnf_matches_sympy_determinant():
    vecs = [[4, 6, 2], [2, 2, 8], [0, 4, 6]]
    L = hnf_lattice(vecs)
    d = 1
    for i, row in enumerate(L.basis):
        d *= row[i]
    assert abs(d) == abs(sp.Matrix(vecs).det())


def test_kernel_of_relations():
    K = kernel_of([[-6, -12], [-16, -32]])
    assert K.rank == 1
    (v,) = K.basis
    assert -6 * v[0] - 16 * v[1] == 0 and sorted(map(abs, v)) == [3, 8]


def test_identity_rows_encode_rational_identities():
    x = RatFunc.var(0)
    cols = [[x / (x + 1)], [RatFunc.const(1) / (x + 1)], [RatFunc.const(-1)]]
    null = sparse_nullspace(identity_rows(cols), 3)
    assert len(null) == 1
    a, b, c = null[0]
    assert a == b == c
