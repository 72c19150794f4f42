import sympy as sp
import pytest

from relinv import scenario as sc
from relinv.algebra import RatFunc
from relinv.cohomology import (
    NotInSpan, WeightCocycle, coboundary, cocycle_check, default_param_names, pic_assemble,
    solve_cocycle_space, verify_compatibility,
)
from relinv.expressions import VariableTable
from relinv.geometry import Chart, LieAlgebra, VectorField

LINE = Chart("U0", VariableTable.of("x"))


def F(chart, **coeffs):
    return VectorField.from_dict(chart, coeffs)


def sl2():
    return LieAlgebra([F(LINE, x="1"), F(LINE, x="x"), F(LINE, x="x^2")], ["X", "Y", "Z"])


def model(name):
    return sc.Model(sc.load(name), sc.Options())


def sympy_cocycle_defect(fields, values, symbols):
    """λ([X_i,X_j]) - X_i λ(X_j) + X_j λ(X_i), computed in sympy from the raw coefficients."""
    def apply(X, f):
        return sum(c * sp.diff(f, s) for c, s in zip(X, symbols))

    def bracket(X, Y):
        return [sp.expand(apply(X, b) - apply(Y, a)) for a, b in zip(X, Y)]

    # express brackets in the span of the fields by matching coefficients
    coeffs = sp.symbols(f"k0:{len(fields)}")
    out = []
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            br = bracket(fields[i], fields[j])
            eqs = []
            for comp in range(len(symbols)):
                expr = sp.expand(br[comp] - sum(k * f[comp] for k, f in zip(coeffs, fields)))
                eqs += sp.Poly(expr, *symbols).coeffs()
            sol = sp.solve(eqs, coeffs, dict=True)[0]
            lam_br = sum(sol.get(k, 0) * v for k, v in zip(coeffs, values))
            out.append(sp.simplify(lam_br - apply(fields[i], values[j]) + apply(fields[j], values[i])))
    return out


def test_sl2_line_cocycle_space():
    space = solve_cocycle_space(sl2(), d=3, names=["A"])
    assert space.dim == 1
    lam = space.general().specialize({"A": 1})
    assert cocycle_check(sl2(), lam) == []
    # sympy oracle on the same representative
    x = sp.Symbol("x")
    vals = [sp.sympify(t) for t in lam.render_values(LINE.table)]
    assert all(d == 0 for d in sympy_cocycle_defect([[1], [x], [x**2]], vals, [x]))


def test_coboundaries_are_cocycles_and_have_zero_class():
    g = sl2()
    space = solve_cocycle_space(g, d=3, names=["A"])
    mu = LINE.parse("3*x^2 - x + 5")
    d_mu = coboundary(g, mu)
    assert cocycle_check(g, d_mu) == []
    assert space.coordinates(d_mu) == [0]


def test_coordinates_modulo_coboundaries():
    g = sl2()
    space = solve_cocycle_space(g, d=3, names=["A"])
    base = space.general().specialize({"A": 1})
    shifted = WeightCocycle.fixed(LINE, [v * 4 + w for v, w in zip(base.values, coboundary(g, LINE.parse("x^3")).values)])
    assert space.coordinates(shifted) == [4]


def test_non_cocycle_is_not_in_span():
    g = sl2()
    space = solve_cocycle_space(g, d=3, names=["A"])
    bogus = WeightCocycle.fixed(LINE, [RatFunc.const(1), RatFunc.const(0), RatFunc.const(0)])
    assert cocycle_check(g, bogus)
    with pytest.raises(NotInSpan):
        space.coordinates(bogus)


def test_parse_and_equals():
    lam = WeightCocycle.parse(LINE, ["0", "A/2", "A*x"], ["A"])
    assert lam.equals(WeightCocycle.parse(LINE, ["0", "1/2*A", "x*A"], ["A"]))
    assert not lam.equals(WeightCocycle.parse(LINE, ["0", "A", "A*x"], ["A"]))


def test_default_param_names_are_distinct():
    names = default_param_names(0, 3) + default_param_names(1, 3)
    assert len(set(names)) == 6


def test_compatibility_sl2_line():
    m = model("sl2_cp1")
    res, algs, spaces = m.compatibility()
    assert res.relations() == ["B = -A"]
    assert res.exponent_text() == {"U0/Uinf": "(x)^(A)"}
    assert pic_assemble(res).render() == "C^0 x Z^1 (ansatz-relative)"
    for a in range(-3, 4):
        assert verify_compatibility(m.work_atlas, algs, spaces, res, {"A": a})


def test_compatibility_affine_line_keeps_continuous_part():
    res, _, _ = model("aff1_cp1").compatibility()
    assert res.relations() == ["A = B1 - B2"]
    assert pic_assemble(res).render() == "C^1 x Z^1 (ansatz-relative)"


def test_plane_dim_zero_space():
    space = model("sl2_cp2").space("U3")
    assert space.dim == 0
    assert len(space.general().values) == space.algebra.dim
    assert all(v.is_zero() for v in space.general().values)
