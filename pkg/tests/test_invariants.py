from fractions import Fraction

import pytest

from relinv import scenario as sc
from relinv.algebra import RatFunc
from relinv.cohomology import WeightCocycle
from relinv.expressions import VariableTable
from relinv.geometry import Atlas, Chart, LieAlgebra, TransitionMap, VectorField
from relinv.invariants import (
    DivisorData, GridSpec, NotGlued, NotInvariant, WeightOrderViolation, check_weight_order, divisor_weight,
    generic_orbit_rank, glue_divisor_check, invariant_search, is_absolute_invariant, monomial_invariant_check,
    normalize_relation, render_monomial, transversality_check, verify_hit, weight_lattice_and_kernels,
)

LINE = Chart("U0", VariableTable.of("x"))
INF = Chart("Uinf", VariableTable.of("y"))
PLANE = Chart("P", VariableTable.of("x", "y"))


def F(chart, **coeffs):
    return VectorField.from_dict(chart, coeffs)


def model(name):
    return sc.Model(sc.load(name), sc.Options())


def line_atlas():
    atlas = Atlas({"U0": LINE, "Uinf": INF})
    atlas.add_overlap(TransitionMap(LINE, INF, {0: INF.parse("1/y")}, {0: LINE.parse("1/x")}, [LINE.parse("x")]))
    return atlas


def test_divisor_weight_of_eigenfunction():
    g = LieAlgebra([F(PLANE, x="x"), F(PLANE, y="2*y")], ["E1", "E2"])
    lam = divisor_weight(g, PLANE.parse("x^3*y"))
    assert [str(v) for v in lam.render_values(PLANE.table)] == ["3", "2"]


def test_divisor_weight_rejects_non_invariant():
    g = LieAlgebra([F(LINE, x="1")], ["X"])
    with pytest.raises(NotInvariant) as e:
        divisor_weight(g, LINE.parse("x"))
    assert e.value.index == 0


def test_divisor_weight_zero_function():
    g = LieAlgebra([F(LINE, x="1")], ["X"])
    with pytest.raises(ValueError):
        divisor_weight(g, RatFunc.const(0))


def test_rational_divisor_weight_is_difference():
    g = LieAlgebra([F(PLANE, x="x", y="3*y")], ["E"])
    lam = divisor_weight(g, PLANE.parse("y/x^2"))
    assert lam.render_values(PLANE.table) == ["1"]
    assert is_absolute_invariant(g, PLANE.parse("y/x^3"))
    assert not is_absolute_invariant(g, PLANE.parse("y/x^2"))


def test_monomial_invariant_check():
    g = LieAlgebra([F(PLANE, x="x", y="3*y")], ["E"])
    wx = divisor_weight(g, PLANE.parse("x"))
    wy = divisor_weight(g, PLANE.parse("y"))
    assert monomial_invariant_check([wx, wy], [-3, 1])
    assert not monomial_invariant_check([wx, wy], [-2, 1])


def test_heisenberg_divisor_weights_match_task():
    m = model("heisenberg")
    rep = sc.task_divisor_weight(m, {"divisor": {"expression": "y1", "chart": "U1", "order": 1}})
    assert rep["coordinates"] == {"A": 0, "B": -1}


def test_weight_order_violation_on_high_order_weight():
    m = model("sl3_curves")
    spec = m.spec("U3y", 3)
    g = m.algebra("U3y", 3)
    lam = WeightCocycle.fixed(g.chart, [g.chart.parse("y3")] + [RatFunc.const(0)] * (g.dim - 1))
    with pytest.raises(WeightOrderViolation):
        check_weight_order(lam, spec)
    ok = WeightCocycle.fixed(g.chart, [g.chart.parse("y1")] + [RatFunc.const(0)] * (g.dim - 1))
    check_weight_order(ok, spec)


def test_glue_on_projective_line():
    atlas = line_atlas()
    exps = glue_divisor_check(atlas, DivisorData({"U0": RatFunc.const(1), "Uinf": INF.parse("y^2")}))
    (unit, e), = exps[("U0", "Uinf")]
    assert e == 2
    with pytest.raises(NotGlued):
        glue_divisor_check(atlas, DivisorData({"U0": RatFunc.const(1), "Uinf": INF.parse("y + 1")}))


def test_glue_rejects_non_unit_ratio():
    atlas = line_atlas()
    # the ratio x*(y + y^2) has a zero at y = -1 inside the overlap
    with pytest.raises(NotGlued):
        glue_divisor_check(atlas, DivisorData({"U0": LINE.parse("x"), "Uinf": INF.parse("y + y^2")}))


def test_glue_task_negative_exit():
    m = model("aff1_cp1")
    with pytest.raises(NotGlued):
        sc.task_glue(m, {"functions": {"U0": "1", "Uinf": "y + 1"}})


def test_grid_values():
    assert GridSpec((1,), 2).values() == [-2, -1, 0, 1, 2]
    vals = GridSpec((2, 3), 1).values()
    assert Fraction(1, 2) in vals and Fraction(-2, 3) in vals and len(vals) == len(set(vals))
    assert len(GridSpec((1,), 1).points(2)) == 9
    with pytest.raises(ValueError):
        GridSpec((0,), 1)


def test_search_on_x2dx_line():
    m = model("x2dx")
    g = m.algebra("U")
    basis = m.space("U").basis
    hits = invariant_search(g, basis, GridSpec((1,), 3), 3)
    assert [h.weight for h in hits] == [(0, 0), (0, 1), (0, 2), (0, 3)]
    assert all(verify_hit(g, basis, h) for h in hits)


def test_search_jobs_agree():
    m = model("x2dx")
    g = m.algebra("U")
    basis = m.space("U").basis
    one = invariant_search(g, basis, GridSpec((1, 2), 2), 3)
    two = invariant_search(g, basis, GridSpec((1, 2), 2), 3, jobs=2)
    assert [(h.weight, h.polys) for h in one] == [(h.weight, h.polys) for h in two]


def test_lattice_and_kernel():
    wl = weight_lattice_and_kernels([[0, -1], [0, -3]])
    kern = [normalize_relation(list(v)) for v in wl.kernel.basis]
    assert kern == [[-3, 1]]
    assert render_monomial(["y1", "y2"], kern[0]) == "y2/y1^3"
    assert wl.contains([0, 2]) and not wl.contains([1, 0])
    assert wl.same_as([[0, 1]])


def test_lattice_with_fractions():
    wl = weight_lattice_and_kernels([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])
    assert wl.contains([Fraction(1, 2), Fraction(2, 3)])
    assert not wl.contains([Fraction(1, 4), 0])


def test_render_monomial_forms():
    assert render_monomial(["a", "b", "c"], [0, 0, 0]) == "1"
    assert render_monomial(["a", "b", "c"], [1, -2, -1]) == "a/(b^2*c)"


def test_transversality_on_affine_line():
    m = model("aff1_cp1")
    g = m.algebra("Uinf")
    lam = m.space("Uinf").general()
    assert transversality_check(g, lam.specialize({"B1": 1, "B2": 1}))
    assert not transversality_check(g, lam.specialize({"B1": 1, "B2": 0}))


def test_generic_orbit_rank():
    g = LieAlgebra([F(PLANE, x="1"), F(PLANE, x="x")], ["X", "Y"])
    assert generic_orbit_rank(g.generators) == 1
    m = model("sl3_curves")
    assert generic_orbit_rank(m.algebra("U3y", 1).generators) == 3
