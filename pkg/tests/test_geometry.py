import pytest

from relinv.algebra import RatFunc
from relinv.expressions import VariableTable
from relinv.geometry import (
    Atlas, AtlasError, Chart, ChartMismatch, LieAlgebra, NotClosed, TransitionMap, VectorField, VolumeForm,
    derive_units, divergence, identity_transition, isotropy_analysis, lie_bracket, transport_field,
    verify_closure,
)

LINE = Chart("U0", VariableTable.of("x"))
INF = Chart("Uinf", VariableTable.of("y"))
PLANE = Chart("P", VariableTable.of("x", "y"))


def F(chart, **coeffs):
    return VectorField.from_dict(chart, coeffs)


def sl2():
    return LieAlgebra([F(LINE, x="1"), F(LINE, x="x"), F(LINE, x="x^2")], ["X", "Y", "Z"])


def line_transition():
    return TransitionMap(LINE, INF, {0: INF.parse("1/y")}, {0: LINE.parse("1/x")}, [LINE.parse("x")])


def test_bracket():
    assert lie_bracket(F(LINE, x="1"), F(LINE, x="x^2")) == F(LINE, x="2*x")
    assert lie_bracket(F(PLANE, x="y"), F(PLANE, y="x")) == F(PLANE, x="-x", y="y")


def test_bracket_requires_same_chart():
    with pytest.raises(ChartMismatch):
        lie_bracket(F(LINE, x="1"), F(INF, y="1"))


def test_structure_constants_of_sl2():
    c = verify_closure(sl2().generators)
    assert c[0][2] == [0, 2, 0]    # [X, Z] = 2Y
    assert c[1][2] == [0, 0, 1]    # [Y, Z] = Z


def test_non_closed_span_is_rejected():
    with pytest.raises(NotClosed):
        verify_closure([F(LINE, x="1"), F(LINE, x="x^2")])


def test_transport_to_infinity_chart():
    t = line_transition()
    got = [transport_field(X, t) for X in sl2().generators]
    assert got == [F(INF, y="-y^2"), F(INF, y="-y"), F(INF, y="-1")]


def test_atlas_round_trip_check():
    atlas = Atlas({"U0": LINE, "Uinf": INF})
    atlas.add_overlap(line_transition())
    atlas.check()
    bad = Atlas({"U0": LINE, "Uinf": INF})
    bad.add_overlap(TransitionMap(LINE, INF, {0: INF.parse("1/y")}, {0: LINE.parse("2/x")}))
    with pytest.raises(AtlasError):
        bad.check()


def test_duplicate_overlap_rejected():
    atlas = Atlas({"U0": LINE, "Uinf": INF})
    atlas.add_overlap(line_transition())
    with pytest.raises(AtlasError):
        atlas.add_overlap(line_transition().reversed())


def test_derive_units_projective_plane():
    U3 = Chart("U3", VariableTable.of("x", "y"))
    U2 = Chart("U2", VariableTable.of("xt", "yt"))
    t = TransitionMap(U3, U2, {0: U2.parse("xt/yt"), 1: U2.parse("1/yt")},
                      {0: U3.parse("x/y"), 1: U3.parse("1/y")})
    assert derive_units(t) == [U3.parse("y")]


def test_identity_transition():
    t = identity_transition(PLANE)
    f = PLANE.parse("x^2/y")
    assert t.pull(f) == f


def test_divergence_and_density():
    X = F(PLANE, x="x^2", y="x*y")
    assert divergence(X, VolumeForm.standard(PLANE)) == PLANE.parse("3*x")
    omega = VolumeForm.standard(PLANE, density=PLANE.parse("y"))
    assert divergence(X, omega) == PLANE.parse("4*x")
    partial = VolumeForm.standard(PLANE, ["x"])
    assert divergence(X, partial) == PLANE.parse("2*x")


def test_isotropy_sl2_at_origin():
    res = isotropy_analysis(sl2(), {"x": 0})
    assert res.dim == 2 and res.solvable and res.has_codim1_ideal


def test_isotropy_perfect_subalgebra():
    # sl(2) acting linearly on the plane fixes the origin with perfect isotropy
    g = LieAlgebra([F(PLANE, x="y"), F(PLANE, y="x"), F(PLANE, x="x", y="-y")])
    res = isotropy_analysis(g, {"x": 0, "y": 0})
    assert res.dim == 3 and res.perfect and not res.has_codim1_ideal


def test_field_evaluation_outside_domain():
    from relinv.geometry import PointNotInDomain
    with pytest.raises(PointNotInDomain):
        F(LINE, x="1/x").evaluate({0: 0})


def test_field_repr_and_dict():
    X = F(PLANE, x="y")
    assert X.as_dict() == {"x": "y"}
    assert "d_x" in X.render()
    assert X.apply(RatFunc.var(0)) == PLANE.parse("y")
