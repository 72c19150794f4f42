from functools import lru_cache

from hypothesis import given, settings, strategies as st

from relinv import scenario as sc
from relinv.algebra import Poly, RatFunc
from relinv.cohomology import coboundary, cocycle_check
from relinv.expressions import VariableTable
from relinv.geometry import Chart, VectorField, VolumeForm, divergence, lie_bracket
from relinv.invariants import GridSpec, check_weight_order, divisor_weight, invariant_search, verify_hit
from relinv.jets import JetSpec, prolong
from relinv.suite import EXPRESSIONS

SPACE = Chart("P", VariableTable.of("x", "y", "z"))
PLANE = Chart("Q", VariableTable.of("x", "y"))
CURVES = {k: JetSpec(PLANE, ("x",), ("y",), k) for k in range(4)}


def polys(nvars, max_degree=3, max_terms=4, coeff=6):
    exps = st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars).filter(
        lambda e: sum(e) <= max_degree)
    mono = exps.map(lambda e: tuple((v, k) for v, k in enumerate(e) if k))
    return st.dictionaries(mono, st.integers(-coeff, coeff), max_size=max_terms).map(Poly)


def fields(chart, max_degree=2):
    return st.lists(polys(chart.dim, max_degree, 3), min_size=chart.dim, max_size=chart.dim).map(
        lambda ps: VectorField(chart, [RatFunc(p) for p in ps]))


@lru_cache(maxsize=None)
def model(name):
    return sc.Model(sc.load(name), sc.Options())


@settings(max_examples=1000)
@given(polys(3), polys(3), polys(3))
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    d = b + Poly.const(7)
    if not d.is_zero():
        assert (RatFunc(a) / RatFunc(d)) * RatFunc(d) == RatFunc(a)


@settings(max_examples=100)
@given(fields(SPACE), fields(SPACE), fields(SPACE))
def test_jacobi_identity(X, Y, Z):
    s = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
    assert s.is_zero()


@settings(max_examples=200)
@given(fields(PLANE), fields(PLANE), st.integers(0, 3))
def test_prolongation_is_a_homomorphism(X, Y, k):
    spec = CURVES[k]
    assert prolong(lie_bracket(X, Y), k, spec) == lie_bracket(prolong(X, k, spec), prolong(Y, k, spec))


@settings(max_examples=100)
@given(fields(SPACE), fields(SPACE))
def test_divergence_is_a_cocycle(X, Y):
    omega = VolumeForm.standard(SPACE)
    assert divergence(lie_bracket(X, Y), omega) == X.apply(divergence(Y, omega)) - Y.apply(divergence(X, omega))


@settings(max_examples=100)
@given(fields(SPACE), polys(3, 2))
def test_rescaled_volume_shifts_divergence_by_log_derivative(X, p):
    rho = RatFunc(p + Poly.const(11))
    if rho.is_zero():
        return
    omega = VolumeForm.standard(SPACE)
    scaled = VolumeForm.standard(SPACE, density=rho)
    assert divergence(X, scaled) == divergence(X, omega) + X.apply(rho) / rho


@settings(max_examples=200)
@given(polys(3, 3))
def test_coboundaries_are_cocycles(p):
    g = model("sl3_j1").algebra("U3y")
    assert cocycle_check(g, coboundary(g, RatFunc(p))) == []


def test_search_hits_reverify():
    m = model("heisenberg")
    g = m.algebra("U1", 2)
    basis = m.basis_at("U1", 2)
    hits = invariant_search(g, basis, GridSpec((1,), 4), 3, order=2)
    assert hits
    assert all(verify_hit(g, basis, h) for h in hits)


@settings(max_examples=20)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_weights_are_multiplicative(a, b):
    g = model("sl3_curves").algebra("U3y", 5)
    R2, R5 = g.chart.parse(EXPRESSIONS["R2"]), g.chart.parse(EXPRESSIONS["R5"])
    if a == b == 0:
        return
    w = divisor_weight(g, R2 ** a * R5 ** b)
    w2, w5 = divisor_weight(g, R2), divisor_weight(g, R5)
    assert all(u == x * a + y * b for u, x, y in zip(w.values, w2.values, w5.values))


@settings(max_examples=10)
@given(st.sampled_from([("heisenberg", "U1", 1, "y1"), ("heisenberg", "U1", 2, "y2"),
                        ("sl3_curves", "U3y", 2, EXPRESSIONS["R2"]), ("sl3_curves", "U3y", 5, EXPRESSIONS["R5"])]))
def test_jet_weights_have_low_weighted_degree(case):
    name, chart, order, text = case
    m = model(name)
    g = m.algebra(chart, order)
    check_weight_order(divisor_weight(g, g.chart.parse(text)), m.spec(chart, order))
