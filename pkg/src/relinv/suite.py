"""Acceptance checks over the bundled worked examples.

Each check returns a list of comparisons ``(label, expected, computed)`` and
passes when every pair is equal.  Expressions that feed the checks live in
``EXPRESSIONS`` so a caller can substitute a corrupted one and watch the
named check fail.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import Poly, RatFunc, hnf_lattice, q
from .cohomology import WeightCocycle, coboundary, cocycle_check, pic_assemble
from .geometry import Chart, VectorField, VolumeForm, divergence, lie_bracket
from .invariants import (
    GridSpec, check_weight_order, divisor_weight, generic_orbit_rank, invariant_search, normalize_relation,
    render_monomial, transversality_check, verify_hit, weight_lattice_and_kernels,
)
from .expressions import VariableTable
from .jets import JetSpec, prolong
from . import scenario as sc

EXPRESSIONS: Dict[str, str] = {
    "R2": "y2",
    "R5": "9*y2^2*y5 - 45*y2*y3*y4 + 40*y3^3",
    "R7": ("18*y2^4*(9*y2^2*y5 - 45*y2*y3*y4 + 40*y3^3)*y7 - 189*y2^6*y6^2"
           " + 126*y2^4*(9*y2*y3*y5 + 15*y2*y4^2 - 25*y3^2*y4)*y6 - 189*y2^4*(15*y2*y4 + 4*y3^2)*y5^2"
           " + 210*y2^2*y3*(63*y2^2*y4^2 - 60*y2*y3^2*y4 + 32*y3^4)*y5 - 4725*y2^4*y4^4"
           " - 7875*y2^3*y3^2*y4^3 + 31500*y2^2*y3^4*y4^2 - 33600*y2*y3^6*y4 + 11200*y3^8"),
    "f1": "u_pppp",
    "f2": ("u_xxpp + 2*p*u_xypp + 2*u*u_xppp + p^2*u_yypp + 2*p*u*u_yppp + u^2*u_pppp"
           " + (u_y*u_ppp - u_p*u_ypp - 4*u_yyp)*p - 3*u*u_ypp + (-u_xpp + 4*u_yp)*u_p"
           " + u_x*u_ppp - 3*u_y*u_pp + 6*u_yy - 4*u_xyp"),
}

Comparison = Tuple[str, object, object]


class Context:
    def __init__(self, expressions: Mapping[str, str], seed: int = 0):
        self.expr = dict(expressions)
        self.seed = seed
        self._models: Dict[str, sc.Model] = {}

    def model(self, name: str) -> sc.Model:
        if name not in self._models:
            self._models[name] = sc.Model(sc.load(name), sc.Options(seed=self.seed))
        return self._models[name]


@dataclass
class Check:
    criterion: int
    name: str
    heavy: bool
    target_seconds: float
    run: Callable[[Context], List[Comparison]]


def _weight_coords(m: sc.Model, chart: str, order: int, text: str) -> List:
    g = m.algebra(chart, order)
    lam = divisor_weight(g, g.chart.parse(text))
    return list(m.coordinates(chart, lam, order))


def _cocycle_matches(m: sc.Model, chart: str, texts: Sequence[str]) -> bool:
    sp = m.space(chart)
    expected = WeightCocycle.parse(sp.chart, texts, sp.names)
    return sp.general().equals(expected)


def _same_integrality(forms: Sequence[Poly], expected: Sequence[Sequence], nvars: int) -> bool:
    """Both families of linear forms generate the same Z-module of functionals."""
    def vecs(rows):
        D = 1
        for r in rows:
            for x in r:
                d = Fraction(x).denominator
                D = D * d // _gcd(D, d)
        return D, rows

    got = [[f.terms.get(((i, 1),), 0) for i in range(nvars)] for f in forms]
    D1, _ = vecs(got)
    D2, _ = vecs(expected)
    D = D1 * D2
    a = hnf_lattice([[int(Fraction(x) * D) for x in r] for r in got], nvars)
    b = hnf_lattice([[int(Fraction(x) * D) for x in r] for r in expected], nvars)
    return a.same_as(b)


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def _hits(hits, names) -> List:
    return [(tuple(q(x) for x in h.weight), sorted(h.render(names))) for h in hits]


# ---------------------------------------------------------------- criteria 1-8

def check_sl2(ctx: Context) -> List[Comparison]:
    m = ctx.model("sl2_cp1")
    sp = m.space("U0")
    res, _, _ = m.compatibility()
    pic = pic_assemble(res)
    return [
        ("dim H1 on U0", 1, sp.dim),
        ("representative on U0", True, _cocycle_matches(m, "U0", ["0", "A/2", "A*x"])),
        ("relations", ["B = -A"], res.relations()),
        ("transition exponent", {"U0/Uinf": "(x)^(A)"}, res.exponent_text()),
        ("integrality", ["A"], res.integrality_text()),
        ("Pic", "C^0 x Z^1 (ansatz-relative)", pic.render()),
    ]


def check_aff1(ctx: Context) -> List[Comparison]:
    m = ctx.model("aff1_cp1")
    res, _, _ = m.compatibility()
    out: List[Comparison] = [
        ("dims", (1, 2), (m.space("U0").dim, m.space("Uinf").dim)),
        ("relations", ["A = B1 - B2"], res.relations()),
        ("Pic", "C^1 x Z^1 (ansatz-relative)", pic_assemble(res).render()),
    ]
    sp = m.space("Uinf")
    g = m.algebra("Uinf")
    table = {}
    for b1 in range(-2, 3):
        for b2 in range(-2, 3):
            lam = sp.general().specialize({"B1": b1, "B2": b2})
            table[(b1, b2)] = transversality_check(g, lam, seed=ctx.seed)
    out.append(("transversal iff B1 = B2", {k: k[0] == k[1] for k in table}, table))
    glued = {}
    for b1 in range(-3, 4):
        task = {"functions": {"U0": "1", "Uinf": "y^(-B1)"}, "parameters": {"B1": b1}}
        glued[b1] = sc.task_glue(m, task)["transitions"]["U0/Uinf"]
    out.append(("divisor {1, y^(-B1)} glues", {b: ("1" if b == 0 else f"(x)^({-b})") for b in glued}, glued))
    return out


def check_x2dx(ctx: Context) -> List[Comparison]:
    m = ctx.model("x2dx")
    sp = m.space("U")
    g = m.algebra("U")
    trans = all(transversality_check(g, sp.general().specialize({"A": a, "B": b}), seed=ctx.seed)
                for a in range(-2, 3) for b in range(-2, 3))
    hits = invariant_search(g, sp.basis, GridSpec((1, 2, 3, 6), 6), 5)
    return [
        ("dim", 2, sp.dim),
        ("representative A + B*x", True, _cocycle_matches(m, "U", ["A + B*x"])),
        ("transversal for all sampled (A, B)", True, trans),
        ("search hit weights (d = 5)", [(0, k) for k in range(6)], [h.weight for h in hits]),
        ("search hit polynomials", [[f"x^{k}" if k > 1 else ("x" if k else "1")] for k in range(6)],
         [h.render(g.chart.table) for h in hits]),
    ]


def check_sl2_cp2(ctx: Context) -> List[Comparison]:
    m = ctx.model("sl2_cp2")
    res, _, _ = m.compatibility()
    glued = {}
    for b in range(-2, 3):
        task = {"functions": {"U1": "z3^(-b)", "U2": "y3^(-b)", "U3": "1"}, "parameters": {"b": b}}
        sc.task_glue(m, task)
        glued[b] = True
    return [
        ("dims (U3, U2, U1)", (0, 2, 2), tuple(m.space(c).dim for c in ("U3", "U2", "U1"))),
        ("relations", ["B2 = 0", "C1 = B1", "C2 = 0"], sorted(res.relations())),
        ("free parameters", ["B1"], res.coordinates),
        ("integrality", ["B1"], res.integrality_text()),
        ("divisor {z3^(-b), y3^(-b), 1} glues", {b: True for b in range(-2, 3)}, glued),
    ]


def check_heisenberg(ctx: Context) -> List[Comparison]:
    m = ctx.model("heisenberg")
    res, _, _ = m.compatibility()
    g1 = m.algebra("U1", 1)
    g2 = m.algebra("U1", 2)
    h1 = invariant_search(g1, m.basis_at("U1", 1), GridSpec(), 1, order=1, primitive_only=True)
    h2 = invariant_search(g2, m.basis_at("U1", 2), GridSpec(), 3, order=2, primitive_only=True)
    w1 = _weight_coords(m, "U1", 1, "y1")
    w2 = _weight_coords(m, "U1", 2, "y2")
    wl = weight_lattice_and_kernels([w1, w2])
    kern = [list(v) for v in wl.kernel.basis]
    inv = [render_monomial(["y1", "y2"], normalize_relation(v)) for v in kern]
    return [
        ("dims (U1, U2)", (2, 0), (m.space("U1").dim, m.space("U2").dim)),
        ("transition", {"U1/U2": "(y1)^(-B)"}, res.exponent_text()),
        ("integrality", ["B"], res.integrality_text()),
        ("J1 hits", [((0, -1), ["y1"])], _hits(h1, g1.chart.table)),
        ("J2 hits", [((0, -3), ["y1^3", "y2"]), ((0, -1), ["y1"])], _hits(h2, g2.chart.table)),
        ("kernel invariant", ["y2/y1^3"], inv),
    ]


U3Y_PRINTED = ["0", "0", "A2*y1", "0", "A2", "A1", "(3*A1 + A2)/2*x", "A2*x*y1 + (3*A1 - A2)/2*y"]
U3X_PRINTED = ["0", "0", "0", "At2*x1", "-At2", "At1", "At2*y*x1 + (3*At1 - At2)/2*x", "(3*At1 + At2)/2*y"]


def check_sl3_j1(ctx: Context) -> List[Comparison]:
    m = ctx.model("sl3_j1")
    res, _, _ = m.compatibility()
    rel = dict(r.split(" = ") for r in res.relations())
    return [
        ("dims on U3y, U3x", (2, 2), (m.space("U3y").dim, m.space("U3x").dim)),
        ("representative on U3y", True, _cocycle_matches(m, "U3y", U3Y_PRINTED)),
        ("representative on U3x", True, _cocycle_matches(m, "U3x", U3X_PRINTED)),
        ("U2y parameters", ("-1/2*A1 + 1/2*A2", "3/2*A1 + 1/2*A2"), (rel.get("B1"), rel.get("B2"))),
        ("integrality lattice {A2, (3A1+A2)/2}", True,
         _same_integrality(res.integrality, [[0, 1], [Fraction(3, 2), Fraction(1, 2)]], 2)),
        ("Pic", "C^0 x Z^2 (ansatz-relative)", pic_assemble(res).render()),
    ]


def check_curves(ctx: Context) -> List[Comparison]:
    m = ctx.model("sl3_curves")
    r2 = _weight_coords(m, "U3y", 2, ctx.expr["R2"])
    r5 = _weight_coords(m, "U3y", 5, ctx.expr["R5"])
    wl = weight_lattice_and_kernels([r2, r5])
    g6 = m.algebra("U3y", 6)
    avoid = [g6.chart.parse(ctx.expr["R2"]), g6.chart.parse(ctx.expr["R5"])]
    return [
        ("R2 weight", [-1, -3], r2),
        ("R5 weight", [-6, -12], r5),
        ("lattice equals <(3,-3),(2,0)>", True, wl.same_as([[3, -3], [2, 0]])),
        ("orbit rank of the order-6 prolongation", 8, generic_orbit_rank(g6.generators, seed=ctx.seed, avoid=avoid)),
    ]


def check_curves_heavy(ctx: Context) -> List[Comparison]:
    m = ctx.model("sl3_curves")
    r5 = _weight_coords(m, "U3y", 7, ctx.expr["R5"])
    r7 = _weight_coords(m, "U3y", 7, ctx.expr["R7"])
    wl = weight_lattice_and_kernels([r5, r7])
    inv = [render_monomial(["R5", "R7"], normalize_relation(list(v))) for v in wl.kernel.basis]
    return [("R7 weight", [-16, -32], r7), ("kernel of {R5, R7}", ["R7^3/R5^8"], inv)]


def check_ode_heavy(ctx: Context) -> List[Comparison]:
    m = ctx.model("ode")
    g = m.algebra("ode", 4)
    f1 = _weight_coords(m, "ode", 4, ctx.expr["f1"])
    f2 = _weight_coords(m, "ode", 4, ctx.expr["f2"])
    tab = g.chart.table
    variables = [i for i, n in enumerate(tab.names) if n not in ("x", "y")]
    hits = invariant_search(g, m.basis_at("ode", 4), GridSpec((1, 2, 3, 6), 3), 3, variables=variables,
                            order=4, primitive_only=True)
    p1, p2 = g.chart.parse(ctx.expr["f1"]).num, g.chart.parse(ctx.expr["f2"]).num
    found = {}
    for h in hits:
        for name, p in (("f1", p1), ("f2", p2)):
            if len(h.polys) == 1 and _proportional(h.polys[0], p):
                found[name] = tuple(q(x) for x in h.weight)
    return [
        ("generator count", 30, g.dim),
        ("f1 weight", [2, Fraction(-5, 2)], f1),
        ("f2 weight", [-2, Fraction(1, 2)], f2),
        ("search recovers f1 and f2", {"f1": (2, Fraction(-5, 2)), "f2": (-2, Fraction(1, 2))}, found),
    ]


def _proportional(a: Poly, b: Poly) -> bool:
    if a.is_zero() or b.is_zero():
        return False
    m = next(iter(b.terms))
    if m not in a.terms:
        return False
    c = Fraction(a.terms[m]) / Fraction(b.terms[m])
    return (a - b * c).is_zero()


# ---------------------------------------------------------------- criterion 9: seeded property checks

def random_poly(rng: random.Random, nvars: int, degree: int, terms: int = 4, coeff: int = 5) -> Poly:
    out = {}
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(nvars)] += 1
        m = tuple((v, e) for v, e in enumerate(exps) if e)
        out[m] = out.get(m, 0) + rng.randint(-coeff, coeff)
    return Poly(out)


def random_field(rng: random.Random, chart: Chart, degree: int = 2) -> VectorField:
    return VectorField(chart, [RatFunc(random_poly(rng, chart.dim, degree, 3)) for _ in range(chart.dim)])


def prop_ring_axioms(rng: random.Random, cases: int = 1000) -> List[Comparison]:
    bad = 0
    for _ in range(cases):
        a, b, c = (random_poly(rng, 3, 3) for _ in range(3))
        ok = (a + b == b + a and a * b == b * a and (a * b) * c == a * (b * c)
              and a * (b + c) == a * b + a * c and (a - a).is_zero())
        fa, fb = RatFunc(a), RatFunc(b + Poly.const(7))
        if not (b + Poly.const(7)).is_zero():
            ok = ok and (fa / fb) * fb == fa
        bad += not ok
    return [("ring axiom failures", 0, bad)]


def prop_jacobi(rng: random.Random, cases: int = 100) -> List[Comparison]:
    chart = Chart("P", VariableTable.of("x", "y", "z"))
    bad = 0
    for _ in range(cases):
        X, Y, Z = (random_field(rng, chart) for _ in range(3))
        s = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
        bad += not s.is_zero()
    return [("Jacobi failures", 0, bad)]


def prop_prolongation(rng: random.Random, pairs: int = 200) -> List[Comparison]:
    base = Chart("P", VariableTable.of("x", "y"))
    specs = {k: JetSpec(base, ("x",), ("y",), k) for k in range(4)}
    bad = 0
    for n in range(pairs):
        k = n % 4
        spec = specs[k]
        X, Y = random_field(rng, base, 2), random_field(rng, base, 2)
        lhs = prolong(lie_bracket(X, Y), k, spec)
        rhs = lie_bracket(prolong(X, k, spec), prolong(Y, k, spec))
        bad += not lhs == rhs
    return [("prolongation homomorphism failures", 0, bad)]


def prop_divergence(rng: random.Random, cases: int = 100) -> List[Comparison]:
    chart = Chart("P", VariableTable.of("x", "y", "z"))
    omega = VolumeForm.standard(chart)
    bad_cocycle = bad_cob = 0
    for _ in range(cases):
        X, Y = random_field(rng, chart), random_field(rng, chart)
        lhs = divergence(lie_bracket(X, Y), omega)
        rhs = X.apply(divergence(Y, omega)) - Y.apply(divergence(X, omega))
        bad_cocycle += not lhs == rhs
        rho = RatFunc(random_poly(rng, 3, 2) + Poly.const(11))
        if rho.is_zero():
            continue
        scaled = VolumeForm.standard(chart, density=rho)
        bad_cob += not divergence(X, scaled) == divergence(X, omega) + X.apply(rho) / rho
    return [("divergence cocycle failures", 0, bad_cocycle), ("volume rescaling failures", 0, bad_cob)]


def prop_d1_d0(ctx: Context, rng: random.Random, cases: int = 200) -> List[Comparison]:
    g = ctx.model("sl3_j1").algebra("U3y")
    bad = 0
    for _ in range(cases):
        mu = RatFunc(random_poly(rng, g.chart.dim, 3))
        bad += bool(cocycle_check(g, coboundary(g, mu)))
    return [("d1 of d0 failures", 0, bad)]


def prop_hits_and_weights(ctx: Context, rng: random.Random) -> List[Comparison]:
    m = ctx.model("heisenberg")
    g = m.algebra("U1", 2)
    basis = m.basis_at("U1", 2)
    hits = invariant_search(g, basis, GridSpec((1,), 4), 3, order=2)
    reverified = all(verify_hit(g, basis, h) for h in hits)
    # weight multiplicativity on products of relative invariants
    curves = ctx.model("sl3_curves")
    g5 = curves.algebra("U3y", 5)
    R2, R5 = g5.chart.parse(ctx.expr["R2"]), g5.chart.parse(ctx.expr["R5"])
    w2, w5 = divisor_weight(g5, R2), divisor_weight(g5, R5)
    bad_mult = 0
    for _ in range(10):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if a == b == 0:
            continue
        w = divisor_weight(g5, R2 ** a * R5 ** b)
        expect = [x * a + y * b for x, y in zip(w2.values, w5.values)]
        bad_mult += not all(u == v for u, v in zip(w.values, expect))
    # weighted-degree postcondition on every computed jet weight
    bad_order = 0
    for model, chart, order, text in (("heisenberg", "U1", 2, "y2"), ("heisenberg", "U1", 1, "y1"),
                                      ("sl3_curves", "U3y", 2, ctx.expr["R2"]),
                                      ("sl3_curves", "U3y", 5, ctx.expr["R5"])):
        mm = ctx.model(model)
        gg = mm.algebra(chart, order)
        try:
            check_weight_order(divisor_weight(gg, gg.chart.parse(text)), mm.spec(chart, order))
        except AssertionError:
            bad_order += 1
    return [("hits re-verified", True, reverified and bool(hits)), ("multiplicativity failures", 0, bad_mult),
            ("weight-order violations", 0, bad_order)]


def check_properties(ctx: Context) -> List[Comparison]:
    rng = random.Random(ctx.seed)
    out: List[Comparison] = []
    out += prop_ring_axioms(rng)
    out += prop_jacobi(rng)
    out += prop_prolongation(rng)
    out += prop_divergence(rng)
    out += prop_d1_d0(ctx, rng)
    out += prop_hits_and_weights(ctx, rng)
    return out


CHECKS: List[Check] = [
    Check(1, "sl(2) on the projective line", False, 5, check_sl2),
    Check(2, "aff(1) on the projective line", False, 5, check_aff1),
    Check(3, "x^2 d/dx on the line", False, 5, check_x2dx),
    Check(4, "sl(2) on the projective plane", False, 10, check_sl2_cp2),
    Check(5, "Heisenberg algebra", False, 10, check_heisenberg),
    Check(6, "sl(3) on first jets, six charts", False, 60, check_sl3_j1),
    Check(7, "projective curves: R2, R5, orbit rank", False, 120, check_curves),
    Check(7, "projective curves: R7 and I7", True, 1800, check_curves_heavy),
    Check(8, "second-order ODEs: f1, f2 and search", True, 900, check_ode_heavy),
    Check(9, "seeded property checks", False, 120, check_properties),
]


def _render(x):
    if isinstance(x, Fraction):
        return sc.num(x)
    if isinstance(x, (list, tuple)):
        return [_render(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _render(v) for k, v in x.items()}
    return x


def select(selector: str = "all", criteria: Optional[Iterable[int]] = None) -> List[Check]:
    """``fast`` drops the heavy tier; ``heavy`` and ``all`` run everything."""
    if selector not in ("all", "fast", "heavy"):
        raise ValueError("selector must be all, fast or heavy")
    chosen = [c for c in CHECKS if selector != "fast" or not c.heavy]
    if criteria is not None:
        wanted = set(criteria)
        chosen = [c for c in chosen if c.criterion in wanted]
    return chosen


def run_check(check: Check, ctx: Context) -> dict:
    start = time.perf_counter()
    entry = {"criterion": check.criterion, "name": check.name, "heavy": check.heavy,
             "target_seconds": check.target_seconds}
    try:
        comps = check.run(ctx)
        failed = [c for c in comps if c[1] != c[2]]
        entry["status"] = "pass" if not failed else "fail"
        entry["comparisons"] = len(comps)
        if failed:
            entry["failures"] = [{"check": lbl, "expected": _render(e), "computed": _render(c)}
                                 for lbl, e, c in failed]
    except Exception as e:  # a crash inside a check is a failure of that check
        entry["status"] = "fail"
        entry["failures"] = [{"check": check.name, "error": f"{type(e).__name__}: {e}"}]
    entry["seconds"] = round(time.perf_counter() - start, 3)
    return entry


def run_suite(selector: str = "all", overrides: Optional[Mapping[str, str]] = None, seed: int = 0,
              criteria: Optional[Iterable[int]] = None) -> dict:
    exprs = dict(EXPRESSIONS)
    for k, v in (overrides or {}).items():
        if k not in exprs:
            raise ValueError(f"unknown expression {k!r}; known: {', '.join(exprs)}")
        exprs[k] = v
    ctx = Context(exprs, seed)
    results = [run_check(c, ctx) for c in select(selector, criteria)]
    status = "pass" if all(r["status"] == "pass" for r in results) else "fail"
    return {"selector": selector, "seed": seed, "overrides": sorted(overrides or {}), "checks": results,
            "status": status}
