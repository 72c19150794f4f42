"""Invariant divisors: weights, gluing, grid search, weight lattices, transversality."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    IntLattice, NotDivisible, Poly, RatFunc, SparseEchelon, as_ratfunc, hnf_lattice, kernel_of, mono_key,
    monomials_up_to, poly_exact_divide, q, sparse_nullspace,
)
from .algebra.identities import _common_denominator, identity_rows
from .cohomology import WeightCocycle
from .expressions import VariableTable, render_poly
from .geometry import (
    Atlas, Chart, LieAlgebra, PointNotInDomain, VectorField, derive_units,
    field_matrix_rank, sample_point,
)
from .jets import JetSpec, weighted_degree

_ZERO = RatFunc(Poly())


class NotInvariant(ArithmeticError):
    def __init__(self, index: int, residual: RatFunc):
        self.index = index
        self.residual = residual
        super().__init__(f"X{index + 1}(f) is not a multiple of f by a chart function")


class NotGlued(ArithmeticError):
    def __init__(self, a: str, b: str, residual: RatFunc):
        self.charts = (a, b)
        self.residual = residual
        super().__init__(f"f_{a}/f_{b} is not a constant times a product of units")


class WeightOrderViolation(AssertionError):
    pass


# ---------------------------------------------------------------- weights of divisors

def _field_denominator(X: VectorField) -> Poly:
    return _common_denominator([c.den for c in X.coeffs if not c.is_zero()])


def _log_derivative(X: VectorField, p: Poly, L: Poly) -> Optional[RatFunc]:
    """X(p)/p when it is a chart function (poles only where X has them), else None."""
    if p.is_constant():
        return _ZERO
    if X.is_polynomial():
        top = X.apply_poly(p)
    else:
        top = (X.apply(RatFunc(p)) * RatFunc(L)).as_poly()
    try:
        quo = poly_exact_divide(top, p)
    except NotDivisible:
        return None
    return RatFunc(quo, L) if not L.is_constant() else RatFunc(quo) * RatFunc.const(Fraction(1) / L.constant_value())


def divisor_weight(g: LieAlgebra, f, spec: Optional[JetSpec] = None) -> WeightCocycle:
    """λ(X) = X(f)/f for every generator, via exact division of numerator and denominator.

    With ``spec`` given (a jet spec matching the algebra's chart), the result
    must depend only on order <= 1 jets with weighted degree <= 1, or on
    order 0 alone for fibered specs.
    """
    f = as_ratfunc(f)
    if f.is_zero():
        raise ValueError("the zero function defines no divisor")
    dim = g.chart.dim
    if any(v >= dim for v in f.variables()):
        raise ValueError("function involves coordinates beyond the algebra's chart")
    vals = []
    for i, X in enumerate(g.generators):
        L = _field_denominator(X)
        a = _log_derivative(X, f.num, L)
        b = _log_derivative(X, f.den, L)
        if a is None or b is None:
            raise NotInvariant(i, X.apply(f) / f)
        vals.append(a - b)
    lam = WeightCocycle.fixed(g.chart, vals)
    if spec is not None:
        check_weight_order(lam, spec)
    return lam


def weight_order(lam: WeightCocycle, spec: JetSpec) -> Tuple[int, int]:
    """(max jet order, max weighted degree over order >= 1 jets) of the weight's numerators."""
    order = wdeg = 0
    for v in lam.values:
        for p in (v.num, v.den):
            info = weighted_degree(p, spec, threshold=1)
            order = max(order, info.order)
            wdeg = max(wdeg, info.weighted_degree)
    return order, wdeg


def check_weight_order(lam: WeightCocycle, spec: JetSpec) -> None:
    order, wdeg = weight_order(lam, spec)
    limit = 0 if spec.fibered else 1
    if order > limit or wdeg > limit:
        raise WeightOrderViolation(f"weight has jet order {order} and weighted degree {wdeg}; "
                                   f"expected at most {limit}")


def is_absolute_invariant(g: LieAlgebra, f) -> bool:
    f = as_ratfunc(f)
    for X in g.generators:
        if not (X.apply(RatFunc(f.num)) * RatFunc(f.den) - RatFunc(f.num) * X.apply(RatFunc(f.den))).is_zero():
            return False
    return True


def monomial_invariant_check(weights: Sequence[WeightCocycle], exponents: Sequence[int]) -> bool:
    """Π f_i^{e_i} is absolutely invariant iff Σ e_i λ_i vanishes on every generator."""
    r = weights[0].ngens
    for k in range(r):
        tot = _ZERO
        for lam, e in zip(weights, exponents):
            if e:
                tot = tot + lam.values[k] * e
        if not tot.is_zero():
            return False
    return True


# ---------------------------------------------------------------- gluing

@dataclass
class DivisorData:
    functions: Dict[str, RatFunc]
    weights: Dict[str, WeightCocycle] = field(default_factory=dict)


def _unit_exponents(ratio: RatFunc, units: Sequence[RatFunc], chart: Chart) -> Optional[List[Fraction]]:
    """Solve ratio = c * Π units^e via logarithmic derivatives; None if impossible."""
    variables = [v for v in range(chart.dim)]
    cols = []
    for u in units:
        cols.append([u.diff(v) / u for v in variables])
    cols.append([-(ratio.diff(v) / ratio) for v in variables])
    null = sparse_nullspace(identity_rows(cols), len(cols))
    sol = next((s for s in null if s[-1] != 0), None)
    if sol is None:
        return None
    return [q(Fraction(x) / sol[-1]) for x in sol[:-1]]


def glue_divisor_check(atlas: Atlas, D: DivisorData) -> Dict[Tuple[str, str], List[Tuple[RatFunc, int]]]:
    """Exponents e with f_α / f_β = c · Π u^e on each declared overlap (units in α coordinates)."""
    out = {}
    for ov in atlas.overlaps:
        a, b = ov
        t = atlas.transition(a, b)
        units = list(t.units) or derive_units(t)
        pulled_units = [t.pull(u) for u in units]
        ratio = t.pull(D.functions[a]) / D.functions[b]
        exps = _unit_exponents(ratio, pulled_units, t.target)
        if exps is None or any(isinstance(e, Fraction) and e.denominator != 1 for e in exps):
            raise NotGlued(a, b, ratio)
        rest = ratio
        for u, e in zip(pulled_units, exps):
            if e:
                rest = rest / (u ** int(e))
        if not rest.is_constant() or rest.is_zero():
            raise NotGlued(a, b, rest)
        out[ov] = [(u, int(e)) for u, e in zip(units, exps)]
    return out


# ---------------------------------------------------------------- grid search

@dataclass(frozen=True)
class GridSpec:
    denominators: Tuple[int, ...] = (1, 2, 3, 6)
    bound: int = 6

    def __post_init__(self):
        if not self.denominators or any(d <= 0 for d in self.denominators) or self.bound < 0:
            raise ValueError("grid needs positive denominators and a non-negative bound")

    def values(self) -> List[Fraction]:
        vals = set()
        for d in self.denominators:
            for p in range(-self.bound * d, self.bound * d + 1):
                vals.add(q(Fraction(p, d)))
        return sorted(vals)

    def points(self, dim: int) -> List[Tuple]:
        vals = self.values()
        pts: List[Tuple] = [()]
        for _ in range(dim):
            pts = [p + (v,) for p in pts for v in vals]
        return pts


@dataclass
class InvariantHit:
    weight: Tuple
    polys: List[Poly]
    order: Optional[int]
    degree: int

    def render(self, table: VariableTable) -> List[str]:
        return [render_poly(p, table) for p in self.polys]


def canonical_span(polys: Sequence[Poly]) -> List[Poly]:
    """Echelon basis (graded lex, highest monomials first), each content-free with positive lead."""
    monos = sorted({m for p in polys for m in p.terms}, key=mono_key, reverse=True)
    col = {m: i for i, m in enumerate(monos)}
    ech = SparseEchelon(len(monos))
    for p in polys:
        ech.add({col[m]: c for m, c in p.terms.items()})
    red = ech.reduced()
    return [Poly({monos[k]: v for k, v in red[c].items()}).primitive() for c in sorted(red)]


class _SearchSystem:
    """Precomputed pieces of X_i(f) − Σ c_k λ_k(X_i) f = 0 over a monomial ansatz."""

    def __init__(self, g: LieAlgebra, basis: Sequence[WeightCocycle], monomials: Sequence):
        self.monos = list(monomials)
        self.nb = len(basis)
        gens = g.generators
        self.diag: List[Tuple[List, List]] = []   # (weights per monomial, constant λ_k values)
        self.fixed_rows: List[Dict[int, object]] = []
        self.general: List[Tuple[Poly, List[Poly]]] = []  # per generator: (L, [L*λ_k])
        self.gen_fields: List[VectorField] = []
        for i, X in enumerate(gens):
            lam_vals = [b.values[i] for b in basis]
            diag_w = _diagonal_weights(X)
            if diag_w is not None and all(v.is_constant() for v in lam_vals):
                ws = [sum((diag_w.get(v, 0) * e for v, e in m), Fraction(0)) for m in self.monos]
                self.diag.append(([q(w) for w in ws], [v.constant_value() for v in lam_vals]))
                continue
            L = _common_denominator([c.den for c in X.coeffs if not c.is_zero()] +
                                    [v.den for v in lam_vals if not v.is_zero()])
            Ls = [(v * RatFunc(L)).as_poly() for v in lam_vals]
            if all(p.is_zero() for p in Ls):
                # weight-independent constraint: impose once
                for row in self._rows_for(X, L):
                    self.fixed_rows.append(row)
                continue
            self.general.append((L, Ls))
            self.gen_fields.append(X)
        self._cache: Dict[Tuple[int, int], Tuple[Poly, List[Poly]]] = {}
        # reduce the ansatz by the weight-independent constraints
        ech = SparseEchelon(len(self.monos))
        for r in self.fixed_rows:
            ech.add(r)
        self.fixed_null = ech.nullspace() if ech.rank else None

    def _applied(self, gi: int, mi: int):
        key = (gi, mi)
        hit = self._cache.get(key)
        if hit is None:
            X = self.gen_fields[gi]
            L, Ls = self.general[gi]
            m = Poly.monomial(self.monos[mi])
            if X.is_polynomial():
                top = X.apply_poly(m) * L
            else:
                top = (X.apply(RatFunc(m)) * RatFunc(L)).as_poly()
            hit = (top, [lk * m for lk in Ls])
            self._cache[key] = hit
        return hit

    def _rows_for(self, X, L):
        rows: Dict = {}
        for mi in range(len(self.monos)):
            m = Poly.monomial(self.monos[mi])
            top = X.apply_poly(m) * L if X.is_polynomial() else (X.apply(RatFunc(m)) * RatFunc(L)).as_poly()
            for mono, c in top.terms.items():
                rows.setdefault(mono, {})[mi] = c
        return list(rows.values())

    def solve(self, c: Sequence) -> List[Poly]:
        cols = list(range(len(self.monos)))
        for ws, lam in self.diag:
            target = q(sum((ck * lk for ck, lk in zip(c, lam)), Fraction(0)))
            cols = [k for k in cols if ws[k] == target]
            if not cols:
                return []
        if self.fixed_null is not None:
            # restrict to the subspace cut out by the weight-independent equations
            colset = set(cols)
            space = [v for v in self.fixed_null if all((x == 0) or (k in colset) for k, x in enumerate(v))]
            if not space:
                return []
            basis_vecs = [{k: x for k, x in enumerate(v) if x != 0} for v in space]
        else:
            basis_vecs = [{k: 1} for k in cols]
        n = len(basis_vecs)
        ech = SparseEchelon(n)
        for gi in range(len(self.general)):
            rows: Dict = {}
            for j, vec in enumerate(basis_vecs):
                for mi, coef in vec.items():
                    top, lk = self._applied(gi, mi)
                    for mono, val in top.terms.items():
                        r = rows.setdefault(mono, {})
                        r[j] = r.get(j, 0) + coef * val
                    for ck, p in zip(c, lk):
                        if not ck:
                            continue
                        for mono, val in p.terms.items():
                            r = rows.setdefault(mono, {})
                            r[j] = r.get(j, 0) - coef * ck * val
            for r in rows.values():
                ech.add(r)
            if ech.rank == n:
                return []
        out = []
        for v in ech.nullspace():
            terms: Dict = {}
            for j, x in enumerate(v):
                if x:
                    for mi, coef in basis_vecs[j].items():
                        m = self.monos[mi]
                        terms[m] = terms.get(m, 0) + x * coef
            p = Poly(terms)
            if not p.is_zero():
                out.append(p)
        return canonical_span(out) if out else []


def _diagonal_weights(X: VectorField) -> Optional[Dict[int, object]]:
    """If X = Σ w_v x_v ∂_v with constant w_v, return {v: w_v}."""
    w = {}
    for v, c in enumerate(X.coeffs):
        if c.is_zero():
            continue
        if not c.is_poly() or len(c.num.terms) != 1:
            return None
        (m, coef), = c.num.terms.items()
        if m != ((v, 1),):
            return None
        w[v] = coef
    return w


_WORKER: Optional[_SearchSystem] = None


def _init_worker(system):
    global _WORKER
    _WORKER = system


def _solve_point(c):
    return c, _WORKER.solve(c)


def invariant_search(g: LieAlgebra, basis: Sequence[WeightCocycle], grid: GridSpec, degree: int,
                     variables: Optional[Sequence[int]] = None, order: Optional[int] = None,
                     primitive_only: bool = False, jobs: int = 1, points: Optional[Sequence[Tuple]] = None
                     ) -> List[InvariantHit]:
    """Polynomials f with X(f) = λ(X) f, λ = Σ c_k basis_k, for every grid weight c.

    The ansatz is all monomials of total degree <= ``degree`` in ``variables``
    (default: every chart variable).  Results are sorted by weight.
    """
    chart = g.chart
    if variables is None:
        variables = list(range(chart.dim))
    monos = monomials_up_to(list(variables), degree)
    system = _SearchSystem(g, basis, monos)
    pts = list(points) if points is not None else grid.points(len(basis))
    results: List[Tuple[Tuple, List[Poly]]] = []
    if jobs > 1 and len(pts) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(system,)) as ex:
            for c, polys in ex.map(_solve_point, pts, chunksize=max(1, len(pts) // (8 * jobs))):
                if polys:
                    results.append((c, polys))
    else:
        for c in pts:
            polys = system.solve(c)
            if polys:
                results.append((tuple(c), polys))
    results.sort(key=lambda t: tuple(t[0]))
    hits = [InvariantHit(tuple(c), polys, order, degree) for c, polys in results]
    if primitive_only:
        hits = _primitive_hits(hits, degree)
    return hits


def _primitive_hits(hits: List[InvariantHit], degree: int) -> List[InvariantHit]:
    """Drop hits spanned by products of hits at other weights; weight-zero constants are skipped."""
    def is_const_only(h):
        return all(p.is_constant() for p in h.polys)

    factors = [(h.weight, p) for h in hits if not is_const_only(h) for p in h.polys if p.degree() >= 1]
    # products of two or more factors within the degree bound
    products: Dict[Tuple, List[Poly]] = {}
    level = [(w, p) for w, p in factors]
    for _ in range(degree - 1):
        nxt = []
        for w1, p1 in level:
            for w2, p2 in factors:
                if p1.degree() + p2.degree() > degree:
                    continue
                w = tuple(q(a + b) for a, b in zip(w1, w2))
                prod = p1 * p2
                products.setdefault(w, []).append(prod)
                nxt.append((w, prod))
        level = nxt
        if not level:
            break
    out = []
    for h in hits:
        if is_const_only(h):
            continue
        prods = products.get(h.weight, [])
        if prods and _span_contains(prods, h.polys):
            continue
        out.append(h)
    return out


def _span_contains(gens: Sequence[Poly], targets: Sequence[Poly]) -> bool:
    monos = sorted({m for p in list(gens) + list(targets) for m in p.terms}, key=mono_key, reverse=True)
    col = {m: i for i, m in enumerate(monos)}
    ech = SparseEchelon(len(monos))
    for p in gens:
        ech.add({col[m]: c for m, c in p.terms.items()})
    for p in targets:
        if ech.add({col[m]: c for m, c in p.terms.items()}):
            return False
    return True


def verify_hit(g: LieAlgebra, basis: Sequence[WeightCocycle], hit: InvariantHit) -> bool:
    """Independent re-check: X_i(f) = λ(X_i) f with λ rebuilt from the weight."""
    for i, X in enumerate(g.generators):
        lam = _ZERO
        for ck, b in zip(hit.weight, basis):
            if ck:
                lam = lam + b.values[i] * ck
        for p in hit.polys:
            f = RatFunc(p)
            if not (X.apply(f) - lam * f).is_zero():
                return False
    return True


# ---------------------------------------------------------------- lattices

@dataclass
class WeightLattice:
    lattice: IntLattice          # spanned by scale * weights
    scale: int
    kernel: IntLattice           # integer relations among the weights

    def contains(self, weight: Sequence) -> bool:
        v = [q(Fraction(x) * self.scale) for x in weight]
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in v):
            return False
        return self.lattice.contains([int(x) for x in v])

    def same_as(self, generators: Sequence[Sequence]) -> bool:
        other = [[Fraction(x) * self.scale for x in w] for w in generators]
        if any(x.denominator != 1 for w in other for x in w):
            return False
        return self.lattice.same_as(hnf_lattice([[int(x) for x in w] for w in other], self.lattice.dim))


def weight_lattice_and_kernels(weights: Sequence[Sequence]) -> WeightLattice:
    if not weights:
        raise ValueError("no weights given")
    D = 1
    for w in weights:
        for x in w:
            d = Fraction(x).denominator
            D = D * d // _gcd(D, d)
    ints = [[int(Fraction(x) * D) for x in w] for w in weights]
    return WeightLattice(hnf_lattice(ints, len(ints[0])), D, kernel_of(ints))


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def normalize_relation(vec: Sequence[int]) -> List[int]:
    """Sign convention: the last nonzero exponent is positive."""
    last = next((x for x in reversed(vec) if x), 0)
    return [-x for x in vec] if last < 0 else list(vec)


def render_monomial(names: Sequence[str], exps: Sequence[int]) -> str:
    def part(n, e):
        return n if e == 1 else f"{n}^{e}"
    num = [part(n, e) for n, e in zip(names, exps) if e > 0]
    den = [part(n, -e) for n, e in zip(names, exps) if e < 0]
    top = "*".join(num) or "1"
    if not den:
        return top
    bottom = "*".join(den)
    return f"{top}/({bottom})" if len(den) > 1 else f"{top}/{bottom}"


# ---------------------------------------------------------------- orbits and transversality

def orbit_rank(fields: Sequence[VectorField], point: Mapping[int, object]) -> int:
    for X in fields:
        for c in X.coeffs:
            if not c.is_poly() and c.den.evaluate(point) == 0:
                raise PointNotInDomain("a field coefficient has a pole at the point")
    return field_matrix_rank(fields, point)


def generic_orbit_rank(fields: Sequence[VectorField], seed: int = 0, samples: int = 3,
                       avoid: Sequence = ()) -> int:
    """Max rank over seeded random rational points (genericity by resampling)."""
    rng = random.Random(seed)
    chart = fields[0].chart
    dens = [c for X in fields for c in X.coeffs if not c.is_poly()]
    best = 0
    for _ in range(samples):
        pt = sample_point(chart.dim, rng, list(avoid) + [RatFunc(c.den) for c in dens])
        best = max(best, orbit_rank(fields, pt))
    return best


def lift_fields(g: LieAlgebra, lam: WeightCocycle, fiber: str = "w") -> List[VectorField]:
    """X + λ(X)·w∂_w on the chart extended by a fiber coordinate."""
    tab = g.chart.table
    name = fiber
    while name in tab:
        name += "_"
    ext = Chart(g.chart.name + "^lift", VariableTable(tab.names + (name,), tab.roles + ("fiber",),
                                                       tab.orders + (0,)))
    w = RatFunc.var(len(tab))
    return [VectorField(ext, list(X.coeffs) + [lam.values[i] * w]) for i, X in enumerate(g.generators)]


def transversality_check(g: LieAlgebra, lam: WeightCocycle, seed: int = 0, samples: int = 3) -> bool:
    """Generic orbits of the lift have the same dimension as those of g (necessary condition only)."""
    lifted = lift_fields(g, lam)
    rng = random.Random(seed)
    n = g.chart.dim
    dens = [RatFunc(c.den) for X in lifted for c in X.coeffs if not c.is_poly()]
    base_best = lift_best = 0
    for _ in range(samples):
        pt = sample_point(n + 1, rng, dens + [RatFunc.var(n)])
        base_best = max(base_best, orbit_rank(g.generators, {i: pt[i] for i in range(n)}))
        lift_best = max(lift_best, orbit_rank(lifted, pt))
    return lift_best == base_best


__all__ = [
    "NotInvariant", "NotGlued", "WeightOrderViolation", "DivisorData", "GridSpec", "InvariantHit",
    "WeightLattice", "divisor_weight", "weight_order", "check_weight_order", "is_absolute_invariant",
    "monomial_invariant_check", "glue_divisor_check", "invariant_search", "verify_hit", "canonical_span",
    "weight_lattice_and_kernels", "normalize_relation", "render_monomial", "orbit_rank", "generic_orbit_rank",
    "lift_fields", "transversality_check",
]
