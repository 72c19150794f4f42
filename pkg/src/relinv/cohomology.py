"""Weight cocycles, their spaces modulo coboundaries, and gluing across charts.

Cocycles are computed inside a polynomial ansatz of degree d on each chart;
every dimension reported here is relative to that ansatz.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    Poly, RatFunc, as_ratfunc, hnf_lattice, monomials_up_to, q, sparse_nullspace, substitute,
)
from .algebra.identities import identity_rows
from .algebra.linalg import rref_rows
from .algebra.poly import mono_key
from .expressions import VariableTable, parse_expression, render, render_poly
from .geometry import Atlas, Chart, LieAlgebra, derive_units

_ZERO = RatFunc(Poly())


class NoSolution(ArithmeticError):
    """An inhomogeneous compatibility system is inconsistent."""

    def __init__(self, message: str, equations: Sequence[str] = ()):
        self.equations = list(equations)
        super().__init__(message)


class NotInSpan(ArithmeticError):
    pass


# ---------------------------------------------------------------- cocycles

@dataclass
class WeightCocycle:
    """λ(X_i) for each generator, affine-linear in named scalar parameters.

    ``parts[0]`` is the parameter-free part and ``parts[1 + k]`` the
    coefficient of ``params[k]``.
    """

    chart: Chart
    params: Tuple[str, ...]
    parts: Tuple[Tuple[RatFunc, ...], ...]

    @classmethod
    def fixed(cls, chart: Chart, values: Sequence) -> "WeightCocycle":
        return cls(chart, (), (tuple(as_ratfunc(v) for v in values),))

    @classmethod
    def combination(cls, chart: Chart, basis: Sequence["WeightCocycle"], names: Sequence[str]) -> "WeightCocycle":
        r = len(basis[0].values) if basis else 0
        zero = tuple(_ZERO for _ in range(r))
        return cls(chart, tuple(names), (zero,) + tuple(b.values for b in basis))

    @classmethod
    def parse(cls, chart: Chart, texts: Sequence[str], params: Sequence[str] = ()) -> "WeightCocycle":
        """Parse values that may be linear in the listed parameters."""
        table = chart.table.with_parameters(params)
        pid = [table.index(p) for p in params]
        exprs = [parse_expression(t, table) for t in texts]
        parts = []
        for k in range(len(params) + 1):
            vals = []
            for e in exprs:
                if k == 0:
                    v = substitute(e, {i: RatFunc.const(0) for i in pid})
                else:
                    v = e.diff(pid[k - 1])
                    v = substitute(v, {i: RatFunc.const(0) for i in pid})
                vals.append(v)
            parts.append(tuple(vals))
        lam = cls(chart, tuple(params), tuple(parts))
        # linearity check: rebuild and compare
        for e, i in zip(exprs, range(len(exprs))):
            rebuilt = parts[0][i]
            for k, p in enumerate(pid):
                rebuilt = rebuilt + parts[k + 1][i] * RatFunc.var(p)
            if not rebuilt == e:
                raise ValueError("cocycle values must be affine-linear in the parameters")
        return lam

    @property
    def ngens(self) -> int:
        return len(self.parts[0])

    @property
    def values(self) -> Tuple[RatFunc, ...]:
        if self.params:
            raise ValueError("cocycle still has free parameters; specialize it first")
        return self.parts[0]

    def specialize(self, values: Mapping[str, object]) -> "WeightCocycle":
        out = list(self.parts[0])
        for k, p in enumerate(self.params):
            c = q(values.get(p, 0))
            if c:
                out = [a + b * c for a, b in zip(out, self.parts[k + 1])]
        return WeightCocycle.fixed(self.chart, out)

    def __add__(self, other: "WeightCocycle") -> "WeightCocycle":
        if self.params or other.params:
            raise ValueError("add specialized cocycles only")
        return WeightCocycle.fixed(self.chart, [a + b for a, b in zip(self.values, other.values)])

    def scale(self, c) -> "WeightCocycle":
        return WeightCocycle(self.chart, self.params, tuple(tuple(v * c for v in part) for part in self.parts))

    def equals(self, other: "WeightCocycle") -> bool:
        if self.params != other.params:
            return False
        return all(a == b for pa, pb in zip(self.parts, other.parts) for a, b in zip(pa, pb))

    def render_values(self, table: Optional[VariableTable] = None) -> List[str]:
        """Text of each value with parameters listed before chart variables."""
        base = table or self.chart.table
        k = len(self.params)
        ptab = VariableTable(tuple(self.params) + base.names, ("parameter",) * k + base.roles,
                             (0,) * k + base.orders)
        shift = {i: i + k for i in range(len(base))}
        out = []
        for i in range(self.ngens):
            expr = self.parts[0][i].rename(shift)
            for j in range(k):
                expr = expr + self.parts[j + 1][i].rename(shift) * RatFunc.var(j)
            out.append(render(expr, ptab))
        return out


def cocycle_check(g: LieAlgebra, lam: WeightCocycle) -> List[Tuple[int, int, RatFunc]]:
    """Violations of X_i λ(X_j) − X_j λ(X_i) − λ([X_i, X_j]) = 0; empty means Ok."""
    g.verified()
    c = g.structure
    bad = []
    for part in lam.parts:
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                res = g.generators[i].apply(part[j]) - g.generators[j].apply(part[i])
                for k, ck in enumerate(c[i][j]):
                    if ck:
                        res = res - part[k] * ck
                if not res.is_zero():
                    bad.append((i, j, res))
    seen = set()
    uniq = []
    for i, j, r in bad:
        if (i, j) not in seen:
            seen.add((i, j))
            uniq.append((i, j, r))
    return uniq


def coboundary(g: LieAlgebra, mu) -> WeightCocycle:
    """d⁰μ = (X_1 μ, …, X_r μ)."""
    mu = as_ratfunc(mu)
    return WeightCocycle.fixed(g.chart, [X.apply(mu) for X in g.generators])


# ---------------------------------------------------------------- cocycle spaces

def default_param_names(chart_index: int, count: int) -> List[str]:
    letters = string.ascii_uppercase
    letter = letters[chart_index % 26] + ("" if chart_index < 26 else str(chart_index // 26))
    if count == 1:
        return [letter]
    return [f"{letter}{k + 1}" for k in range(count)]


@dataclass
class CocycleSpace:
    algebra: LieAlgebra
    degree: int
    basis: List[WeightCocycle]
    names: List[str]
    coboundaries: List[WeightCocycle]
    cocycle_dim: int = 0

    @property
    def chart(self) -> Chart:
        return self.algebra.chart

    @property
    def dim(self) -> int:
        return len(self.basis)

    def general(self) -> WeightCocycle:
        if not self.basis:
            return WeightCocycle.fixed(self.chart, [_ZERO] * self.algebra.dim)
        return WeightCocycle.combination(self.chart, self.basis, self.names)

    def coordinates(self, lam: WeightCocycle, extra_degree: int = 0) -> List:
        """Coordinates of λ in the basis, modulo polynomial coboundaries."""
        return weight_coordinates(self.algebra, self.basis, lam, coboundary_degree=max(
            self.degree + 1, _cocycle_degree(lam) + 1) + extra_degree)

    def describe(self) -> str:
        return f"dim {self.dim} (ansatz-relative, degree <= {self.degree})"


def _cocycle_degree(lam: WeightCocycle) -> int:
    deg = 0
    for part in lam.parts:
        for v in part:
            deg = max(deg, v.num.degree())
    return deg


def _chart_vars(chart: Chart) -> List[int]:
    return [i for i, r in enumerate(chart.table.roles) if r != "parameter"]


def weight_coordinates(g: LieAlgebra, basis: Sequence[WeightCocycle], lam: WeightCocycle,
                       coboundary_degree: Optional[int] = None) -> List:
    """Solve λ = Σ c_k basis_k + dμ with μ polynomial; returns c.

    ``coboundary_degree`` None means no coboundary freedom at all.
    """
    cols = [list(b.values) for b in basis]
    mus = []
    if coboundary_degree:
        mus = monomials_up_to(_chart_vars(g.chart), coboundary_degree, min_degree=1)
        for m in mus:
            cols.append([RatFunc(X.apply_poly(Poly.monomial(m))) if X.is_polynomial()
                         else X.apply(Poly.monomial(m)) for X in g.generators])
    cols.append([-v for v in lam.values])
    rows = identity_rows(cols)
    null = sparse_nullspace(rows, len(cols))
    sol = next((v for v in null if v[-1] != 0), None)
    if sol is None:
        raise NotInSpan("weight is not a combination of the basis cocycles")
    coords = [q(Fraction(x) / sol[-1]) for x in sol[:len(basis)]]
    # uniqueness: the basis part must not appear in the pure kernel
    for v in null:
        if v[-1] == 0 and any(v[:len(basis)]):
            raise NotInSpan("basis cocycles are dependent modulo coboundaries")
    return coords


def solve_cocycle_space(g: LieAlgebra, d: int = 3, names: Optional[Sequence[str]] = None,
                        anchors: Optional[Mapping[str, Tuple[object, str]]] = None,
                        chart_index: int = 0) -> CocycleSpace:
    """Cocycles with polynomial entries of degree <= d, modulo coboundaries dμ, deg μ <= d+1.

    The canonical basis comes from row reduction with coordinates ordered
    generator by generator (highest-degree monomials first within each
    generator), so representatives vanish on the earliest generators whenever
    a coboundary allows it.  ``anchors`` optionally renames/rescales the
    basis so that parameter P equals the coefficient of a given monomial in
    λ(X_i).
    """
    g.verified()
    r = g.dim
    gens = g.generators
    vars_ = _chart_vars(g.chart)
    mons_asc = monomials_up_to(vars_, d)
    block = sorted(mons_asc, key=mono_key, reverse=True)
    nb = len(block)
    N = r * nb

    def col_index(i: int, m) -> int:
        return i * nb + pos[m]

    pos = {m: k for k, m in enumerate(block)}
    applied = [[X.apply(RatFunc(Poly.monomial(m))) for m in block] for X in gens]
    c = g.structure

    # cocycle equations, one slot per generator pair
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    columns = []
    for k in range(r):
        for mi, m in enumerate(block):
            mono = RatFunc(Poly.monomial(m))
            col = []
            for (i, j) in pairs:
                val = _ZERO
                if k == j:
                    val = val + applied[i][mi]
                if k == i:
                    val = val - applied[j][mi]
                ck = c[i][j][k]
                if ck:
                    val = val - mono * ck
                col.append(val)
            columns.append(col)
    if pairs:
        Z = sparse_nullspace(identity_rows(columns), N)
    else:
        Z = [[int(i == k) for i in range(N)] for k in range(N)]

    # coboundaries that stay inside the ansatz
    mus = monomials_up_to(vars_, d + 1, min_degree=1)
    cob_cols = []
    for m in mus:
        cob_cols.append([X.apply(RatFunc(Poly.monomial(m))) for X in gens])
    slot_cols = []
    for i in range(r):
        for m in block:
            col = [_ZERO] * r
            col[i] = RatFunc(Poly.monomial(m, -1))
            slot_cols.append(col)
    null = sparse_nullspace(identity_rows(cob_cols + slot_cols), len(mus) + N)
    Bvecs = [v[len(mus):] for v in null if any(v[len(mus):])]
    B_red, B_piv = rref_rows(Bvecs, N) if Bvecs else ([], [])

    # reduce cocycles modulo coboundaries and take the canonical echelon basis
    reduced = []
    for z in Z:
        z = list(z)
        for row, p in zip(B_red, B_piv):
            f = z[p]
            if f:
                z = [q(a - f * b) for a, b in zip(z, row)]
        if any(z):
            reduced.append(z)
    H, H_piv = rref_rows(reduced, N) if reduced else ([], [])

    def to_cocycle(vec) -> WeightCocycle:
        vals = []
        for i in range(r):
            terms = {block[k]: vec[i * nb + k] for k in range(nb) if vec[i * nb + k] != 0}
            vals.append(RatFunc(Poly(terms)))
        return WeightCocycle.fixed(g.chart, vals)

    if anchors:
        H = _apply_anchors(g, H, anchors, block, nb)
        nm = list(anchors)
    else:
        nm = list(names) if names else default_param_names(chart_index, len(H))
    if len(nm) != len(H):
        raise ValueError(f"{len(nm)} parameter names given for a {len(H)}-dimensional space")
    return CocycleSpace(g, d, [to_cocycle(h) for h in H], nm, [to_cocycle(b) for b in B_red], len(Z))


def _apply_anchors(g: LieAlgebra, H, anchors, block, nb):
    if len(anchors) != len(H):
        raise ValueError(f"{len(anchors)} anchors for a {len(H)}-dimensional space")
    idx = []
    for name, (gen, mono_text) in anchors.items():
        i = g.names.index(gen) if isinstance(gen, str) else int(gen)
        m = parse_expression(mono_text, g.chart.table)
        if not (m.is_poly() and m.num.is_monomial()):
            raise ValueError(f"anchor for {name} must be a monomial")
        (mono, _), = m.num.terms.items()
        if mono not in block:
            raise ValueError(f"anchor monomial {mono_text} exceeds the ansatz degree")
        idx.append(i * nb + block.index(mono))
    # M[a][l] = value of anchor functional a on basis vector l
    M = [[h[j] for h in H] for j in idx]
    k = len(H)
    inv = _invert(M)
    if inv is None:
        raise ValueError("anchors do not determine the cocycle parameters")
    # new basis w_a = Σ_l H_l * inv[l][a]
    out = []
    for a in range(k):
        w = [0] * len(H[0])
        for l in range(k):
            f = inv[l][a]
            if f:
                w = [q(x + f * y) for x, y in zip(w, H[l])]
        out.append(w)
    return out


def _invert(M):
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [[q(x) for x in row[n:]] for row in aug]


# ---------------------------------------------------------------- compatibility

@dataclass
class CompatibilityResult:
    """Solution of the overlap conditions λ_α − λ_β = X(log g_αβ) up to gauge.

    Everything is expressed through ``coordinates``: free parameters (a
    subset of the per-chart cocycle parameters) plus, when present, exponent
    directions not tied to any parameter.  Linear forms are Polys of degree 1
    in the coordinate table.
    """

    coordinates: List[str]
    params: List[Tuple[str, str]]          # (chart, parameter)
    param_forms: Dict[str, Poly]
    exponents: Dict[Tuple[str, str], List[Tuple[RatFunc, Poly]]]
    gauge: Dict[str, List[Tuple[RatFunc, str]]]  # per chart: (shift polynomial, coordinate)
    integrality: List[Poly]
    units_table: Dict[Tuple[str, str], Chart]
    ansatz_degree: int

    @property
    def table(self) -> VariableTable:
        return VariableTable(tuple(self.coordinates), tuple("parameter" for _ in self.coordinates))

    def relations(self) -> List[str]:
        out = []
        for chart, p in self.params:
            form = self.param_forms[p]
            if p in self.coordinates:
                continue
            out.append(f"{p} = {render_poly(form, self.table)}")
        return out

    def integrality_text(self) -> List[str]:
        return [render_poly(f, self.table) for f in self.integrality]

    def exponent_text(self) -> Dict[str, str]:
        out = {}
        for (a, b), items in self.exponents.items():
            parts = []
            for u, form in items:
                if form.is_zero():
                    continue
                ut = self.units_table[(a, b)].render(u)
                ft = render_poly(form, self.table)
                parts.append(f"({ut})^({ft})")
            out[f"{a}/{b}"] = " * ".join(parts) if parts else "1"
        return out

    def parameter_values(self, coords: Mapping[str, object]) -> Dict[str, object]:
        pt = {i: q(coords.get(n, 0)) for i, n in enumerate(self.coordinates)}
        return {p: self.param_forms[p].evaluate(pt) for _, p in self.params}

    def exponent_values(self, coords: Mapping[str, object]) -> Dict[Tuple[str, str], List]:
        pt = {i: q(coords.get(n, 0)) for i, n in enumerate(self.coordinates)}
        return {k: [f.evaluate(pt) for _, f in items] for k, items in self.exponents.items()}

    def gauge_values(self, coords: Mapping[str, object]) -> Dict[str, RatFunc]:
        out = {}
        for chart, items in self.gauge.items():
            tot = _ZERO
            for poly, coord in items:
                c = q(coords.get(coord, 0))
                if c:
                    tot = tot + poly * c
            out[chart] = tot
        return out


def compatibility_solve(atlas: Atlas, algebras: Mapping[str, LieAlgebra], spaces: Mapping[str, CocycleSpace],
                        gauge_degree: Optional[int] = None, prefer: Sequence[str] = ()) -> CompatibilityResult:
    """Joint linear solve for parameters, unit exponents and polynomial gauge shifts.

    On each overlap (α, β), in β's coordinates and for every generator X:
    λ_α(X) + X(g_α) − λ_β(X) − X(g_β) − Σ e_u X(u)/u = 0.

    Parameters named in ``prefer`` are kept free when possible; the others
    are then expressed through them.
    """
    charts = list(atlas.charts)
    d = gauge_degree if gauge_degree is not None else max((s.degree for s in spaces.values()), default=1)
    labels: List[Tuple] = []
    params: List[Tuple[str, str]] = []
    for ch in charts:
        for p in spaces[ch].names:
            if any(p == q_ for _, q_ in params):
                raise ValueError(f"parameter name {p} used on two charts")
            params.append((ch, p))
    rank = {p: k for k, p in enumerate(prefer)}
    params.sort(key=lambda cp: rank.get(cp[1], len(rank)))
    labels.extend(("param", ch, p) for ch, p in params)
    nP = len(labels)
    units_of = {}
    for ov in atlas.overlaps:
        t = atlas.transition(*ov)
        units_of[ov] = list(t.units) or derive_units(t)
        for k in range(len(units_of[ov])):
            labels.append(("exp", ov, k))
    nE = len(labels) - nP
    gauge_monos: Dict[str, list] = {}
    for ch in charts:
        gauge_monos[ch] = monomials_up_to(_chart_vars(atlas.charts[ch]), d, min_degree=1)
        for m in gauge_monos[ch]:
            labels.append(("gauge", ch, m))
    index = {lab: i for i, lab in enumerate(labels)}
    ncols = len(labels)

    rows = []
    for ov in atlas.overlaps:
        a, b = ov
        t = atlas.transition(a, b)
        ga, gb = algebras[a], algebras[b]
        if ga.dim != gb.dim:
            raise ValueError(f"charts {a} and {b} carry different numbers of generators")
        for i in range(ga.dim):
            Xa, Xb = ga.generators[i], gb.generators[i]
            col: Dict[int, RatFunc] = {}
            for k, p in enumerate(spaces[a].names):
                col[index[("param", a, p)]] = t.pull(spaces[a].basis[k].values[i])
            for k, p in enumerate(spaces[b].names):
                j = index[("param", b, p)]
                col[j] = col.get(j, _ZERO) - spaces[b].basis[k].values[i]
            for m in gauge_monos[a]:
                col[index[("gauge", a, m)]] = t.pull(Xa.apply(RatFunc(Poly.monomial(m))))
            for m in gauge_monos[b]:
                j = index[("gauge", b, m)]
                col[j] = col.get(j, _ZERO) - Xb.apply(RatFunc(Poly.monomial(m)))
            for k, u in enumerate(units_of[ov]):
                col[index[("exp", ov, k)]] = -t.pull(Xa.apply(u) / u)
            items = sorted((j, f) for j, f in col.items() if not f.is_zero())
            if not items:
                continue
            sub_rows = identity_rows([[f] for _, f in items])
            for sr in sub_rows:
                rows.append({items[jj][0]: v for jj, v in sr.items()})
    S = sparse_nullspace(rows, ncols)

    # canonical coordinates: row reduce with parameters first, exponents next, gauge last
    red, piv = rref_rows(S, ncols) if S else ([], [])
    coord_rows = [(p, row) for p, row in zip(piv, red) if p < nP + nE]
    coords: List[str] = []
    extra = 0
    for p, _ in coord_rows:
        if p < nP:
            coords.append(labels[p][2])
        else:
            extra += 1
            coords.append(f"n{extra}")
    param_forms: Dict[str, Poly] = {}
    for j, (ch, p) in enumerate(params):
        terms = {}
        for k, (_, row) in enumerate(coord_rows):
            if row[j]:
                terms[((k, 1),)] = row[j]
        param_forms[p] = Poly(terms)
    exponents: Dict[Tuple[str, str], List[Tuple[RatFunc, Poly]]] = {}
    forms_all = []
    units_table = {}
    for ov in atlas.overlaps:
        t = atlas.transition(*ov)
        units_table[ov] = t.source
        items = []
        for k, u in enumerate(units_of[ov]):
            j = index[("exp", ov, k)]
            terms = {((kk, 1),): row[j] for kk, (_, row) in enumerate(coord_rows) if row[j]}
            f = Poly(terms)
            items.append((u, f))
            if not f.is_zero():
                forms_all.append(f)
        exponents[ov] = items
    gauge: Dict[str, List[Tuple[RatFunc, str]]] = {ch: [] for ch in charts}
    for k, (_, row) in enumerate(coord_rows):
        for ch in charts:
            terms = {m: row[index[("gauge", ch, m)]] for m in gauge_monos[ch] if row[index[("gauge", ch, m)]]}
            if terms:
                gauge[ch].append((RatFunc(Poly(terms)), coords[k]))
    integrality = _integrality_basis(forms_all, len(coords))
    return CompatibilityResult(coords, params, param_forms, exponents, gauge, integrality, units_table, d)


def _integrality_basis(forms: Sequence[Poly], n: int) -> List[Poly]:
    if not forms:
        return []
    vecs = []
    for f in forms:
        v = [0] * n
        for m, c in f.terms.items():
            ((k, _),) = m
            v[k] = Fraction(c)
        vecs.append(v)
    D = 1
    for v in vecs:
        for x in v:
            D = D * Fraction(x).denominator // _gcd(D, Fraction(x).denominator)
    ints = [[int(x * D) for x in v] for v in vecs]
    L = hnf_lattice(ints, n)
    out = []
    for row in L.basis:
        out.append(Poly({((k, 1),): Fraction(x, D) for k, x in enumerate(row) if x}))
    return out


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def verify_compatibility(atlas: Atlas, algebras: Mapping[str, LieAlgebra], spaces: Mapping[str, CocycleSpace],
                         result: CompatibilityResult, coords: Mapping[str, object]) -> bool:
    """Re-check the overlap identities exactly at one specialization."""
    pv = result.parameter_values(coords)
    ev = result.exponent_values(coords)
    gv = result.gauge_values(coords)
    lam = {ch: spaces[ch].general().specialize(pv) for ch in atlas.charts}
    for ov in atlas.overlaps:
        a, b = ov
        t = atlas.transition(a, b)
        for i in range(algebras[a].dim):
            Xa, Xb = algebras[a].generators[i], algebras[b].generators[i]
            lhs = t.pull(lam[a].values[i] + Xa.apply(gv[a])) - lam[b].values[i] - Xb.apply(gv[b])
            rhs = _ZERO
            for (u, _), e in zip(result.exponents[ov], ev[ov]):
                if e:
                    rhs = rhs + t.pull(Xa.apply(u) / u) * e
            if not lhs == rhs:
                return False
    return True


# ---------------------------------------------------------------- Picard presentation

@dataclass
class PicPresentation:
    continuous_rank: int
    integer_rank: int
    relations: List[str]
    integrality: List[str]
    transitions: Dict[str, str]
    ansatz_degree: int

    def render(self) -> str:
        return f"C^{self.continuous_rank} x Z^{self.integer_rank} (ansatz-relative)"

    def as_dict(self) -> dict:
        return {
            "group": self.render(),
            "continuous_rank": self.continuous_rank,
            "integer_rank": self.integer_rank,
            "relations": self.relations,
            "integrality": self.integrality,
            "transitions": self.transitions,
            "ansatz_degree": self.ansatz_degree,
        }


def pic_assemble(result: CompatibilityResult) -> PicPresentation:
    z = len(result.integrality)
    r = len(result.coordinates)
    return PicPresentation(r - z, z, result.relations(), result.integrality_text(), result.exponent_text(),
                           result.ansatz_degree)


__all__ = [
    "WeightCocycle", "CocycleSpace", "CompatibilityResult", "PicPresentation", "NoSolution", "NotInSpan",
    "cocycle_check", "coboundary", "solve_cocycle_space", "weight_coordinates", "compatibility_solve",
    "verify_compatibility", "pic_assemble", "default_param_names",
]
