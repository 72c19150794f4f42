"""Jet coordinates, total derivatives and prolongation of point vector fields.

Jet tables list the base chart's variables first, in the base chart's order,
followed by the derivative coordinates grouped by order.  A lower-order table
is therefore always a prefix of a higher-order one, so polynomials move
between orders without re-indexing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Poly, RatFunc, as_ratfunc
from .expressions import VariableTable
from .geometry import Chart, TransitionMap, VectorField

MultiIndex = Tuple[int, ...]


class TruncationError(ArithmeticError):
    """Coordinates of too high an order survived where they must cancel."""


class NotProjectable(ValueError):
    pass


def _jet_name(dep: str, sigma: MultiIndex, indep: Sequence[str]) -> str:
    if len(indep) == 1:
        return f"{dep}{len(sigma)}"
    return f"{dep}_{''.join(indep[i] for i in sigma)}"


@dataclass(frozen=True)
class JetSpec:
    """Order-k jets of maps from the independent to the dependent variables.

    ``base`` is the J^0 chart; its variables split into independent ones
    (``independent``) and dependent ones (``dependent``).  ``fibered`` marks a
    bundle whose independent coordinates may only be moved by projectable
    fields.
    """

    base: Chart
    independent: Tuple[str, ...]
    dependent: Tuple[str, ...]
    order: int
    fibered: bool = False
    name: Optional[str] = None
    _layout: Dict = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        names = set(self.base.table.names)
        if set(self.independent) | set(self.dependent) != names or set(self.independent) & set(self.dependent):
            raise ValueError("independent and dependent variables must partition the base chart")
        if self.order < 0:
            raise ValueError("jet order must be non-negative")
        tab = self.base.table
        names_l = list(tab.names)
        roles = ["base" if n in self.independent else "fiber" for n in names_l]
        orders = [0] * len(names_l)
        index: Dict[Tuple[int, MultiIndex], int] = {}
        info: Dict[int, Tuple[int, MultiIndex]] = {}
        ind_idx = [tab.index(n) for n in self.independent]
        dep_idx = [tab.index(n) for n in self.dependent]
        for j, d in enumerate(dep_idx):
            index[(j, ())] = d
            info[d] = (j, ())
        for r in range(1, self.order + 1):
            for j, dname in enumerate(self.dependent):
                for sigma in combinations_with_replacement(range(len(self.independent)), r):
                    index[(j, sigma)] = len(names_l)
                    info[len(names_l)] = (j, sigma)
                    names_l.append(_jet_name(dname, sigma, self.independent))
                    roles.append("jet")
                    orders.append(r)
        table = VariableTable(tuple(names_l), tuple(roles), tuple(orders))
        chart = Chart(self.name or self.base.name, table)
        object.__setattr__(self, "_layout", {
            "table": table, "chart": chart, "index": index, "info": info, "ind": ind_idx, "dep": dep_idx,
        })

    # layout accessors
    @property
    def table(self) -> VariableTable:
        return self._layout["table"]

    @property
    def chart(self) -> Chart:
        return self._layout["chart"]

    @property
    def n(self) -> int:
        return len(self.independent)

    @property
    def m(self) -> int:
        return len(self.dependent)

    @property
    def independent_ids(self) -> List[int]:
        return self._layout["ind"]

    @property
    def dependent_ids(self) -> List[int]:
        return self._layout["dep"]

    def var(self, j: int, sigma: Sequence[int]) -> int:
        return self._layout["index"][(j, tuple(sorted(sigma)))]

    def jet_info(self, v: int) -> Optional[Tuple[int, MultiIndex]]:
        return self._layout["info"].get(v)

    def var_order(self, v: int) -> int:
        return self.table.orders[v]

    def multi_indices(self, max_order: Optional[int] = None) -> List[MultiIndex]:
        k = self.order if max_order is None else max_order
        out: List[MultiIndex] = []
        for r in range(k + 1):
            out.extend(combinations_with_replacement(range(self.n), r))
        return out

    def with_order(self, k: int) -> "JetSpec":
        return _spec_with_order(self, k)

    def __hash__(self):
        return hash((self.base.name, self.base.table.names, self.independent, self.dependent, self.order,
                     self.fibered, self.name))


@lru_cache(maxsize=None)
def _spec_with_order(spec: JetSpec, k: int) -> JetSpec:
    if k == spec.order:
        return spec
    return JetSpec(spec.base, spec.independent, spec.dependent, k, spec.fibered, spec.name)


def _add_index(sigma: MultiIndex, i: int) -> MultiIndex:
    return tuple(sorted(sigma + (i,)))


# ---------------------------------------------------------------- total derivatives

def _total_derivative_poly(f: Poly, i: int, spec: JetSpec, hi: JetSpec) -> Poly:
    x_i = spec.independent_ids[i]
    out = f.diff(x_i)
    for v in sorted(f.variables()):
        info = spec.jet_info(v)
        if info is None:
            continue
        j, sigma = info
        if len(sigma) > spec.order:
            raise TruncationError("input exceeds the declared jet order")
        w = hi.var(j, _add_index(sigma, i))
        out = out + f.diff(v).mul_monomial(((w, 1),))
    return out


def total_derivative(f, i: int, spec: JetSpec):
    """D_{x^i} f for f on J^k; the result lives on ``spec.with_order(k + 1)``.

    Polys stay Polys; rational input gives a RatFunc.
    """
    hi = spec.with_order(spec.order + 1)
    if isinstance(f, Poly):
        return _total_derivative_poly(f, i, spec, hi)
    f = as_ratfunc(f)
    if f.is_poly():
        return RatFunc(_total_derivative_poly(f.num, i, spec, hi))
    dn = _total_derivative_poly(f.num, i, spec, hi)
    dd = _total_derivative_poly(f.den, i, spec, hi)
    return RatFunc(dn * f.den - f.num * dd, f.den * f.den)


def total_derivative_field(spec: JetSpec, i: int) -> VectorField:
    """D_{x^i} truncated to a field on J^{k+1} (no order-(k+2) terms)."""
    hi = spec.with_order(spec.order + 1)
    co = [RatFunc(Poly())] * hi.chart.dim
    co[spec.independent_ids[i]] = RatFunc.const(1)
    for v in range(spec.chart.dim):
        info = spec.jet_info(v)
        if info is not None:
            j, sigma = info
            co[v] = RatFunc.var(hi.var(j, _add_index(sigma, i)))
    return VectorField(hi.chart, co)


# ---------------------------------------------------------------- prolongation

def _embed(X: VectorField, spec: JetSpec) -> List[RatFunc]:
    if X.chart.table.names != spec.base.table.names:
        raise ValueError("field must live on the base chart of the jet spec")
    return list(X.coeffs)


def prolong(X: VectorField, k: int, spec: JetSpec) -> VectorField:
    """The k-th prolongation of a point field X on ``spec.base``.

    b_{σi} = D_i(b_σ) − Σ_l u_{σl} D_i(a^l), seeded by the fiber components.
    """
    base = _embed(X, spec)
    target = spec.with_order(k)
    a = [base[v] for v in target.independent_ids]
    if spec.fibered:
        allowed = set(target.independent_ids)
        for c in a:
            if not c.variables() <= allowed:
                raise NotProjectable("independent components depend on fiber coordinates")
    coeffs = list(base) + [RatFunc(Poly())] * (target.chart.dim - len(base))
    cur: Dict[Tuple[int, MultiIndex], RatFunc] = {(j, ()): base[v] for j, v in enumerate(target.dependent_ids)}
    Da_cache: Dict[Tuple[int, int], RatFunc] = {}
    for r in range(k):
        lo = target.with_order(r)
        nxt: Dict[Tuple[int, MultiIndex], RatFunc] = {}
        for (j, sigma), b in cur.items():
            for i in range(target.n):
                tau = _add_index(sigma, i)
                if (j, tau) in nxt:
                    continue
                val = total_derivative(b, i, lo)
                for l in range(target.n):
                    key = (i, l)
                    if key not in Da_cache:
                        Da_cache[key] = total_derivative(a[l], i, target.with_order(0))
                    Da = Da_cache[key]
                    if not Da.is_zero():
                        val = val - RatFunc.var(target.var(j, _add_index(sigma, l))) * Da
                nxt[(j, tau)] = val
        for key, val in nxt.items():
            coeffs[target.var(*key)] = val
        cur = nxt
    return VectorField(target.chart, coeffs)


def truncate_field(X: VectorField, spec: JetSpec) -> VectorField:
    """Restrict a jet field to the coordinates of ``spec`` (explicit truncation)."""
    n = spec.chart.dim
    co = X.coeffs[:n]
    for c in co:
        if any(v >= n for v in c.variables()):
            raise TruncationError("field coefficients involve coordinates beyond the target order")
    return VectorField(spec.chart, co)


# ---------------------------------------------------------------- weighted degree

@dataclass(frozen=True)
class WeightedMonomialInfo:
    order: int
    degree: int
    weighted_degree: int


def weighted_degree(f, spec: JetSpec, threshold: int = 1) -> WeightedMonomialInfo:
    """Order, degree and weighted degree over jet factors of order >= threshold."""
    p = f.num if isinstance(f, RatFunc) else f
    order = deg = wdeg = 0
    orders = spec.table.orders
    for m in p.terms:
        d = w = 0
        for v, e in m:
            o = orders[v] if v < len(orders) else _order_of(spec, v)
            order = max(order, o)
            if o >= threshold and o > 0:
                d += e
                w += e * o
        deg = max(deg, d)
        wdeg = max(wdeg, w)
    return WeightedMonomialInfo(order, deg, wdeg)


def _order_of(spec: JetSpec, v: int) -> int:
    k = spec.order
    while True:
        k += 1
        s = spec.with_order(k)
        if v < s.chart.dim:
            return s.table.orders[v]


def max_order(f, spec: JetSpec) -> int:
    r = as_ratfunc(f)
    vs = r.variables()
    return max((_order_of(spec, v) if v >= spec.chart.dim else spec.table.orders[v] for v in vs), default=0)


# ---------------------------------------------------------------- second-order ODE symmetries

def ode_spec(k: int, names=("x", "y", "p", "u")) -> JetSpec:
    """J^k of the bundle (x, y, p, u) -> (x, y, p): jets of u = y'' as a function on J^1."""
    base = Chart("ode", VariableTable.of(*names))
    return JetSpec(base, tuple(names[:3]), (names[3],), k, fibered=True, name="ode")


def ode_symmetry_field(a, b, k: int, spec: Optional[JetSpec] = None) -> VectorField:
    """Prolonged symmetry field of y'' = u(x, y, y') induced by a∂x + b∂y.

    a, b are polynomials or rational functions in (x, y) (variable ids 0, 1).
    """
    spec = (spec or ode_spec(k)).with_order(k)
    x, y, p = spec.independent_ids
    u = spec.dependent_ids[0]
    a = as_ratfunc(a)
    b = as_ratfunc(b)
    for f in (a, b):
        if not f.variables() <= {x, y}:
            raise ValueError("a and b must depend on x and y only")
    P = RatFunc.var(p)
    U = RatFunc.var(u)

    def Dh(f):  # ∂x + p∂y on functions of (x, y, p)
        return f.diff(x) + P * f.diff(y)

    hi = spec.with_order(k + 1)
    ux, uy, up = (RatFunc.var(hi.var(0, (i,))) for i in range(3))
    phi = b - P * a
    c = Dh(phi)
    psi = Dh(Dh(phi)) + U * (phi.diff(y) - 2 * (a.diff(x) + P * a.diff(y))) - a * ux - b * uy - c * up
    abc = (a, b, c)
    cache: Dict[MultiIndex, RatFunc] = {(): psi}

    def D_sigma(sigma: MultiIndex) -> RatFunc:
        if sigma not in cache:
            parent = sigma[:-1]
            base = D_sigma(parent)
            cache[sigma] = total_derivative(base, sigma[-1], spec.with_order(len(parent) + 1))
        return cache[sigma]

    coeffs = [RatFunc(Poly())] * spec.chart.dim
    coeffs[x], coeffs[y], coeffs[p] = a, b, c
    limit = spec.chart.dim
    for sigma in spec.multi_indices():
        val = D_sigma(sigma)
        for i in range(3):
            val = val + abc[i] * RatFunc.var(spec.with_order(len(sigma) + 1).var(0, _add_index(sigma, i)))
        if any(v >= limit for v in val.variables()):
            raise TruncationError("order-(k+1) terms did not cancel; check the characteristic convention")
        coeffs[spec.var(0, sigma)] = val
    return VectorField(spec.chart, coeffs)


# ---------------------------------------------------------------- jet transitions

def prolong_transition(t: TransitionMap, src: JetSpec, tgt: JetSpec) -> TransitionMap:
    """Lift a base-chart transition to jet charts (one independent variable).

    The target's jets are T_{r+1} = D(T_r) / D(S) with D the source total
    derivative, S and T the target's independent and dependent coordinates
    written in source variables; the reverse direction is symmetric.
    """
    if src.n != 1 or tgt.n != 1:
        raise NotImplementedError("jet transitions are implemented for one independent variable")
    if src.order != tgt.order:
        raise ValueError("jet orders differ")
    k = src.order

    def lift(base_map: Dict[int, RatFunc], frm: JetSpec, to: JetSpec) -> Dict[int, RatFunc]:
        # base_map: `to` base vars expressed in `frm` base vars
        out = {v: base_map[v] for v in range(to.base.dim)}
        S = base_map[to.independent_ids[0]]
        DS = None
        prev = {j: base_map[d] for j, d in enumerate(to.dependent_ids)}
        for r in range(1, k + 1):
            lo = frm.with_order(r - 1)
            if DS is None:
                DS = total_derivative(S, 0, frm.with_order(0))
                if DS.is_zero():
                    raise ValueError("independent coordinate is constant along jets")
            cur = {}
            for j in range(to.m):
                cur[j] = total_derivative(prev[j], 0, lo) / DS
                out[to.var(j, (0,) * r)] = cur[j]
            prev = cur
        return out

    inverse = lift(t.inverse, src, tgt)
    substitution = lift(t.substitution, tgt, src)
    return TransitionMap(src.chart, tgt.chart, substitution, inverse, list(t.units))


__all__ = [
    "JetSpec", "WeightedMonomialInfo", "TruncationError", "NotProjectable", "total_derivative",
    "total_derivative_field", "prolong", "truncate_field", "weighted_degree", "ode_spec", "ode_symmetry_field",
    "prolong_transition", "max_order",
]
