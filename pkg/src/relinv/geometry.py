"""Charts, vector fields, Lie algebra presentations, divergences and atlases."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    DegenerateSubstitution, Poly, RatFunc, QMatrix, as_ratfunc, poly_exact_divide, q, sparse_nullspace, sparse_rank, substitute,
)
from .algebra.identities import identity_rows
from .algebra.linalg import rref_rows
from .expressions import VariableTable, parse_expression, render

_ZERO = RatFunc(Poly())


class ChartMismatch(ValueError):
    pass


class NotClosed(ArithmeticError):
    """The bracket of generators i and j is not in their span."""

    def __init__(self, i: int, j: int, residual: "VectorField"):
        self.i, self.j, self.residual = i, j, residual
        super().__init__(f"[X{i + 1}, X{j + 1}] is not a combination of the generators")


class PointNotInDomain(ValueError):
    pass


@dataclass(frozen=True)
class Chart:
    name: str
    table: VariableTable

    def __post_init__(self):
        if len(self.table) == 0:
            raise ValueError("a chart needs at least one variable")

    @property
    def dim(self) -> int:
        return len(self.table)

    def parse(self, text: str) -> RatFunc:
        return parse_expression(text, self.table)

    def render(self, f) -> str:
        return render(f, self.table)


class VectorField:
    """A derivation sum_v coeffs[v] * d/dv on a chart."""

    __slots__ = ("chart", "coeffs")

    def __init__(self, chart: Chart, coeffs: Sequence):
        if len(coeffs) != chart.dim:
            raise ValueError("one coefficient per chart variable expected")
        self.chart = chart
        self.coeffs: Tuple[RatFunc, ...] = tuple(as_ratfunc(c) for c in coeffs)

    @classmethod
    def from_dict(cls, chart: Chart, mapping: Mapping) -> "VectorField":
        co = [_ZERO] * chart.dim
        for k, v in mapping.items():
            i = chart.table.index(k) if isinstance(k, str) else k
            co[i] = chart.parse(v) if isinstance(v, str) else as_ratfunc(v)
        return cls(chart, co)

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, [_ZERO] * chart.dim)

    def is_polynomial(self) -> bool:
        return all(c.is_poly() for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def apply(self, f):
        """X(f).  Polynomial input on a polynomial field stays a Poly."""
        if isinstance(f, Poly):
            if self.is_polynomial():
                return self.apply_poly(f)
            f = RatFunc(f)
        f = as_ratfunc(f)
        if f.is_poly() and self.is_polynomial():
            return RatFunc(self.apply_poly(f.num))
        out = _ZERO
        for v in f.variables():
            c = self.coeffs[v] if v < len(self.coeffs) else _ZERO
            if not c.is_zero():
                out = out + c * f.diff(v)
        return out

    def apply_poly(self, p: Poly) -> Poly:
        out = Poly()
        for v in p.variables():
            if v >= len(self.coeffs):
                continue
            c = self.coeffs[v]
            if not c.is_zero():
                out = out + c.num * p.diff(v)
        return out

    def __add__(self, other: "VectorField") -> "VectorField":
        _same_chart(self, other)
        return VectorField(self.chart, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        _same_chart(self, other)
        return VectorField(self.chart, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> "VectorField":
        return VectorField(self.chart, [a * c for a in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart.table.names == other.chart.table.names and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None  # type: ignore[assignment]

    def evaluate(self, point: Mapping[int, object]) -> List:
        try:
            return [c.evaluate(point) for c in self.coeffs]
        except ZeroDivisionError as e:
            raise PointNotInDomain(str(e)) from None

    def render(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            parts.append(f"({self.chart.render(c)})*d_{self.chart.table.name(i)}")
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> Dict[str, str]:
        return {self.chart.table.name(i): self.chart.render(c) for i, c in enumerate(self.coeffs) if not c.is_zero()}

    def __repr__(self) -> str:
        return f"VectorField[{self.chart.name}]({self.render()})"


def _same_chart(X: VectorField, Y: VectorField):
    if X.chart.table.names != Y.chart.table.names:
        raise ChartMismatch(f"fields live on different charts {X.chart.name} / {Y.chart.name}")


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    _same_chart(X, Y)
    return VectorField(X.chart, [X.apply(b) - Y.apply(a) for a, b in zip(X.coeffs, Y.coeffs)])


# ---------------------------------------------------------------- presentations

@dataclass
class LieAlgebra:
    """Generators on one chart with structure constants c[i][j][k]."""

    generators: List[VectorField]
    names: List[str] = field(default_factory=list)
    structure: Optional[List[List[List]]] = None

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a presentation needs at least one generator")
        chart = self.generators[0].chart
        for g in self.generators:
            _same_chart(g, self.generators[0])
        if not self.names:
            self.names = [f"X{i + 1}" for i in range(len(self.generators))]
        if len(self.names) != len(self.generators):
            raise ValueError("one name per generator")
        self.chart = chart

    @property
    def dim(self) -> int:
        return len(self.generators)

    def verified(self) -> "LieAlgebra":
        if self.structure is None:
            self.structure = verify_closure(self.generators)
        return self

    def bracket_coords(self, a: Sequence, b: Sequence) -> List:
        """Coordinates of [sum a_i X_i, sum b_j X_j]."""
        c = self.verified().structure
        r = self.dim
        out = [0] * r
        for i in range(r):
            if not a[i]:
                continue
            for j in range(r):
                if not b[j] or i == j:
                    continue
                f = a[i] * b[j]
                for k, ck in enumerate(c[i][j]):
                    if ck:
                        out[k] += f * ck
        return [q(x) for x in out]


def _field_columns(fields: Sequence[VectorField]):
    return [list(X.coeffs) for X in fields]


def verify_closure(gens: Sequence[VectorField]) -> List[List[List]]:
    """Structure constants c[i][j][k] with [X_i, X_j] = sum_k c[i][j][k] X_k."""
    r = len(gens)
    if r == 0:
        raise ValueError("no generators")
    cols = _field_columns(gens)
    rows = identity_rows(cols)
    if sparse_rank(rows, r) < r:
        raise ValueError("generators are linearly dependent over the constants")
    c = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            B = lie_bracket(gens[i], gens[j])
            if B.is_zero():
                continue
            rows = identity_rows(cols + [[-x for x in B.coeffs]])
            null = sparse_nullspace(rows, r + 1)
            sol = next((v for v in null if v[r] != 0), None)
            if sol is None:
                raise NotClosed(i, j, B)
            coeffs = [q(Fraction(x) / sol[r]) for x in sol[:r]]
            c[i][j] = coeffs
            c[j][i] = [q(-x) for x in coeffs]
    return c


# ---------------------------------------------------------------- volume forms

@dataclass(frozen=True)
class VolumeForm:
    """density * dx^{v_1} ^ ... ^ dx^{v_n} over the listed chart variables."""

    chart: Chart
    density: RatFunc
    variables: Tuple[int, ...] = ()

    def __post_init__(self):
        if as_ratfunc(self.density).is_zero():
            raise ValueError("volume form density must be nonzero")
        object.__setattr__(self, "density", as_ratfunc(self.density))
        if not self.variables:
            object.__setattr__(self, "variables", tuple(range(self.chart.dim)))

    @classmethod
    def standard(cls, chart: Chart, names: Sequence[str] | None = None, density=1) -> "VolumeForm":
        vs = tuple(chart.table.index(n) for n in names) if names else tuple(range(chart.dim))
        return cls(chart, as_ratfunc(density), vs)


def divergence(X: VectorField, omega: VolumeForm) -> RatFunc:
    """div_Ω(X) = (1/ρ) Σ_i ∂_i(ρ a^i) over the form's variables."""
    names = omega.chart.table.names
    if X.chart.table.names[:len(names)] != names:
        raise ChartMismatch("volume form and field live on different charts")
    rho = omega.density
    total = _ZERO
    for v in omega.variables:
        a = X.coeffs[v]
        if not a.is_zero():
            total = total + a.diff(v)
    if not rho.is_constant():
        total = total + X.apply(rho) / rho
    return total


# ---------------------------------------------------------------- transitions and atlases

@dataclass
class TransitionMap:
    """Overlap data between two charts.

    ``substitution`` expresses each source variable in target variables, so
    ``pull`` rewrites a source-chart function in target coordinates.
    ``inverse`` expresses target variables in source variables; it is needed
    to push vector fields forward.  ``units`` are functions (in source
    coordinates) declared nonvanishing on the overlap.
    """

    source: Chart
    target: Chart
    substitution: Dict[int, RatFunc]
    inverse: Dict[int, RatFunc] = field(default_factory=dict)
    units: List[RatFunc] = field(default_factory=list)

    def pull(self, f) -> RatFunc:
        return substitute(f, self.substitution)

    def reversed(self) -> "TransitionMap":
        units = [self.pull(u) for u in self.units]
        return TransitionMap(self.target, self.source, dict(self.inverse), dict(self.substitution), units)


def transport_field(X: VectorField, t: TransitionMap) -> VectorField:
    """Push X forward from t.source to t.target."""
    if X.chart.table.names != t.source.table.names:
        raise ChartMismatch("field does not live on the transition's source chart")
    if len(t.inverse) != t.target.dim:
        raise ValueError("transition lacks target coordinates in source variables")
    coeffs = []
    for w in range(t.target.dim):
        expr = t.inverse[w]
        coeffs.append(t.pull(X.apply(expr)))
    return VectorField(t.target, coeffs)


def derive_units(t: TransitionMap) -> List[RatFunc]:
    """Candidate units of an overlap, in source coordinates.

    Takes the denominators of both directions of the map, splits off single
    variable factors and keeps the primitive remainder; duplicates up to a
    constant factor are dropped.
    """
    pieces: List[Poly] = []
    for expr in t.inverse.values():
        pieces.append(as_ratfunc(expr).den)
    for expr in t.substitution.values():
        back = substitute(as_ratfunc(expr).den, t.inverse) if t.inverse else as_ratfunc(1)
        pieces.extend([back.num, back.den])
    units: List[Poly] = []

    def add(p: Poly):
        if p.is_constant():
            return
        p = p.primitive()
        if not any(p == u or p == -u for u in units):
            units.append(p)

    for p in pieces:
        mono = p.monomial_content()
        for v, _ in mono:
            add(Poly.var(v))
        if mono:
            p = poly_exact_divide(p, Poly.monomial(mono))
        add(p)
    return [RatFunc(u) for u in units]


def identity_transition(chart: Chart) -> TransitionMap:
    ident = {i: RatFunc.var(i) for i in range(chart.dim)}
    return TransitionMap(chart, chart, dict(ident), dict(ident), [])


class AtlasError(ValueError):
    pass


@dataclass
class Atlas:
    charts: Dict[str, Chart]
    transitions: Dict[Tuple[str, str], TransitionMap] = field(default_factory=dict)
    overlaps: List[Tuple[str, str]] = field(default_factory=list)

    def add_overlap(self, t: TransitionMap):
        a, b = t.source.name, t.target.name
        if (a, b) in self.transitions or (b, a) in self.transitions:
            raise AtlasError(f"overlap {a}/{b} declared twice")
        self.transitions[(a, b)] = t
        self.transitions[(b, a)] = t.reversed()
        self.overlaps.append((a, b))

    def transition(self, a: str, b: str) -> TransitionMap:
        try:
            return self.transitions[(a, b)]
        except KeyError:
            raise AtlasError(f"no overlap declared between {a} and {b}") from None

    def check(self) -> None:
        """Round trips are identities; triple overlaps compose."""
        for (a, b), t in self.transitions.items():
            back = self.transitions[(b, a)]
            for v in range(t.source.dim):
                there = t.substitution[v]
                again = substitute(there, back.substitution)
                if not again == RatFunc.var(v):
                    raise AtlasError(f"transition {a}->{b}->{a} is not the identity on "
                                     f"{t.source.table.name(v)}")
        names = list(self.charts)
        for a in names:
            for b in names:
                for c in names:
                    if len({a, b, c}) < 3:
                        continue
                    if (a, b) in self.transitions and (b, c) in self.transitions and (a, c) in self.transitions:
                        tab, tbc, tac = self.transitions[(a, b)], self.transitions[(b, c)], self.transitions[(a, c)]
                        for v in range(tab.source.dim):
                            lhs = substitute(tab.substitution[v], tbc.substitution)
                            if not lhs == tac.substitution[v]:
                                raise AtlasError(f"triple overlap {a},{b},{c} does not compose")


# ---------------------------------------------------------------- points and isotropy

POOL = [Fraction(k) for k in range(-7, 8)] + [Fraction(k, 2) for k in (-5, -3, -1, 1, 3, 5)] + \
       [Fraction(k, 3) for k in (-4, -2, -1, 1, 2, 4)] + [Fraction(k, 5) for k in (-7, -3, 2, 6, 11)]


def sample_point(n: int, rng: random.Random, avoid: Sequence[RatFunc] = (), tries: int = 200) -> Dict[int, object]:
    """A rational point from a fixed pool where no function in ``avoid`` vanishes or blows up."""
    for _ in range(tries):
        pt = {i: q(rng.choice(POOL)) for i in range(n)}
        ok = True
        for f in avoid:
            f = as_ratfunc(f)
            if f.den.evaluate(pt) == 0 or f.num.evaluate(pt) == 0:
                ok = False
                break
        if ok:
            return pt
    raise PointNotInDomain("could not sample a point avoiding the given functions")


def field_matrix_rank(fields: Sequence[VectorField], point: Mapping[int, object]) -> int:
    rows = [X.evaluate(point) for X in fields]
    return QMatrix.from_rows(rows, cols=fields[0].chart.dim).rank() if rows else 0


@dataclass(frozen=True)
class IsotropyResult:
    basis: Tuple[Tuple, ...]  # coordinates in the generators
    derived_dim: int
    solvable: bool
    has_codim1_ideal: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def perfect(self) -> bool:
        return self.derived_dim == self.dim


def _span_brackets(g: LieAlgebra, vecs: Sequence[Sequence]) -> List[list]:
    prods = []
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            b = g.bracket_coords(vecs[i], vecs[j])
            if any(b):
                prods.append(b)
    if not prods:
        return []
    red, _ = rref_rows(prods, g.dim)
    return red


def isotropy_analysis(g: LieAlgebra, point: Mapping) -> IsotropyResult:
    """Isotropy subalgebra at ``point`` and whether it has a codimension-one ideal.

    An ideal of codimension one exists exactly when the isotropy algebra is
    not perfect, i.e. when it has a nonzero character.
    """
    g.verified()
    pt = {(g.chart.table.index(k) if isinstance(k, str) else k): q(v) for k, v in point.items()}
    values = [X.evaluate(pt) for X in g.generators]
    n = g.chart.dim
    M = QMatrix.from_rows([[values[j][i] for j in range(g.dim)] for i in range(n)], cols=g.dim)
    iso = M.nullspace()
    derived = _span_brackets(g, iso)
    series = derived
    solvable = len(iso) == 0
    seen = len(iso)
    while not solvable:
        if not series:
            solvable = True
            break
        if len(series) == seen:
            break
        seen = len(series)
        series = _span_brackets(g, series)
    return IsotropyResult(tuple(tuple(v) for v in iso), len(derived), solvable, len(derived) < len(iso))


def parse_point(chart: Chart, point: Mapping[str, object]) -> Dict[int, object]:
    out = {}
    for k, v in point.items():
        if isinstance(v, str):
            v = Fraction(v)
        out[chart.table.index(k)] = q(v)
    return out


__all__ = [
    "Chart", "VectorField", "LieAlgebra", "VolumeForm", "TransitionMap", "Atlas", "AtlasError", "NotClosed",
    "ChartMismatch", "PointNotInDomain", "IsotropyResult", "lie_bracket", "verify_closure", "divergence",
    "transport_field", "identity_transition", "isotropy_analysis", "sample_point", "field_matrix_rank",
    "parse_point", "derive_units", "DegenerateSubstitution",
]
