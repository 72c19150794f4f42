"""Scenario files: validation, model construction and task execution.

A scenario declares charts, overlaps, an algebra of vector fields (given on
one home chart and transported to the others), optional jet charts, cocycle
settings and a list of tasks.  ``run`` returns a report tree that is plain
JSON data.
"""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import jsonschema

from . import __version__
from .algebra import Poly, RatFunc, monomials_up_to, q
from .cohomology import (
    CocycleSpace, NoSolution, NotInSpan, WeightCocycle, cocycle_check, compatibility_solve, pic_assemble,
    solve_cocycle_space, verify_compatibility, weight_coordinates,
)
from .expressions import ExpressionError, VariableTable, parse_expression, render
from .geometry import (
    Atlas, AtlasError, Chart, LieAlgebra, NotClosed, PointNotInDomain, TransitionMap, VectorField, VolumeForm,
    divergence, identity_transition, isotropy_analysis, transport_field,
)
from .invariants import (
    DivisorData, GridSpec, NotGlued, NotInvariant, WeightOrderViolation, check_weight_order, divisor_weight, generic_orbit_rank,
    glue_divisor_check, invariant_search, monomial_invariant_check, normalize_relation, render_monomial,
    transversality_check, verify_hit, weight_lattice_and_kernels, weight_order,
)
from .jets import JetSpec, ode_spec, ode_symmetry_field, prolong, prolong_transition


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario input."""


class CheckFailed(ArithmeticError):
    """A computed value differs from the value the scenario expects."""


NEGATIVE = (NoSolution, NotInvariant, NotGlued, NotClosed, NotInSpan, CheckFailed, WeightOrderViolation)


def schema() -> dict:
    text = resources.files("relinv").joinpath("schemas/scenario.schema.json").read_text()
    return json.loads(text)


def bundled_dir() -> Path:
    return Path(str(resources.files("relinv").joinpath("scenarios")))


def bundled_names() -> List[str]:
    return sorted(p.stem for p in bundled_dir().glob("*.json"))


def resolve(path_or_name: str) -> Path:
    p = Path(path_or_name)
    if p.exists():
        return p
    cand = bundled_dir() / (p.name if p.suffix == ".json" else p.name + ".json")
    if cand.exists():
        return cand
    raise ScenarioError(f"no scenario file {path_or_name!r} (bundled: {', '.join(bundled_names())})")


def load(path_or_name: str) -> dict:
    path = resolve(path_or_name)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    validate(data, str(path))
    return data


def validate(data: dict, where: str = "scenario") -> None:
    validator = jsonschema.Draft202012Validator(schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        loc = "/".join(str(p) for p in err.absolute_path) or "(root)"
        raise ScenarioError(f"{where}: schema violation at {loc}: {err.message}")


def num(x):
    """JSON form of a rational: int when integral, else "p/q"."""
    x = q(x)
    return x if isinstance(x, int) else f"{x.numerator}/{x.denominator}"


def parse_rational(x) -> object:
    try:
        return q(Fraction(str(x)))
    except (ValueError, ZeroDivisionError):
        raise ScenarioError(f"not a rational number: {x!r}") from None


@dataclass
class Options:
    degree: Optional[int] = None
    order: Optional[int] = None
    grid: Optional[GridSpec] = None
    seed: int = 0
    jobs: int = 1
    skip_heavy: bool = False


def _subst_params(text: str, params: Dict[str, int]) -> str:
    for name, val in params.items():
        text = re.sub(rf"\b{re.escape(name)}\b", f"({val})", text)
    return text


class Model:
    """Charts, atlases, algebras and cocycle spaces built from a validated scenario."""

    def __init__(self, data: dict, options: Optional[Options] = None):
        self.data = data
        self.opts = options or Options()
        alg = data["algebra"]
        self.ode = "ode_family" in alg
        if self.ode:
            self._build_ode(alg["ode_family"])
        else:
            self._build_charts()
            self._build_algebra(alg)
            self._build_jets()
        self._spaces: Dict[str, CocycleSpace] = {}
        self._alg_cache: Dict[Tuple[str, int], LieAlgebra] = {}

    # -- parsing helpers
    def expr(self, chart: Chart, text: str, where: str) -> RatFunc:
        try:
            return parse_expression(text, chart.table)
        except ExpressionError as e:
            raise ScenarioError(f"{where}: {e}") from None

    def _field(self, chart: Chart, spec: dict, where: str) -> VectorField:
        for k in spec:
            if k not in chart.table:
                raise ScenarioError(f"{where}: unknown coordinate {k!r} on chart {chart.name}")
        coeffs = [self.expr(chart, spec[n], f"{where}.{n}") if n in spec else RatFunc(Poly())
                  for n in chart.table.names]
        return VectorField(chart, coeffs)

    # -- construction
    def _build_charts(self):
        charts = self.data.get("charts")
        if not charts:
            raise ScenarioError("scenario declares no charts")
        self.base_charts: Dict[str, Chart] = {}
        for c in charts:
            if c["name"] in self.base_charts:
                raise ScenarioError(f"chart {c['name']} declared twice")
            try:
                self.base_charts[c["name"]] = Chart(c["name"], VariableTable.of(*c["variables"]))
            except ValueError as e:
                raise ScenarioError(f"chart {c['name']}: {e}") from None
        self.base_atlas = Atlas(dict(self.base_charts))
        for i, ov in enumerate(self.data.get("overlaps", [])):
            where = f"overlaps[{i}]"
            a, b = ov["charts"]
            for n in (a, b):
                if n not in self.base_charts:
                    raise ScenarioError(f"{where}: unknown chart {n!r}")
            A, B = self.base_charts[a], self.base_charts[b]
            sub = self._var_map(ov["map"], A, B, f"{where}.map")
            inv = self._var_map(ov["inverse"], B, A, f"{where}.inverse")
            units = [self.expr(A, u, f"{where}.units") for u in ov.get("units", [])]
            try:
                self.base_atlas.add_overlap(TransitionMap(A, B, sub, inv, units))
            except AtlasError as e:
                raise ScenarioError(f"{where}: {e}") from None

    def _var_map(self, mapping: dict, frm: Chart, to: Chart, where: str) -> Dict[int, RatFunc]:
        if set(mapping) != set(frm.table.names):
            raise ScenarioError(f"{where}: must give every coordinate of {frm.name} ({', '.join(frm.table.names)})")
        return {frm.table.index(k): self.expr(to, v, f"{where}.{k}") for k, v in mapping.items()}

    def _build_algebra(self, alg: dict):
        home = alg["chart"]
        if home not in self.base_charts:
            raise ScenarioError(f"algebra.chart: unknown chart {home!r}")
        self.home = home
        H = self.base_charts[home]
        fields = [self._field(H, f, f"algebra.fields[{i}]") for i, f in enumerate(alg["fields"])]
        self.names = list(alg.get("names") or [f"X{i + 1}" for i in range(len(fields))])
        if len(self.names) != len(fields):
            raise ScenarioError("algebra.names: one name per field required")
        self.base_fields: Dict[str, List[VectorField]] = {home: fields}
        for name, chart in self.base_charts.items():
            if name == home:
                continue
            try:
                t = self.base_atlas.transition(home, name)
            except AtlasError:
                raise ScenarioError(f"chart {name} has no overlap with the home chart {home}") from None
            self.base_fields[name] = [transport_field(X, t) for X in fields]
        self.expected_mismatch: List[str] = []
        for name, lst in alg.get("expected", {}).items():
            if name not in self.base_charts:
                raise ScenarioError(f"algebra.expected: unknown chart {name!r}")
            if len(lst) != len(fields):
                raise ScenarioError(f"algebra.expected.{name}: one field per generator required")
            for i, spec in enumerate(lst):
                Y = self._field(self.base_charts[name], spec, f"algebra.expected.{name}[{i}]")
                if not Y == self.base_fields[name][i]:
                    self.expected_mismatch.append(f"{self.names[i]} on {name}: declared {Y.render()}, "
                                                  f"transported {self.base_fields[name][i].render()}")

    def _build_jets(self):
        jets = self.data.get("jets")
        self.specs: Dict[str, JetSpec] = {}
        if not jets:
            self.work_order = 0
            self.work_charts = dict(self.base_charts)
            self.work_atlas = self.base_atlas
            return
        k = jets["order"]
        self.work_order = k
        for i, jc in enumerate(jets["charts"]):
            where = f"jets.charts[{i}]"
            if jc["base"] not in self.base_charts:
                raise ScenarioError(f"{where}: unknown base chart {jc['base']!r}")
            if jc["name"] in self.specs or jc["name"] in self.base_charts:
                raise ScenarioError(f"{where}: chart name {jc['name']} already used")
            try:
                self.specs[jc["name"]] = JetSpec(self.base_charts[jc["base"]], tuple(jc["independent"]),
                                                 tuple(jc["dependent"]), k, name=jc["name"])
            except ValueError as e:
                raise ScenarioError(f"{where}: {e}") from None
        self.work_charts = {n: s.chart for n, s in self.specs.items()}
        self.work_atlas = Atlas(dict(self.work_charts))
        decl = jets.get("overlaps", "all")
        if decl == "all":
            names = list(self.specs)
            pairs = [((a, b), None) for i, a in enumerate(names) for b in names[i + 1:]]
        else:
            pairs = [(tuple(o["charts"]), o.get("units")) for o in decl]
        for (a, b), units in pairs:
            for n in (a, b):
                if n not in self.specs:
                    raise ScenarioError(f"jets.overlaps: unknown jet chart {n!r}")
            sa, sb = self.specs[a], self.specs[b]
            ba, bb = sa.base.name, sb.base.name
            if ba == bb:
                base_t = identity_transition(sa.base)
            elif (ba, bb) in self.base_atlas.transitions:
                base_t = self.base_atlas.transition(ba, bb)
            else:
                if decl == "all":
                    continue
                raise ScenarioError(f"jets.overlaps: base charts {ba} and {bb} do not overlap")
            t = prolong_transition(base_t, sa, sb)
            if units:
                t.units = [self.expr(sa.chart, u, f"jets.overlaps {a}/{b}.units") for u in units]
            else:
                t.units = []
            self.work_atlas.add_overlap(t)

    def _build_ode(self, fam: dict):
        spec0 = ode_spec(0)
        self.ode_degree = fam["max_degree"]
        base = spec0.base
        self.base_charts = {"ode": base}
        self.base_atlas = Atlas(dict(self.base_charts))
        self.specs = {"ode": spec0}
        self.work_order = 0
        self.work_charts = {"ode": spec0.chart}
        self.work_atlas = Atlas(dict(self.work_charts))
        xy = [0, 1]
        monos = monomials_up_to(xy, self.ode_degree)
        self._ode_pairs = []
        self.names = []
        tab = VariableTable.of("x", "y")
        for slot in (0, 1):
            for m in monos:
                mono = RatFunc(Poly.monomial(m))
                a, b = (mono, RatFunc(Poly())) if slot == 0 else (RatFunc(Poly()), mono)
                self._ode_pairs.append((a, b))
                self.names.append(f"{'a' if slot == 0 else 'b'}={render(mono, tab)}")
        self.home = "ode"

    # -- algebras
    def chart_names(self) -> List[str]:
        return list(self.work_charts)

    def default_chart(self) -> str:
        return self.chart_names()[0]

    def spec(self, chart: str, order: int) -> Optional[JetSpec]:
        if chart in self.specs:
            return self.specs[chart].with_order(order)
        return None

    def algebra(self, chart: str, order: Optional[int] = None) -> LieAlgebra:
        if chart not in self.work_charts:
            raise ScenarioError(f"unknown chart {chart!r} (available: {', '.join(self.work_charts)})")
        k = self.work_order if order is None else order
        key = (chart, k)
        if key not in self._alg_cache:
            if self.ode:
                spec = self.specs[chart].with_order(k)
                gens = [ode_symmetry_field(a, b, k, spec) for a, b in self._ode_pairs]
            elif chart in self.specs:
                spec = self.specs[chart]
                base = self.base_fields[spec.base.name]
                gens = [prolong(X, k, spec) for X in base]
            else:
                if k != 0:
                    raise ScenarioError(f"chart {chart} carries no jets; order must be 0")
                gens = self.base_fields[chart]
            self._alg_cache[key] = LieAlgebra(gens, list(self.names))
        return self._alg_cache[key]

    # -- cocycles
    def degree(self) -> int:
        if self.opts.degree is not None:
            return self.opts.degree
        return self.data.get("cocycles", {}).get("degree", 3)

    def chart_config(self, chart: str) -> dict:
        return self.data.get("cocycles", {}).get("charts", {}).get(chart, {})

    def space(self, chart: str) -> CocycleSpace:
        if chart not in self._spaces:
            cfg = self.chart_config(chart)
            idx = self.chart_names().index(chart)
            if "basis" in cfg:
                self._spaces[chart] = self._explicit_space(chart, cfg, self.work_order)
            else:
                g = self.algebra(chart)
                anchors = {k: (v[0], v[1]) for k, v in cfg.get("anchors", {}).items()} or None
                try:
                    self._spaces[chart] = solve_cocycle_space(g, self.degree(), names=cfg.get("names"),
                                                              anchors=anchors, chart_index=idx)
                except ValueError as e:
                    raise ScenarioError(f"cocycles.charts.{chart}: {e}") from None
        return self._spaces[chart]

    def _explicit_space(self, chart: str, cfg: dict, order: int) -> CocycleSpace:
        g = self.algebra(chart, order)
        basis = []
        for i, item in enumerate(cfg["basis"]):
            where = f"cocycles.charts.{chart}.basis[{i}]"
            if "divergence" in item:
                base = self.specs[chart].base if chart in self.specs else self.work_charts[chart]
                for n in item["divergence"]:
                    if n not in base.table:
                        raise ScenarioError(f"{where}: unknown coordinate {n!r}")
                dens = self.expr(base, item.get("density", "1"), f"{where}.density")
                omega = VolumeForm.standard(base, item["divergence"], dens)
                basis.append(WeightCocycle.fixed(g.chart, [divergence(X, omega) for X in g.generators]))
            else:
                if len(item["values"]) != g.dim:
                    raise ScenarioError(f"{where}: one value per generator required")
                basis.append(WeightCocycle.fixed(g.chart, [self.expr(g.chart, v, where) for v in item["values"]]))
        names = cfg.get("names") or [f"C{k}" for k in range(len(basis))]
        if len(names) != len(basis):
            raise ScenarioError(f"cocycles.charts.{chart}.names: one name per basis cocycle required")
        return CocycleSpace(g, 0, basis, list(names), [], len(basis))

    def basis_at(self, chart: str, order: int) -> List[WeightCocycle]:
        """Cocycle basis of the chart re-read on the order-``order`` jet chart."""
        cfg = self.chart_config(chart)
        if "basis" in cfg:
            return self._explicit_space(chart, cfg, order).basis
        sp = self.space(chart)
        target = self.algebra(chart, order).chart
        if order < self.work_order:
            raise ScenarioError("requested order is below the order the cocycles were computed on")
        return [WeightCocycle.fixed(target, b.values) for b in sp.basis]

    def coordinates(self, chart: str, lam: WeightCocycle, order: int) -> List:
        cfg = self.chart_config(chart)
        if "basis" in cfg:
            g = self.algebra(chart, order)
            return weight_coordinates(g, self._explicit_space(chart, cfg, order).basis, lam, None)
        sp = self.space(chart)
        dim = sp.chart.dim
        if any(v >= dim for val in lam.values for v in val.variables()):
            raise NotInSpan("weight depends on coordinates above the order of the cocycle space")
        return sp.coordinates(WeightCocycle.fixed(sp.chart, lam.values))

    def param_names(self, chart: str) -> List[str]:
        cfg = self.chart_config(chart)
        if "basis" in cfg:
            return list(cfg.get("names") or [f"C{k}" for k in range(len(cfg["basis"]))])
        return self.space(chart).names

    def compatibility(self):
        charts = self.chart_names()
        spaces = {c: self.space(c) for c in charts}
        algs = {c: self.algebra(c) for c in charts}
        cfg = self.data.get("cocycles", {})
        res = compatibility_solve(self.work_atlas, algs, spaces, gauge_degree=cfg.get("gauge_degree"),
                                  prefer=cfg.get("prefer", ()))
        return res, algs, spaces


# ---------------------------------------------------------------- tasks

def _weight_dict(names: Sequence[str], lam: WeightCocycle) -> Dict[str, str]:
    return {n: v for n, v in zip(names, lam.render_values())}


def _task_order(model: Model, task: dict) -> int:
    if model.opts.order is not None:
        return model.opts.order
    return task.get("order", model.work_order)


def _divisor(model: Model, d: dict, order_default: Optional[int] = None):
    chart = d.get("chart", model.default_chart())
    order = model.opts.order if model.opts.order is not None else d.get("order", order_default or model.work_order)
    g = model.algebra(chart, order)
    f = model.expr(g.chart, d["expression"], f"divisor {d.get('name', d['expression'])}")
    spec = model.spec(chart, order)
    lam = divisor_weight(g, f)
    report = {"chart": chart, "order": order, "weight": _weight_dict(model.names, lam)}
    if d.get("name"):
        report["name"] = d["name"]
    if spec is not None:
        o, w = weight_order(lam, spec)
        report["weight_order"] = {"order": o, "weighted_degree": w}
        check_weight_order(lam, spec)
    coords = model.coordinates(chart, lam, order)
    report["coordinates"] = {n: num(c) for n, c in zip(model.param_names(chart), coords)}
    if "expect" in d:
        exp = [parse_rational(x) for x in d["expect"]]
        if exp != list(coords):
            raise CheckFailed(f"weight of {d.get('name', d['expression'])}: expected "
                              f"{[num(x) for x in exp]}, computed {[num(x) for x in coords]}")
    return report, coords, lam


def task_verify(model: Model, task: dict) -> dict:
    out: Dict[str, object] = {}
    model.base_atlas.check()
    model.work_atlas.check()
    out["atlas"] = "ok"
    if not model.ode and model.expected_mismatch:
        raise CheckFailed("; ".join(model.expected_mismatch))
    out["declared_fields"] = "ok"
    closure = {}
    if model.ode:
        closure["ode"] = "truncated family; closure not checked"
    else:
        for c in model.chart_names():
            g = model.algebra(c)
            g.verified()
            closure[c] = "ok"
    out["closure"] = closure
    return out


def task_cocycles(model: Model, task: dict) -> dict:
    out = {}
    for c in model.chart_names():
        sp = model.space(c)
        g = model.algebra(c)
        lam = sp.general()
        bad = cocycle_check(g, lam) if sp.dim else []
        if bad:
            raise CheckFailed(f"basis cocycle on {c} violates the cocycle condition at {bad[0][:2]}")
        out[c] = {
            "dim": sp.dim,
            "ansatz_degree": sp.degree,
            "parameters": list(sp.names),
            "representative": _weight_dict(model.names, lam),
        }
    return {"charts": out, "note": "dimensions are relative to the polynomial ansatz"}


def task_pic(model: Model, task: dict) -> dict:
    res, algs, spaces = model.compatibility()
    pic = pic_assemble(res)
    rng = random.Random(model.opts.seed)
    for _ in range(5):
        coords = {c: rng.randint(-4, 4) for c in res.coordinates}
        if not verify_compatibility(model.work_atlas, algs, spaces, res, coords):
            raise CheckFailed(f"compatibility fails at {coords}")
    out = pic.as_dict()
    out["free_coordinates"] = list(res.coordinates)
    gauge = {}
    for chart, items in res.gauge.items():
        if items:
            tab = model.work_charts[chart]
            gauge[chart] = {coord: tab.render(p) for p, coord in items}
    out["gauge"] = gauge
    out["verified_specializations"] = 5
    return out


def task_divisor_weight(model: Model, task: dict) -> dict:
    rep, _, _ = _divisor(model, task["divisor"])
    return rep


def task_glue(model: Model, task: dict) -> dict:
    params = task.get("parameters", {})
    atlas = model.work_atlas
    funcs = {}
    for chart, text in task["functions"].items():
        if chart not in atlas.charts:
            raise ScenarioError(f"glue: unknown chart {chart!r}")
        funcs[chart] = model.expr(atlas.charts[chart], _subst_params(text, params), f"glue.functions.{chart}")
    missing = set(atlas.charts) - set(funcs)
    if missing:
        raise ScenarioError(f"glue: no function given on {', '.join(sorted(missing))}")
    data = DivisorData(funcs)
    exps = glue_divisor_check(atlas, data)
    out = {"parameters": params, "transitions": {}}
    for (a, b), items in exps.items():
        tab = atlas.charts[a]
        parts = [f"({tab.render(u)})^({e})" for u, e in items if e]
        out["transitions"][f"{a}/{b}"] = " * ".join(parts) if parts else "1"
    weights = {}
    for c, f in funcs.items():
        lam = divisor_weight(model.algebra(c), f)
        weights[c] = _weight_dict(model.names, lam)
    out["weights"] = weights
    return out


def task_search(model: Model, task: dict) -> dict:
    chart = task.get("chart", model.default_chart())
    order = _task_order(model, task)
    g = model.algebra(chart, order)
    basis = model.basis_at(chart, order)
    if model.opts.grid is not None:
        grid = model.opts.grid
    else:
        gd = task.get("grid", {})
        grid = GridSpec(tuple(gd.get("denominators", (1, 2, 3, 6))), gd.get("bound", 6))
    tab = g.chart.table
    spec = task.get("variables")
    if spec is None:
        variables = list(range(g.chart.dim))
    elif isinstance(spec, dict):
        excl = set(spec["exclude"])
        for n in excl:
            if n not in tab:
                raise ScenarioError(f"search.variables: unknown coordinate {n!r}")
        variables = [i for i, n in enumerate(tab.names) if n not in excl]
    else:
        for n in spec:
            if n not in tab:
                raise ScenarioError(f"search.variables: unknown coordinate {n!r}")
        variables = [tab.index(n) for n in spec]
    hits = invariant_search(g, basis, grid, task["degree"], variables=variables, order=order,
                            primitive_only=task.get("primitive_only", False), jobs=model.opts.jobs)
    names = model.param_names(chart)
    out_hits = []
    for h in hits:
        if not verify_hit(g, basis, h):
            raise CheckFailed(f"hit at {h.weight} fails re-verification")
        out_hits.append({"weight": {n: num(c) for n, c in zip(names, h.weight)},
                         "polynomials": h.render(tab)})
    return {
        "chart": chart, "order": order, "degree": task["degree"],
        "grid": {"denominators": list(grid.denominators), "bound": grid.bound},
        "primitive_only": task.get("primitive_only", False),
        "variables": [tab.name(v) for v in variables],
        "hits": out_hits,
    }


def task_lattice(model: Model, task: dict) -> dict:
    out: Dict[str, object] = {}
    if "divisors" in task:
        names, weights, lams = [], [], []
        reports = []
        for i, d in enumerate(task["divisors"]):
            rep, coords, lam = _divisor(model, d)
            names.append(d.get("name", f"f{i + 1}"))
            weights.append(coords)
            lams.append(rep)
            reports.append(rep)
        out["divisors"] = reports
    else:
        weights = [[parse_rational(x) for x in w] for w in task["weights"]]
        names = [f"f{i + 1}" for i in range(len(weights))]
    wl = weight_lattice_and_kernels(weights)
    out["weights"] = {n: [num(x) for x in w] for n, w in zip(names, weights)}
    out["lattice"] = [[num(Fraction(x, wl.scale)) for x in row] for row in wl.lattice.basis]
    kern = []
    for vec in wl.kernel.basis:
        v = normalize_relation(vec)
        kern.append({"exponents": v, "invariant": render_monomial(names, v)})
    out["kernel"] = kern
    if "divisors" in task and kern:
        # weight additivity: Σ e_i λ_i = 0 on every generator
        full = []
        for d in task["divisors"]:
            chart = d.get("chart", model.default_chart())
            order = max(x.get("order", model.work_order) for x in task["divisors"])
            g = model.algebra(chart, order)
            f = model.expr(g.chart, d["expression"], "lattice divisor")
            full.append(divisor_weight(g, f))
        out["kernel_invariance_verified"] = all(monomial_invariant_check(full, k["exponents"]) for k in kern)
    return out


def task_transversal(model: Model, task: dict) -> dict:
    chart = task.get("chart", model.default_chart())
    sp = model.space(chart)
    vals = {k: parse_rational(v) for k, v in task["values"].items()}
    unknown = set(vals) - set(sp.names)
    if unknown:
        raise ScenarioError(f"transversal: unknown parameters {sorted(unknown)}")
    lam = sp.general().specialize(vals)
    ok = transversality_check(model.algebra(chart), lam, seed=model.opts.seed)
    return {"chart": chart, "values": {k: num(v) for k, v in vals.items()}, "transversal": ok,
            "note": "necessary condition for an invariant divisor, not sufficient"}


def task_orbit_rank(model: Model, task: dict) -> dict:
    chart = task.get("chart", model.default_chart())
    order = _task_order(model, task)
    g = model.algebra(chart, order)
    avoid = [model.expr(g.chart, a, "orbit-rank.avoid") for a in task.get("avoid", [])]
    r = generic_orbit_rank(g.generators, seed=model.opts.seed, avoid=avoid)
    return {"chart": chart, "order": order, "rank": r, "dimension": g.chart.dim}


def task_isotropy(model: Model, task: dict) -> dict:
    chart = task.get("chart", model.default_chart())
    g = model.algebra(chart)
    pt = {k: parse_rational(v) for k, v in task["point"].items()}
    for k in pt:
        if k not in g.chart.table:
            raise ScenarioError(f"isotropy.point: unknown coordinate {k!r}")
    res = isotropy_analysis(g, pt)
    return {"chart": chart, "point": {k: num(v) for k, v in pt.items()}, "isotropy_dim": res.dim,
            "derived_dim": res.derived_dim, "solvable": res.solvable, "has_codim1_ideal": res.has_codim1_ideal}


TASKS = {
    "verify": task_verify,
    "cocycles": task_cocycles,
    "pic": task_pic,
    "divisor-weight": task_divisor_weight,
    "glue": task_glue,
    "search": task_search,
    "lattice": task_lattice,
    "transversal": task_transversal,
    "orbit-rank": task_orbit_rank,
    "isotropy": task_isotropy,
}


def run(data: dict, options: Optional[Options] = None) -> dict:
    """Run every task; negative mathematical outcomes are recorded, not raised."""
    options = options or Options()
    model = Model(data, options)
    results = []
    status = "ok"
    for i, task in enumerate(data["tasks"]):
        entry: Dict[str, object] = {"task": task["kind"]}
        if task.get("label"):
            entry["label"] = task["label"]
        if task.get("heavy") and options.skip_heavy:
            entry["status"] = "skipped"
            results.append(entry)
            continue
        try:
            entry.update(TASKS[task["kind"]](model, task))
            entry["status"] = "ok"
        except NEGATIVE as e:
            entry["status"] = "negative"
            entry["reason"] = f"{type(e).__name__}: {e}"
            status = "negative"
        except (AtlasError, PointNotInDomain) as e:
            entry["status"] = "negative"
            entry["reason"] = f"{type(e).__name__}: {e}"
            status = "negative"
        results.append(entry)
    provenance = {
        "tool": "relinv", "version": __version__, "ansatz_degree": model.degree(), "seed": options.seed,
        "jobs_do_not_affect_output": True,
    }
    if options.order is not None:
        provenance["order_override"] = options.order
    if options.grid is not None:
        provenance["grid_override"] = {"denominators": list(options.grid.denominators), "bound": options.grid.bound}
    return {"scenario": data["name"], "status": status, "provenance": provenance, "results": results}
