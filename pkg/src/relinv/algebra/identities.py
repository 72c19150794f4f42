"""Turn identities between rational functions into linear systems over Q.

Given unknown scalars c_j and vectors of rational functions col_j, the
identity  sum_j c_j * col_j == 0  holds iff, slot by slot, the numerator
over a common denominator vanishes coefficient-wise.
"""
from __future__ import annotations

from typing import Dict, List, Sequence

from .poly import Poly, poly_exact_divide
from .ratfunc import RatFunc


def _common_denominator(dens: Sequence[Poly]) -> Poly:
    distinct: List[Poly] = []
    for d in dens:
        if d.is_constant():
            continue
        if any(d == e for e in distinct):
            continue
        distinct.append(d)
    # drop denominators that divide another one
    keep = []
    for i, d in enumerate(distinct):
        dominated = False
        for j, e in enumerate(distinct):
            if i != j and e.degree() > d.degree():
                try:
                    poly_exact_divide(e, d)
                    dominated = True
                    break
                except Exception:
                    pass
        if not dominated:
            keep.append(d)
    out = Poly.const(1)
    for d in keep:
        out = out * d
    return out


def identity_rows(columns: Sequence[Sequence[RatFunc]]) -> List[Dict[int, object]]:
    """Sparse rows (column index -> coefficient) of the linear system."""
    if not columns:
        return []
    nslots = len(columns[0])
    rows: List[Dict[int, object]] = []
    for s in range(nslots):
        entries = [(j, col[s]) for j, col in enumerate(columns) if not col[s].is_zero()]
        if not entries:
            continue
        if all(r.is_poly() for _, r in entries):
            polys = [(j, r.num) for j, r in entries]
        else:
            L = _common_denominator([r.den for _, r in entries])
            polys = []
            for j, r in entries:
                mult = L if r.is_poly() else poly_exact_divide(L, r.den)
                polys.append((j, r.num * mult))
        by_mono: Dict = {}
        for j, p in polys:
            for m, c in p.terms.items():
                by_mono.setdefault(m, {})[j] = c
        rows.extend(by_mono.values())
    return rows
