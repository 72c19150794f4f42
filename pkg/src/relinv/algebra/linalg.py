"""Exact linear algebra over Q.

Two entry points share one contract (canonical nullspace basis read off the
reduced row echelon form):

* :class:`QMatrix` is a small dense matrix eliminated with Bareiss'
  fraction-free scheme;
* :func:`sparse_nullspace` handles the large, sparse systems produced by the
  cocycle and invariant searches.  Rows are scaled to primitive integer
  vectors and combined by cross-multiplication, so no rational pivoting ever
  happens during the forward sweep.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple

from .poly import q

Vector = List  # list of int | Fraction


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple, ...]

    @classmethod
    def from_rows(cls, data: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        data = [tuple(q(x) for x in r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        return cls(len(data), cols, tuple(data))

    def __matmul__(self, v: Sequence) -> list:
        return [q(sum(a * b for a, b in zip(r, v))) for r in self.entries]

    def rref(self):
        """Reduced row echelon form and pivot columns (Bareiss forward sweep)."""
        m = [[_to_int_frac(x) for x in r] for r in self.entries]
        # clear denominators row-wise so Bareiss runs over Z
        m = [_int_row(r) for r in m]
        pivots: List[int] = []
        rows, cols = self.rows, self.cols
        prev = 1
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            p = next((i for i in range(r, rows) if m[i][c] != 0), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            piv = m[r][c]
            for i in range(r + 1, rows):
                a = m[i][c]
                m[i] = [(piv * m[i][j] - a * m[r][j]) // prev for j in range(cols)]
            prev = piv
            pivots.append(c)
            r += 1
        # back substitution over Q
        red = [[Fraction(x) for x in row] for row in m[:len(pivots)]]
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            pv = red[i][c]
            red[i] = [x / pv for x in red[i]]
            for k in range(i):
                f = red[k][c]
                if f:
                    red[k] = [a - f * b for a, b in zip(red[k], red[i])]
        return [[q(x) for x in row] for row in red], pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> List[list]:
        red, pivots = self.rref()
        return _null_from_rref({p: row for p, row in zip(pivots, red)}, self.cols, dense=True)


def _to_int_frac(x):
    return x if isinstance(x, (int, Fraction)) else Fraction(x)


def _int_row(row):
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in row]


def nullspace(M: QMatrix) -> List[list]:
    return M.nullspace()


def _null_from_rref(prows: Dict[int, object], ncols: int, dense: bool) -> List[list]:
    basis = []
    pivset = set(prows)
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for p, row in prows.items():
            val = row[f] if dense else row.get(f, 0)
            if val:
                v[p] = q(-val)
        basis.append(v)
    return basis


# ---------------------------------------------------------------- sparse

SparseRow = Dict[int, object]


def _primitive(row: SparseRow) -> Dict[int, int]:
    den = 1
    mixed = False
    for x in row.values():
        if type(x) is not int:
            mixed = True
            d = x.denominator
            if d != 1:
                den = den * d // gcd(den, d)
    if mixed:
        row = {k: int(v * den) for k, v in row.items()}
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class SparseEchelon:
    """Incremental fraction-free echelon form of integer rows.

    Rows can be added one at a time; ``rank`` and ``nullspace`` are available
    at any point.  Useful when a system is streamed equation by equation.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: Dict[int, Dict[int, int]] = {}

    def add(self, row: SparseRow) -> bool:
        """Insert a row; return True if it increased the rank."""
        row = {k: v for k, v in row.items() if v != 0}
        if not row:
            return False
        row = _primitive(row)
        pivots = self.pivots
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = row
                return True
            a, b = prow[c], row[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in row.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduced(self) -> Dict[int, Dict[int, object]]:
        """Full RREF as {pivot column: row with pivot entry 1}."""
        cols = sorted(self.pivots, reverse=True)
        red: Dict[int, Dict[int, object]] = {}
        for c in cols:
            row = dict(self.pivots[c])
            # eliminate later pivot columns (already reduced)
            for k in sorted([k for k in row if k in red and k != c]):
                f = row.get(k)
                if not f:
                    continue
                pk = red[k]
                # row = row - f/1 * pk, but keep integer: row*1 since pk pivot is 1 in Q
                for kk, vv in pk.items():
                    s = row.get(kk, 0) - f * vv
                    if s:
                        row[kk] = s
                    else:
                        row.pop(kk, None)
            pv = row[c]
            red[c] = {k: q(Fraction(v) / pv) if type(v) is int else q(v / pv) for k, v in row.items()}
        return red

    def nullspace(self) -> List[list]:
        return _null_from_rref(self.reduced(), self.ncols, dense=False)


def sparse_nullspace(rows: Iterable[SparseRow], ncols: int) -> List[list]:
    """Canonical nullspace basis of a sparse rational system."""
    ech = SparseEchelon(ncols)
    for r in rows:
        ech.add(r)
    return ech.nullspace()


def sparse_rank(rows: Iterable[SparseRow], ncols: int) -> int:
    ech = SparseEchelon(ncols)
    for r in rows:
        ech.add(r)
    return ech.rank


def rref_rows(vectors: Sequence[Sequence], ncols: int):
    """Row-reduce dense vectors; returns (reduced rows, pivot columns)."""
    ech = SparseEchelon(ncols)
    for v in vectors:
        ech.add({i: x for i, x in enumerate(v) if x != 0})
    red = ech.reduced()
    pivots = sorted(red)
    out = []
    for p in pivots:
        row = [0] * ncols
        for k, v in red[p].items():
            row[k] = v
        out.append(row)
    return out, pivots


def solve_affine(rows: Sequence[SparseRow], rhs: Sequence, ncols: int):
    """One solution of A x = b (free variables set to 0) or None."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b != 0:
            row[ncols] = -q(b)
        aug.append(row)
    ech = SparseEchelon(ncols + 1)
    for r in aug:
        ech.add(r)
    red = ech.reduced()
    if ncols in red:
        return None
    x = [0] * ncols
    for p, row in red.items():
        # row: x_p + sum(...) + row[ncols]*1 = 0 with free vars = 0
        x[p] = q(-row.get(ncols, 0))
    return x
