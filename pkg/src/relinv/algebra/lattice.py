"""Integer lattices in row-style Hermite normal form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple


def _echelon(rows: List[List[int]], ncols: int, track: List[List[int]] | None = None):
    """Unimodular row reduction to echelon form, in place.

    Returns the list of pivot columns; rows past ``len(pivots)`` are zero on
    the first ``ncols`` columns.  When ``track`` is given the same row
    operations are applied to it.
    """
    r = 0
    pivots = []
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if rows[i][c] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(rows[i][c]))
            if i_min != r:
                rows[r], rows[i_min] = rows[i_min], rows[r]
                if track is not None:
                    track[r], track[i_min] = track[i_min], track[r]
            done = True
            p = rows[r][c]
            for i in range(r + 1, nrows):
                if rows[i][c]:
                    f = rows[i][c] // p
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                    if track is not None:
                        track[i] = [a - f * b for a, b in zip(track[i], track[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < nrows and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
                if track is not None:
                    track[r] = [-a for a in track[r]]
            p = rows[r][c]
            for i in range(r):
                f = rows[i][c] // p
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                    if track is not None:
                        track[i] = [a - f * b for a, b in zip(track[i], track[r])]
            pivots.append(c)
            r += 1
    return pivots


@dataclass(frozen=True)
class IntLattice:
    """A sublattice of Z^n given by its unique HNF basis."""

    basis: Tuple[Tuple[int, ...], ...]
    dim: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        v = list(v)
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        for row in self.basis:
            c = next(i for i, a in enumerate(row) if a)
            if v[c] % row[c]:
                return False
            f = v[c] // row[c]
            v = [a - f * b for a, b in zip(v, row)]
        return not any(v)

    def contains_lattice(self, other: "IntLattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def same_as(self, other: "IntLattice") -> bool:
        return self.contains_lattice(other) and other.contains_lattice(self)


def hnf_lattice(vectors: Sequence[Sequence[int]], dim: int | None = None) -> IntLattice:
    if dim is None:
        if not vectors:
            raise ValueError("dimension needed for an empty generating set")
        dim = len(vectors[0])
    rows = [[int(a) for a in v] for v in vectors]
    if any(len(r) != dim for r in rows):
        raise ValueError("vectors of unequal length")
    pivots = _echelon(rows, dim)
    return IntLattice(tuple(tuple(r) for r in rows[:len(pivots)]), dim)


def kernel_of(vectors: Sequence[Sequence[int]]) -> IntLattice:
    """Integer relations c with sum_i c_i * vectors[i] = 0."""
    k = len(vectors)
    if k == 0:
        return IntLattice((), 0)
    n = len(vectors[0])
    rows = [[int(a) for a in v] for v in vectors]
    track = [[int(i == j) for j in range(k)] for i in range(k)]
    pivots = _echelon(rows, n, track)
    kern = track[len(pivots):]
    return hnf_lattice(kern, k) if kern else IntLattice((), k)
