"""Exact sparse linear algebra over F_p.

Vectors are dicts ``{index: coefficient}`` with coefficients in ``[1, p)``;
absent keys are zero.  Matrices are lists of such dicts, one per column.
Elimination always pivots on the largest surviving row index, so callers can
make elimination cheap by numbering rows so that "leading" terms come last.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..errors import DimensionMismatch

SparseVec = dict


def axpy(y: dict, a: int, x: Mapping[int, int], p: int) -> None:
    """In place ``y += a * x`` mod p."""
    if a % p == 0:
        return
    for k, v in x.items():
        c = (y.get(k, 0) + a * v) % p
        if c:
            y[k] = c
        else:
            y.pop(k, None)


def clean(vec: Mapping, p: int) -> dict:
    out = {}
    for k, v in vec.items():
        v %= p
        if v:
            out[k] = v
    return out


def columns_from_rows(rows: Sequence[Sequence[int]], p: int) -> tuple[list[dict], int]:
    """Dense row-major matrix -> (sparse columns, number of rows)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    cols: list[dict] = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise DimensionMismatch("ragged matrix")
        for j, a in enumerate(row):
            a %= p
            if a:
                cols[j][i] = a
    return cols, nrows


class Span:
    """Incrementally built subspace of F_p^n in column-echelon form."""

    def __init__(self, p: int, track: bool = False):
        self.p = p
        self.track = track
        self.pivots: dict = {}  # pivot index -> vector with pivot coeff 1
        self.combos: dict = {}  # pivot index -> combination of inserted vectors
        self.kernel_combos: list = []
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping) -> dict:
        """Fully reduced residue of ``vec`` modulo the span."""
        p = self.p
        v = dict(vec)
        out = {}
        pivots = self.pivots
        while v:
            r = max(v)
            pv = pivots.get(r)
            if pv is None:
                out[r] = v.pop(r)
            else:
                axpy(v, -v[r], pv, p)
        return out

    def _reduce_lead(self, vec: Mapping, combo: dict | None) -> dict:
        # Reduce only until the leading entry is not a pivot.
        p = self.p
        v = dict(vec)
        pivots = self.pivots
        while v:
            r = max(v)
            pv = pivots.get(r)
            if pv is None:
                return v
            f = v[r]
            axpy(v, -f, pv, p)
            if combo is not None:
                axpy(combo, -f, self.combos[r], p)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert a vector; return True iff it enlarged the span."""
        combo = {self.count: 1} if self.track else None
        self.count += 1
        v = self._reduce_lead(vec, combo)
        if not v:
            if combo is not None:
                self.kernel_combos.append(combo)
            return False
        r = max(v)
        inv = pow(v[r], -1, self.p)
        if inv != 1:
            v = {k: c * inv % self.p for k, c in v.items()}
            if combo is not None:
                combo = {k: c * inv % self.p for k, c in combo.items()}
        self.pivots[r] = v
        if combo is not None:
            self.combos[r] = combo
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self._reduce_lead(vec, None)


def rank(columns: Iterable[Mapping], p: int, nrows: int | None = None) -> int:
    """Rank of a sparse column matrix; stops early once ``nrows`` is reached."""
    span = Span(p)
    for col in columns:
        span.add(col)
        if nrows is not None and span.rank >= nrows:
            break
    return span.rank


def rank_kernel(columns: Sequence[Mapping], nrows: int, p: int) -> tuple[int, list[list[int]]]:
    """Rank and a kernel basis of the matrix with the given sparse columns.

    Kernel vectors are returned densely (length = number of columns) and are
    normalized so that their last nonzero entry is 1.
    """
    ncols = len(columns)
    for col in columns:
        for r in col:
            if not 0 <= r < nrows:
                raise DimensionMismatch(f"row index {r} outside 0..{nrows - 1}")
    span = Span(p, track=True)
    for col in columns:
        span.add(clean(col, p))
    kernel = []
    for combo in span.kernel_combos:
        dense = [0] * ncols
        for j, c in combo.items():
            dense[j] = c % p
        kernel.append(dense)
    rk = span.rank
    assert rk + len(kernel) == ncols
    return rk, kernel


def mat_vec(columns: Sequence[Mapping], vec: Sequence[int], p: int) -> dict:
    out: dict = {}
    for j, a in enumerate(vec):
        if a % p:
            axpy(out, a, columns[j], p)
    return out
