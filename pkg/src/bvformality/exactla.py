"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``{index: Fraction}`` without stored zeros.  Matrices
are :class:`SparseMatrix` objects holding one such dict per nonzero row.

The reduced row echelon form of a matrix is unique, so ranks, pivot columns
and kernel bases returned here do not depend on elimination order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Vector = Dict[int, Fraction]

__all__ = [
    "Vector",
    "SparseMatrix",
    "Reduction",
    "Echelon",
    "reduce",
    "rank",
    "solve",
    "add_scaled",
    "scale",
    "clean",
]


def clean(v: Mapping) -> Vector:
    """Drop zeros and coerce coefficients to Fraction."""
    return {k: Fraction(c) for k, c in v.items() if c}


def add_scaled(target: dict, v: Mapping, c=1) -> dict:
    """In place ``target += c * v`` keeping the no-stored-zeros invariant."""
    if not c:
        return target
    for k, x in v.items():
        y = target.get(k, 0) + c * x
        if y:
            target[k] = y
        else:
            target.pop(k, None)
    return target


def scale(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class SparseMatrix:
    """Immutable sparse matrix with rational entries."""

    __slots__ = ("_nrows", "_ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix shape")
        rows: Dict[int, Vector] = {}
        for (r, c), x in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            if x:
                rows.setdefault(r, {})[c] = Fraction(x)
        self._nrows = nrows
        self._ncols = ncols
        self._rows = rows

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, x in enumerate(row):
                if x:
                    entries[i, j] = x
        return cls(nrows, ncols, entries)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x:
                    entries[i, j] = x
        return cls(nrows, len(columns), entries)

    @classmethod
    def from_rows(cls, ncols: int, rows: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        entries = {}
        for i, row in enumerate(rows):
            for j, x in row.items():
                if x:
                    entries[i, j] = x
        return cls(len(rows), ncols, entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return self._nrows, self._ncols

    @property
    def row_count(self) -> int:
        return self._nrows

    @property
    def col_count(self) -> int:
        return self._ncols

    def row(self, i: int) -> Vector:
        return dict(self._rows.get(i, {}))

    def rows(self) -> List[Vector]:
        return [dict(self._rows.get(i, {})) for i in range(self._nrows)]

    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return {(r, c): x for r, row in self._rows.items() for c, x in row.items()}

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def __getitem__(self, rc: Tuple[int, int]) -> Fraction:
        r, c = rc
        return self._rows.get(r, {}).get(c, Fraction(0))

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self._ncols, self._nrows, {(c, r): x for (r, c), x in self.entries().items()})

    def matvec(self, v: Mapping[int, object]) -> Vector:
        """Product with a sparse column vector."""
        out: Vector = {}
        for r, row in self._rows.items():
            s = 0
            for c, x in row.items():
                y = v.get(c)
                if y:
                    s += x * y
            if s:
                out[r] = Fraction(s)
        return out

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self._ncols != other._nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        entries: Dict[Tuple[int, int], Fraction] = {}
        for r, row in self._rows.items():
            acc: dict = {}
            for k, x in row.items():
                add_scaled(acc, other._rows.get(k, {}), x)
            for c, y in acc.items():
                entries[r, c] = y
        return SparseMatrix(self._nrows, other._ncols, entries)

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self) -> List[List[Fraction]]:
        return [[self[i, j] for j in range(self._ncols)] for i in range(self._nrows)]

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries().items())))

    def __repr__(self) -> str:
        return f"SparseMatrix({self._nrows}x{self._ncols}, nnz={self.nnz()})"


@dataclass(frozen=True)
class Reduction:
    rank: int
    kernel_basis: Tuple[Vector, ...]
    pivot_cols: Tuple[int, ...]
    rref_rows: Tuple[Vector, ...]


def _rref(rows: Iterable[Mapping[int, object]]) -> Dict[int, Vector]:
    """Reduced row echelon form, returned as ``{pivot_col: row}`` with row[pivot] == 1."""
    piv: Dict[int, Vector] = {}
    for raw in rows:
        v = {k: Fraction(x) for k, x in raw.items() if x}
        # forward-reduce against existing pivots, smallest column first
        while v:
            hits = [c for c in v if c in piv]
            if not hits:
                break
            c = min(hits)
            add_scaled(v, piv[c], -v[c])
        if not v:
            continue
        p = min(v)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        # back-substitute the new pivot into existing rows
        for q, row in piv.items():
            x = row.get(p)
            if x:
                add_scaled(row, v, -x)
        piv[p] = v
    return piv


def reduce(m: SparseMatrix) -> Reduction:
    """Rank, kernel basis and pivot columns of ``m``.

    The kernel basis has one vector per free column ``f`` with coordinate 1
    at ``f`` and zeros at the other free columns.
    """
    piv = _rref(m.rows())
    pivots = tuple(sorted(piv))
    pivset = set(pivots)
    kernel = []
    for f in range(m.col_count):
        if f in pivset:
            continue
        v: Vector = {f: Fraction(1)}
        for p in pivots:
            x = piv[p].get(f)
            if x:
                v[p] = -x
        kernel.append(v)
    return Reduction(len(pivots), tuple(kernel), pivots, tuple(piv[p] for p in pivots))


def rank(m: SparseMatrix) -> int:
    return len(Echelon.from_vectors(m.rows()))


def solve(m: SparseMatrix, b: Sequence) -> Optional[List[Fraction]]:
    """One solution of ``m x = b`` with free variables zero, or None."""
    if isinstance(b, Mapping):
        bv = dict(b)
        if any(not (0 <= i < m.row_count) for i in bv):
            raise ValueError("right-hand side index out of range")
    else:
        if len(b) != m.row_count:
            raise ValueError(f"right-hand side has length {len(b)}, expected {m.row_count}")
        bv = {i: x for i, x in enumerate(b) if x}
    n = m.col_count
    aug = []
    for i in range(m.row_count):
        row = m.row(i)
        if bv.get(i):
            row[n] = Fraction(bv[i])
        aug.append(row)
    piv = _rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for p, row in piv.items():
        x[p] = row.get(n, Fraction(0))
    return x


class Echelon:
    """Incrementally built echelon basis of a subspace.

    With ``leading="max"`` every stored row is normalised so that its largest
    column has coefficient 1; :meth:`reduce` then expresses a vector modulo
    the subspace in terms of non-pivot columns only, which makes the
    non-pivot columns the greedy (first-independent) complement basis.
    """

    def __init__(self, leading: str = "max"):
        if leading not in ("max", "min"):
            raise ValueError("leading must be 'max' or 'min'")
        self.leading = leading
        self._rows: Dict[int, Vector] = {}

    @classmethod
    def from_vectors(cls, vectors: Iterable[Mapping[int, object]], leading: str = "max") -> "Echelon":
        e = cls(leading)
        for v in vectors:
            e.add(v)
        return e

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def _lead(self, v: Mapping[int, object]) -> int:
        return max(v) if self.leading == "max" else min(v)

    def reduce(self, v: Mapping[int, object]) -> Vector:
        """Canonical representative of ``v`` modulo the span (no pivot columns)."""
        v = {k: Fraction(x) for k, x in v.items() if x}
        rows = self._rows
        sgn = -1 if self.leading == "max" else 1
        heap = [sgn * c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            c = sgn * heapq.heappop(heap)
            x = v.get(c)
            if not x:
                continue
            for k, y in rows[c].items():
                z = v.get(k, 0) - x * y
                if z:
                    if k not in v and k in rows:
                        heapq.heappush(heap, sgn * k)
                    v[k] = z
                else:
                    v.pop(k, None)
        return v

    def add(self, v: Mapping[int, object]) -> bool:
        """Add ``v`` to the span; return True iff it was independent."""
        r = self.reduce(v)
        if not r:
            return False
        p = self._lead(r)
        inv = 1 / r[p]
        self._rows[p] = {k: x * inv for k, x in r.items()}
        return True

    def contains(self, v: Mapping[int, object]) -> bool:
        return not self.reduce(v)
