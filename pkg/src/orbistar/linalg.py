"""Exact sparse linear algebra over any field-like scalar type.

Scalars must support ``+``, ``-``, ``*``, ``/``, ``bool`` (nonzero test)
and equality.  Works with ``Fraction``, ``Cyclotomic`` and unit-pivoted
``HbarSeries`` entries alike.  Rows are dicts mapping column keys to
nonzero scalars; column keys must be hashable and mutually orderable.
"""

from __future__ import annotations

from typing import Hashable, Iterable

Row = dict


def row_sub_scaled(target: Row, factor, source: Row) -> Row:
    """target - factor * source, dropping zero entries."""
    out = dict(target)
    for col, val in source.items():
        delta = factor * val
        cur = out.get(col)
        new = -delta if cur is None else cur - delta
        if new:
            out[col] = new
        else:
            out.pop(col, None)
    return out


class Echelon:
    """Incremental row echelon form with unit-normalized pivots."""

    def __init__(self):
        self.pivots: dict[Hashable, Row] = {}

    def reduce(self, row: Row) -> Row:
        for col in sorted(row):
            if col not in row:
                continue
            piv = self.pivots.get(col)
            if piv is not None:
                row = row_sub_scaled(row, row[col], piv)
        return row

    def insert(self, row: Row) -> bool:
        """Reduce and insert; returns True if the row was independent."""
        row = self.reduce(row)
        if not row:
            return False
        col = min(row)
        lead = row[col]
        row = {c: v / lead for c, v in row.items()}
        for pcol, prow in self.pivots.items():
            if col in prow:
                self.pivots[pcol] = row_sub_scaled(prow, prow[col], row)
        self.pivots[col] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, row: Row) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Row]) -> int:
    ech = Echelon()
    for row in rows:
        ech.insert(row)
    return ech.rank


def nullity(rows: list[Row], ncols: int) -> int:
    return ncols - rank(rows)


def kernel_basis(rows: list[Row], columns: list[Hashable], one) -> list[Row]:
    """Basis of {x : row . x = 0 for every row}, as dicts over columns.

    ``one`` is the multiplicative unit of the scalar type.
    """
    ech = Echelon()
    for row in rows:
        ech.insert(row)
    pivot_cols = set(ech.pivots)
    basis = []
    for f in columns:
        if f in pivot_cols:
            continue
        vec = {f: one}
        for pcol, prow in ech.pivots.items():
            if f in prow:
                vec[pcol] = -prow[f]
        basis.append(vec)
    return basis


def independent_subset(rows: list[Row]) -> list[int]:
    """Indices of a maximal linearly independent subset, in order."""
    ech = Echelon()
    picked = []
    for i, row in enumerate(rows):
        if ech.insert(row):
            picked.append(i)
    return picked


def invert_dense(matrix: list[list], zero, one) -> list[list]:
    """Inverse of a small dense square matrix by Gauss-Jordan."""
    n = len(matrix)
    aug = [list(matrix[i]) + [one if i == j else zero for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = one / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_mul(a: list[list], b: list[list], zero) -> list[list]:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        out_row = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            out_row.append(acc)
        out.append(out_row)
    return out


def mat_vec(a: list[list], v: list, zero) -> list:
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out
