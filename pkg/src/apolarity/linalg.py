"""Exact linear algebra over the rationals.

Dense routines (rref, kernel, inverse, det) work on lists of Fraction rows and
stay small.  RowSpan is the workhorse for graded ideal components: it keeps a
sparse integer row basis (denominators cleared, rows primitive) and supports
incremental insertion, reduction, and extraction of the canonical RREF.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Row = list[Fraction]
SparseRow = dict[int, int]


def rref(rows: list[Row]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot column list)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: list[Row]) -> int:
    return len(rref(rows)[0])


def kernel_basis(rows: list[Row], ncols: int) -> list[Row]:
    """Canonical kernel basis from the RREF: one vector per free column."""
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[free]
        basis.append(vec)
    return basis


def inverse(mat: list[Row]) -> list[Row] | None:
    """Matrix inverse, or None if singular."""
    n = len(mat)
    aug = [list(map(Fraction, mat[i])) + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def det(mat: list[Row]) -> Fraction:
    """Determinant by fraction Gaussian elimination."""
    n = len(mat)
    m = [list(map(Fraction, row)) for row in mat]
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c]), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            result = -result
        result *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def mat_vec(mat: list[Row], vec: Row) -> Row:
    return [sum(a * b for a, b in zip(row, vec)) for row in mat]


def solve(rows: list[Row], rhs: Row) -> Row | None:
    """One solution of rows * x = rhs (free variables set to 0), or None."""
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None  # inconsistent
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def _to_sparse_int(row) -> SparseRow:
    """Clear denominators and divide by content; accepts dense or sparse input."""
    if isinstance(row, dict):
        items = [(c, Fraction(v)) for c, v in row.items() if v]
    else:
        items = [(c, Fraction(v)) for c, v in enumerate(row) if v]
    if not items:
        return {}
    lcm = 1
    for _, v in items:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    ints = {c: int(v * lcm) for c, v in items}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {c: v // g for c, v in ints.items()}


class RowSpan:
    """Row space of sparse integer vectors with incremental insertion.

    Rows are kept forward-eliminated: at most one stored row leads at any
    column.  canonical_rows() back-substitutes to the unique RREF.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivot_rows: dict[int, SparseRow] = {}  # leading column -> row

    @property
    def dimension(self) -> int:
        return len(self._pivot_rows)

    def _eliminate(self, row: SparseRow) -> SparseRow:
        while row:
            lead = min(row)
            pivot = self._pivot_rows.get(lead)
            if pivot is None:
                return row
            a, b = pivot[lead], row[lead]
            new: SparseRow = {}
            for c in set(row) | set(pivot):
                v = a * row.get(c, 0) - b * pivot.get(c, 0)
                if v:
                    new[c] = v
            row = new
        return row

    @staticmethod
    def _primitive(row: SparseRow) -> SparseRow:
        g = 0
        for v in row.values():
            g = gcd(g, v)
        if g == 0:
            return row
        lead = min(row)
        if row[lead] < 0:
            g = -g
        return {c: v // g for c, v in row.items()}

    def reduce(self, row) -> SparseRow:
        """Residual of a row after elimination (primitive integer form)."""
        return self._primitive(self._eliminate(_to_sparse_int(row)))

    def contains(self, row) -> bool:
        return not self._eliminate(_to_sparse_int(row))

    def insert(self, row) -> SparseRow | None:
        """Insert a row; returns the primitive residual if it enlarged the
        span, else None."""
        residual = self.reduce(row)
        if not residual:
            return None
        self._pivot_rows[min(residual)] = residual
        return residual

    def canonical_rows(self) -> list[dict[int, Fraction]]:
        """The unique RREF of the span, rows ordered by pivot column."""
        order = sorted(self._pivot_rows)
        reduced: dict[int, SparseRow] = {}
        for lead in reversed(order):
            row = self._pivot_rows[lead]
            for other_lead in sorted(c for c in row if c != lead and c in reduced):
                pivot = reduced.get(other_lead)
                if pivot is None or other_lead not in row:
                    continue
                a, b = pivot[other_lead], row[other_lead]
                merged: SparseRow = {}
                for c in set(row) | set(pivot):
                    v = a * row.get(c, 0) - b * pivot.get(c, 0)
                    if v:
                        merged[c] = v
                row = merged
            reduced[lead] = self._primitive(row)
        out = []
        for lead in order:
            row = reduced[lead]
            scale = Fraction(1, row[lead])
            out.append({c: v * scale for c, v in sorted(row.items())})
        return out

    def pivot_columns(self) -> list[int]:
        return sorted(self._pivot_rows)

    def basis_rows(self) -> list[SparseRow]:
        """Current (forward-eliminated, primitive integer) basis rows."""
        return [self._pivot_rows[c] for c in sorted(self._pivot_rows)]
