"""Exact linear algebra over the field of chart scalars.

Matrices are plain lists of rows of :class:`Scalar`.  Elimination picks the
pivot of lowest complexity (total degree, then term count) among all
remaining entries to keep expression swell down.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import SingularMatrix
from .symcore import Chart, Scalar

Matrix = list[list[Scalar]]


def zeros(chart: Chart, nrows: int, ncols: int) -> Matrix:
    z = chart.zero()
    return [[z] * ncols for _ in range(nrows)]


def identity(chart: Chart, n: int) -> Matrix:
    m = zeros(chart, n, n)
    one = chart.one()
    for k in range(n):
        m[k][k] = one
    return m


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = None
            for x, y in zip(row, col):
                if x and y:
                    acc = x * y if acc is None else acc + x * y
            new.append(acc if acc is not None else row[0].chart.zero())
        out.append(new)
    return out


def matvec(a: Matrix, v: list[Scalar]) -> list[Scalar]:
    return [row[0] for row in matmul(a, [[x] for x in v])]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


@dataclass
class Pivot:
    col: int
    source: int          # index of the original row that was promoted
    row: list[Scalar]    # reduced row, 1 at ``col`` and 0 at every other pivot column
    combo: list[Scalar]  # row expressed in the original rows


@dataclass
class Echelon:
    pivots: list[Pivot]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def pivot_cols(self) -> list[int]:
        return [p.col for p in self.pivots]

    @property
    def pivot_rows(self) -> list[int]:
        return [p.source for p in self.pivots]


def _axpy(a: list[Scalar], factor: Scalar, b: list[Scalar]) -> list[Scalar]:
    """a - factor*b, skipping zero entries of b."""
    return [x - factor * y if y else x for x, y in zip(a, b)]


def echelon(rows: Matrix, chart: Chart, ncols: int | None = None) -> Echelon:
    """Reduced row echelon form of ``rows`` with row provenance tracking."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    n = len(rows)
    zero, one = chart.zero(), chart.one()
    work = []
    for k, row in enumerate(rows):
        combo = [zero] * n
        combo[k] = one
        work.append((k, list(row), combo))
    pivots: list[Pivot] = []
    while True:
        best = None
        for w, (src, row, _) in enumerate(work):
            for c, entry in enumerate(row):
                if entry:
                    key = entry.complexity()
                    if best is None or key < best[0]:
                        best = (key, w, c)
        if best is None:
            break
        _, w, c = best
        src, row, combo = work.pop(w)
        inv = row[c].inverse()
        row = [x * inv if x else x for x in row]
        combo = [x * inv if x else x for x in combo]
        pivot = Pivot(c, src, row, combo)
        for k, (s2, r2, c2) in enumerate(work):
            f = r2[c]
            if f:
                work[k] = (s2, _axpy(r2, f, row), _axpy(c2, f, combo))
        for p in pivots:
            f = p.row[c]
            if f:
                p.row = _axpy(p.row, f, row)
                p.combo = _axpy(p.combo, f, combo)
        pivots.append(pivot)
    return Echelon(pivots, ncols)


def rank(rows: Matrix, chart: Chart) -> int:
    return echelon(rows, chart).rank if rows else 0


def det(m: Matrix, chart: Chart) -> Scalar:
    """Determinant by elimination with low-complexity pivots."""
    n = len(m)
    if n == 0:
        return chart.one()
    a = [list(r) for r in m]
    result = chart.one()
    for k in range(n):
        best = None
        for r in range(k, n):
            if a[r][k]:
                key = a[r][k].complexity()
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            return chart.zero()
        r = best[1]
        if r != k:
            a[k], a[r] = a[r], a[k]
            result = -result
        piv = a[k][k]
        result = result * piv
        inv = piv.inverse()
        for r in range(k + 1, n):
            f = a[r][k]
            if f:
                f = f * inv
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[k])]
    return result


def inverse(m: Matrix, chart: Chart) -> Matrix:
    n = len(m)
    aug = [list(row) + e for row, e in zip(m, identity(chart, n))]
    ech = echelon(aug, chart)
    if ech.rank < n or any(p.col >= n for p in ech.pivots):
        raise SingularMatrix("matrix is singular over the fraction field")
    out: Matrix = [None] * n  # type: ignore[list-item]
    for p in ech.pivots:
        out[p.col] = p.row[n:]
    return out


def nullspace(m: Matrix, chart: Chart, ncols: int | None = None) -> list[list[Scalar]]:
    """Basis of {v : m v = 0}."""
    if ncols is None:
        ncols = len(m[0])
    if not m:
        return [[chart.one() if i == j else chart.zero() for i in range(ncols)]
                for j in range(ncols)]
    ech = echelon(m, chart, ncols)
    pcols = set(ech.pivot_cols)
    basis = []
    for free in range(ncols):
        if free in pcols:
            continue
        v = [chart.zero()] * ncols
        v[free] = chart.one()
        for p in ech.pivots:
            if p.row[free]:
                v[p.col] = -p.row[free]
        basis.append(v)
    return basis


def left_nullspace(m: Matrix, chart: Chart) -> list[list[Scalar]]:
    """Basis of {c : c m = 0} (row combinations killing ``m``)."""
    if not m:
        return []
    return nullspace(transpose(m), chart, len(m))


@dataclass
class Reduction:
    residual: list[Scalar]
    coefficients: list[Scalar]

    @property
    def member(self) -> bool:
        return all(not x for x in self.residual)


def reduce_against(ech: Echelon, target: list[Scalar], chart: Chart, nrows: int) -> Reduction:
    residual = list(target)
    coeffs = [chart.zero()] * nrows
    for p in ech.pivots:
        f = residual[p.col]
        if f:
            residual = _axpy(residual, f, p.row)
            coeffs = [c + f * q if q else c for c, q in zip(coeffs, p.combo)]
    return Reduction(residual, coeffs)


@dataclass
class RankCertificate:
    rank: int
    pivot_rows: list[int]
    pivot_cols: list[int]
    minor: Scalar

    @property
    def constant(self) -> bool:
        return self.minor.is_constant()


def rank_certificate(rows: Matrix, chart: Chart, ncols: int | None = None) -> RankCertificate:
    """Rank plus the determinant of a maximal nonsingular minor."""
    if not rows:
        return RankCertificate(0, [], [], chart.one())
    ech = echelon(rows, chart, ncols)
    prow = sorted(ech.pivot_rows)
    pcol = sorted(ech.pivot_cols)
    sub = [[rows[r][c] for c in pcol] for r in prow]
    return RankCertificate(ech.rank, prow, pcol, det(sub, chart))
