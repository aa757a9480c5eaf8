"""Exact dense linear algebra over a field (Fraction or RatFunc entries).

Matrices are lists of rows.  Nothing here knows about the algebras; the
callers turn their coefficient tables into vectors first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence


def _is_zero(v) -> bool:
    return v == 0


def rref(rows: Sequence[Sequence], ncols: int, zero=Fraction(0)):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv if not _is_zero(v) else v for v in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                row_r = m[r]
                m[i] = [a - f * b if not _is_zero(b) else a for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int, zero=Fraction(0), one=Fraction(1)):
    """Basis of ``{v : rows @ v = 0}``, one vector per free column.

    Each basis vector has a 1 in its own free column and 0 in every other
    free column, so the basis is canonical for a given column order.
    """
    red, pivots = rref(rows, ncols, zero)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(red, pivots):
            if not _is_zero(row[free]):
                v[pc] = -row[free]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def canonical_span(vectors: Sequence[Sequence], ncols: int):
    """RREF rows of the span of ``vectors``: equal spans give equal output."""
    red, _ = rref(vectors, ncols)
    return [tuple(r) for r in red]


def solve_in_span(basis_rows: Sequence[Sequence], target: Sequence, ncols: int):
    """Coordinates ``c`` with ``sum c_i basis_i = target`` or ``None``."""
    k = len(basis_rows)
    # columns are basis vectors; augmented with target
    aug = [[basis_rows[i][j] for i in range(k)] + [target[j]] for j in range(ncols)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    coords = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        coords[pc] = row[k]
    return coords


def charpoly(matrix: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial ``det(t I - M)``, coefficients low to high.

    Reduction to upper Hessenberg form followed by the standard recurrence.
    """
    n = len(matrix)
    a = [[Fraction(v) for v in row] for row in matrix]
    for k in range(1, n - 1):
        p = next((i for i in range(k, n) if a[i][k - 1] != 0), None)
        if p is None:
            continue
        if p != k:
            a[p], a[k] = a[k], a[p]
            for row in a:
                row[p], row[k] = row[k], row[p]
        piv = a[k][k - 1]
        for i in range(k + 1, n):
            if a[i][k - 1] == 0:
                continue
            f = a[i][k - 1] / piv
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
            for row in a:
                row[k] += f * row[i]
    # p_j = charpoly of leading j x j block, as coefficient lists
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for j in range(1, n + 1):
        # p_j(t) = (t - a[j-1][j-1]) p_{j-1}(t) - sum_{i<j-1} a[i][j-1] * prod(sub) * p_i(t)
        prev = polys[j - 1]
        cur = [Fraction(0)] + prev[:]  # t * p_{j-1}
        for idx, c in enumerate(prev):
            cur[idx] -= a[j - 1][j - 1] * c
        prod = Fraction(1)
        for i in range(j - 2, -1, -1):
            prod *= a[i + 1][i]
            if prod == 0:
                break
            coeff = a[i][j - 1] * prod
            if coeff == 0:
                continue
            for idx, c in enumerate(polys[i]):
                cur[idx] -= coeff * c
        polys.append(cur)
    return polys[n]


class CoordinateSystem:
    """Assigns vector coordinates to the monomials met in a list of tables.

    ``tables`` are mappings monomial -> coefficient; the monomials are indexed
    in first-seen order (optionally pre-seeded with a fixed basis order).
    """

    def __init__(self, seed: Iterable[Hashable] = ()):
        self.index: dict = {}
        for m in seed:
            self.add(m)

    def add(self, monomial) -> int:
        if monomial not in self.index:
            self.index[monomial] = len(self.index)
        return self.index[monomial]

    def __len__(self):
        return len(self.index)

    def vector(self, table, zero=Fraction(0)):
        v = [zero] * len(self.index)
        for m, c in table.items():
            v[self.index[m]] = c
        return v

    def columns_to_rows(self, tables, zero=Fraction(0)):
        """Matrix (list of rows) whose columns are the given tables."""
        for t in tables:
            for m in t:
                self.add(m)
        rows = [[zero] * len(tables) for _ in range(len(self.index))]
        for j, t in enumerate(tables):
            for m, c in t.items():
                rows[self.index[m]][j] = c
        return rows


def kernel_of_tables(tables, zero=Fraction(0), one=Fraction(1)):
    """Relations ``y`` with ``sum y_j tables_j = 0`` (tables: monomial -> coeff)."""
    cs = CoordinateSystem()
    rows = cs.columns_to_rows(tables, zero)
    return nullspace(rows, len(tables), zero, one)


def combine(vectors_coeffs, items, add: Callable, scale: Callable, zero):
    out = zero
    for c, item in zip(vectors_coeffs, items):
        if c != 0:
            out = add(out, scale(c, item))
    return out


def nullspace_with_pivots(rows: Sequence[Sequence], ncols: int, zero=Fraction(0), one=Fraction(1)):
    """Like :func:`nullspace` but also returns the pivot columns."""
    red, pivots = rref(rows, ncols, zero)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(red, pivots):
            if not _is_zero(row[free]):
                v[pc] = -row[free]
        basis.append(v)
    return basis, pivots
