"""Exact linear algebra over `fractions.Fraction`.

Matrices are lists of row tuples.  Everything is small enough (a few
dozen columns at most) that plain Gaussian elimination is fine.
"""

from __future__ import annotations

from fractions import Fraction

Row = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows: list[Row], ncols: int) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = ONE / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [tuple(row) for row in work[:r]], pivots


def rank(rows: list[Row], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def nullspace(rows: list[Row], ncols: int) -> list[Row]:
    """Basis of the right nullspace, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def solve(rows: list[Row], rhs: list[Fraction]) -> Row | None:
    """One exact solution of A x = b, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [tuple(row) + (b,) for row, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    # Free variables are set to zero, so each pivot row reads off directly.
    x = [ZERO] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return tuple(x)


def det(rows: list[Row]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    work = [list(r) for r in rows]
    sign = 1
    result = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            sign = -sign
        result *= work[c][c]
        inv = ONE / work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] * inv
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return result * sign


class RowAccumulator:
    """Incremental echelon basis of a row space with few columns."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def add(self, row) -> bool:
        """Reduce `row` against the basis; keep it if independent."""
        work = list(row)
        for r, p in zip(self.rows, self.pivots):
            if work[p] != 0:
                f = work[p]
                work = [a - f * b for a, b in zip(work, r)]
        lead = next((c for c in range(self.ncols) if work[c] != 0), None)
        if lead is None:
            return False
        inv = ONE / work[lead]
        work = [x * inv for x in work]
        for r, p in zip(self.rows, self.pivots):
            if r[lead] != 0:
                f = r[lead]
                r[:] = [a - f * b for a, b in zip(r, work)]
        self.rows.append(work)
        self.pivots.append(lead)
        return True

    def nullspace(self) -> list[Row]:
        return nullspace([tuple(r) for r in self.rows], self.ncols)
