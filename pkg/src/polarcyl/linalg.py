"""Small exact linear algebra over the rationals.

Matrices are lists of rows; entries are anything ``Fraction`` accepts.
Everything here is Gaussian elimination on ``Fraction`` values, which is
plenty for the sizes that show up (Gram matrices of at most a dozen curves).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


class SingularMatrixError(ValueError):
    pass


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = to_fraction_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1])


def determinant(rows: Sequence[Sequence]) -> Fraction:
    m = to_fraction_matrix(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of ``a x = b`` for square nonsingular ``a``."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("solve expects a square system")
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [red[i][n] for i in range(n)]


def solve_general(a: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction] | None, int]:
    """Solve a possibly rectangular system.

    Returns ``(x, nullity)``: ``x`` is ``None`` if the system is inconsistent,
    otherwise one solution (free variables set to zero); ``nullity`` is the
    dimension of the solution space of the homogeneous system.
    """
    if not a:
        return [], 0
    ncols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = row_echelon(aug)
    if ncols in pivots:
        return None, ncols - len([p for p in pivots if p < ncols])
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x, ncols - len(pivots)


def nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """A basis of ``{x : a x = 0}``, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = row_echelon(rows)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = -red[i][free]
        basis.append(x)
    return basis


def leading_minors(rows: Sequence[Sequence]) -> list[Fraction]:
    return [determinant([row[:k] for row in rows[:k]]) for k in range(1, len(rows) + 1)]


def is_negative_definite(rows: Sequence[Sequence]) -> bool:
    """Sylvester's criterion: the k-th leading minor has sign (-1)^k."""
    if not rows:
        return True
    return all((d < 0) if k % 2 == 1 else (d > 0)
               for k, d in enumerate(leading_minors(rows), start=1))


def mat_vec(a: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((Fraction(u) * v for u, v in zip(row, x)), Fraction(0)) for row in a]
