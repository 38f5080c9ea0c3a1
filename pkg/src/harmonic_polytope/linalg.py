"""Small exact linear algebra over Fraction: rank and square solves."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence[int | Fraction]]) -> int:
    if not matrix:
        return 0
    return len(_echelon([[Fraction(v) for v in row] for row in matrix])[1])


def affine_dimension(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of a nonempty point set."""
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs)


def solve(matrix: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """Solve a nonsingular square system exactly."""
    n = len(matrix)
    augmented = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    reduced, pivots = _echelon(augmented)
    if pivots != list(range(n)):
        raise ArithmeticError("singular system")
    return [reduced[i][n] for i in range(n)]


def fit_polynomial(xs: Sequence[int], ys: Sequence[int | Fraction]) -> list[Fraction]:
    """Coefficients (constant term first) of the interpolating polynomial of degree len(xs)-1."""
    vandermonde = [[Fraction(x) ** k for k in range(len(xs))] for x in xs]
    return solve(vandermonde, ys)


def evaluate(coefficients: Sequence[Fraction], x: int | Fraction) -> Fraction:
    value = Fraction(0)
    for c in reversed(coefficients):
        value = value * x + c
    return value
