"""Small exact linear algebra over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = tuple[tuple[int, ...], ...]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m))


def inverse(m: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Gauss-Jordan inverse; raises ValueError on a singular matrix."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve(m: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Solve ``m @ x = b`` for a full-column-rank ``m`` (rows >= cols).

    Returns None when the system is inconsistent.
    """
    rows, cols = len(m), len(m[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(m, b)]
    r = 0
    pivots = []
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        p = aug[r][c]
        aug[r] = [x / p for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][cols] != 0 for i in range(r, rows)):
        return None
    if len(pivots) < cols:
        raise ValueError("matrix does not have full column rank")
    return tuple(aug[i][cols] for i in range(cols))
