"""Fraction-free (Bareiss) elimination on rational matrices.

Rows are scaled to integers first, so elimination runs on Python ints with
exact divisions only; results are converted back to Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import NotABasisError


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(v) for v in row]
        scale = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * scale) for v in row])
    return out


def _bareiss(mat: list[list[int]], n_cols: int) -> list[int]:
    """Row-echelon form in place; returns the pivot column of each leading row."""
    prev = 1
    pivots = []
    r = 0
    m = len(mat)
    for c in range(n_cols):
        if r == m:
            break
        p = next((i for i in range(r, m) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        piv = mat[r][c]
        for i in range(r + 1, m):
            lead = mat[i][c]
            row_i = mat[i]
            row_r = mat[r]
            for j in range(c + 1, len(row_i)):
                row_i[j] = (row_i[j] * piv - lead * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    mat = _integer_rows(rows)
    return len(_bareiss(mat, len(mat[0])))


def solve(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Unique solution of the square system ``A x = b``."""
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("solve expects a square system")
    mat = _integer_rows([list(row) + [rhs] for row, rhs in zip(A, b)])
    pivots = _bareiss(mat, n)
    if len(pivots) < n:
        raise NotABasisError("singular matrix")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(mat[i][n])
        for j in range(i + 1, n):
            if mat[i][j]:
                s -= mat[i][j] * x[j]
        x[i] = s / mat[i][i]
    return x
