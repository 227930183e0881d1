"""Exact linear programming over the rationals.

A dense two-phase simplex with Bland's rule: slow but exact and guaranteed
to terminate, which is what the enumeration solvers need.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = Sequence[Fraction]
Constraint = tuple[Row, Fraction]

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    prow = T[r]
    p = prow[c]
    if p != 1:
        T[r] = prow = [v / p for v in prow]
    for i, row in enumerate(T):
        if i != r and row[c]:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, prow)]


def _bland(T: list[list[Fraction]], basis: list[int], n_cols: int) -> str:
    """Minimize the objective stored in the last row of ``T``.

    Columns ``0..n_cols-1`` are eligible; the last column is the right-hand side.
    """
    obj = len(T) - 1
    while True:
        entering = next((j for j in range(n_cols) if T[obj][j] < 0), None)
        if entering is None:
            return OPTIMAL
        best = None
        for i in range(obj):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, best[1], entering)
        basis[best[1]] = entering


def simplex(c: Row, A: Sequence[Row], b: Row) -> tuple[str, list[Fraction] | None]:
    """Minimize ``c.x`` subject to ``A x = b`` and ``x >= 0``.

    Returns ``(status, x)`` where ``x`` is an optimal vertex when the status
    is ``"optimal"``.
    """
    n = len(c)
    m = len(A)
    T = []
    for i, (row, rhs) in enumerate(zip(A, b)):
        row = [Fraction(v) for v in row]
        rhs = Fraction(rhs)
        if rhs < 0:
            row, rhs = [-v for v in row], -rhs
        T.append(row + [Fraction(int(i == j)) for j in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    phase1 = [Fraction(0)] * (n + m + 1)
    for row in T:
        for j in range(n):
            phase1[j] -= row[j]
        phase1[-1] -= row[-1]
    T.append(phase1)
    _bland(T, basis, n + m)
    if T[-1][-1] != 0:
        return INFEASIBLE, None
    T.pop()

    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i], basis[i]
                continue
            _pivot(T, i, col)
            basis[i] = col
        i += 1
    T = [row[:n] + row[-1:] for row in T]

    obj = [Fraction(v) for v in c] + [Fraction(0)]
    for i, row in enumerate(T):
        f = obj[basis[i]]
        if f:
            obj = [a - f * r for a, r in zip(obj, row)]
    T.append(obj)
    status = _bland(T, basis, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return OPTIMAL, x


def feasible_point(n: int, equalities: Iterable[Constraint] = (),
                   inequalities: Iterable[Constraint] = (),
                   strict: Iterable[Constraint] = (),
                   nonneg: Iterable[int] = ()) -> list[Fraction] | None:
    """A rational point with ``a.z == c``, ``a.z <= c`` and ``a.z < c`` as listed.

    Variables listed in ``nonneg`` are constrained to be ``>= 0``; the others
    are free. Returns ``None`` when the system has no solution. Strict rows
    are handled by maximizing a common slack ``t`` capped at 1.
    """
    equalities = list(equalities)
    inequalities = list(inequalities)
    strict = list(strict)
    nonneg = set(nonneg)

    # column map: nonnegative vars keep one column, free vars get two
    cols: list[tuple[int, int]] = []
    for i in range(n):
        cols.append((i, 1))
        if i not in nonneg:
            cols.append((i, -1))
    n_struct = len(cols)
    n_slack = len(inequalities) + len(strict) + (1 if strict else 0)
    t_col = n_struct + n_slack if strict else None
    width = n_struct + n_slack + (1 if strict else 0)

    def expand(a: Row) -> list[Fraction]:
        return [Fraction(a[i]) * s for i, s in cols]

    A, b = [], []
    for a, rhs in equalities:
        A.append(expand(a) + [Fraction(0)] * (width - n_struct))
        b.append(Fraction(rhs))
    slack = n_struct
    for a, rhs in inequalities:
        row = expand(a) + [Fraction(0)] * (width - n_struct)
        row[slack] = Fraction(1)
        slack += 1
        A.append(row)
        b.append(Fraction(rhs))
    for a, rhs in strict:
        row = expand(a) + [Fraction(0)] * (width - n_struct)
        row[slack] = Fraction(1)
        row[t_col] = Fraction(1)
        slack += 1
        A.append(row)
        b.append(Fraction(rhs))
    if strict:
        row = [Fraction(0)] * width
        row[slack] = Fraction(1)
        row[t_col] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))

    c = [Fraction(0)] * width
    if strict:
        c[t_col] = Fraction(-1)
    status, z = simplex(c, A, b)
    if status != OPTIMAL:
        return None
    if strict and z[t_col] <= 0:
        return None
    point = [Fraction(0)] * n
    for (i, s), v in zip(cols, z):
        point[i] += s * v
    return point
