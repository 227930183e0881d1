"""Exact Gauss-Jordan tableau with a lexicographic ratio test.

The tableau stores ``B^-1 [A | q]`` for the current basis ``B``. Columns of
the basis it was built from (the *reference* basis) are kept as the
lexicographic tie-breakers: at construction they form an identity block, so
every row is lexicographically positive and stays so under the ratio rule.
This amounts to perturbing the right-hand side by ``B0 (eps, eps^2, ...)``
without ever materializing ``eps``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InfiniteRayError, NotABasisError
from .kernels import DEFAULT, Backend


class Tableau:
    def __init__(self, rows, basic: list[int], n_signed: int, backend: Backend):
        self.rows = rows
        self.basic = basic
        self.row_of = {v: i for i, v in enumerate(basic)}
        self.n_signed = n_signed
        self.backend = backend
        self.lex_cols = list(basic)
        self.signed = [v < n_signed for v in basic]

    @classmethod
    def build(cls, matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
              basic_vars: Iterable[int], n_signed: int,
              order: Sequence[tuple[int, int]] | None = None,
              backend: Backend | None = None) -> "Tableau":
        """Bring ``[matrix | rhs]`` to canonical form for ``basic_vars``.

        ``order`` optionally lists ``(variable, row)`` pivot positions; it
        must cover every basic variable. Without it, each basic variable is
        pivoted on the free row with the fewest nonzeros.
        """
        backend = backend or DEFAULT
        s = backend.scalar
        rows = [[s(v) if v else 0 for v in row] + [s(r) if r else 0]
                for row, r in zip(matrix, rhs)]
        m = len(rows)
        basic_vars = list(basic_vars)
        if len(basic_vars) != m or len(set(basic_vars)) != m:
            raise NotABasisError(f"need {m} distinct basic columns, got {len(basic_vars)}")
        basic: list[int | None] = [None] * m
        if order is not None:
            if sorted(v for v, _ in order) != sorted(basic_vars):
                raise ValueError("pivot order does not match the basic columns")
            for var, r in order:
                if basic[r] is not None or not rows[r][var]:
                    raise NotABasisError(f"zero or reused pivot at row {r}, column {var}")
                backend.pivot(rows, r, var)
                basic[r] = var
        else:
            for var in basic_vars:
                best, best_nnz = None, None
                for i in range(m):
                    if basic[i] is None and rows[i][var]:
                        nnz = sum(1 for v in rows[i] if v)
                        if best is None or nnz < best_nnz:
                            best, best_nnz = i, nnz
                if best is None:
                    raise NotABasisError(f"column {var} is dependent on the other basic columns")
                backend.pivot(rows, best, var)
                basic[best] = var
        return cls(rows, basic, n_signed, backend)

    @property
    def basis(self) -> frozenset[int]:
        """Basic sign-constrained variables (the unsigned ones are always basic)."""
        return frozenset(v for v in self.basic if v < self.n_signed)

    def value(self, var: int) -> Fraction:
        r = self.row_of.get(var)
        if r is None:
            return Fraction(0)
        return self.backend.to_fraction(self.rows[r][-1])

    def values(self, n_vars: int) -> list[Fraction]:
        z = [Fraction(0)] * n_vars
        for r, var in enumerate(self.basic):
            z[var] = self.backend.to_fraction(self.rows[r][-1])
        return z

    def is_feasible(self) -> bool:
        return all(row[-1] >= 0 for row, sg in zip(self.rows, self.signed) if sg)

    def ratio_test(self, entering: int, prefer: int | None = None,
                   tie_key: Callable[[int], object] | None = None) -> tuple[int, Fraction]:
        """Row whose basic variable blocks first as ``entering`` grows.

        Ties on the ratio go to the row of ``prefer`` when present, then are
        broken lexicographically on the reference columns; ``tie_key`` orders
        whatever remains (never reached with a nonsingular reference).
        """
        if entering in self.row_of:
            raise ValueError(f"column {entering} is already basic")
        rows = self.rows
        tied = self.backend.min_ratio_rows(rows, entering, self.signed)
        if not tied:
            raise InfiniteRayError(f"no basic variable blocks column {entering}")
        if prefer is not None and prefer in self.row_of and self.row_of[prefer] in tied:
            tied = [self.row_of[prefer]]
        for col in self.lex_cols:
            if len(tied) == 1:
                break
            keyed = [(rows[i][col] / rows[i][entering], i) for i in tied]
            low = min(k for k, _ in keyed)
            tied = [i for k, i in keyed if k == low]
        if len(tied) > 1:
            key = tie_key or (lambda v: v)
            tied.sort(key=lambda i: key(self.basic[i]))
        r = tied[0]
        theta = self.backend.to_fraction(rows[r][-1] / rows[r][entering])
        return r, theta

    def pivot(self, r: int, entering: int) -> int:
        """Exchange the basic variable of row ``r`` for ``entering``; return the leaver."""
        leaving = self.basic[r]
        self.backend.pivot(self.rows, r, entering)
        del self.row_of[leaving]
        self.basic[r] = entering
        self.row_of[entering] = r
        self.signed[r] = entering < self.n_signed
        return leaving
