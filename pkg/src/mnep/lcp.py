"""Matrix data of the complementarity program and its augmented form.

Layout (fixed, so that bases are reproducible):

* pairs ``(k, a)`` with ``a`` in ``A^k``: classes in file order, arcs in file
  order within a class. Pair ``j`` owns x-index ``j``, mu-index ``N + j``;
  the omega index is ``2N``. Potentials ``pi`` get the indices after omega.
* rows: one conservation row per ``(k, v)`` with ``v`` in ``V^k - {s^k}``
  (classes, then vertices in file order), followed by one cost row per pair.

Matrices are dense lists of rows of Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .model import ClassSubgraph, Instance

ZERO = Fraction(0)
ONE = Fraction(1)

Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class IndexSets:
    pairs: tuple[tuple[int, str], ...]
    vertex_rows: tuple[tuple[int, str], ...]

    @cached_property
    def pair_index(self) -> dict[tuple[int, str], int]:
        return {p: j for j, p in enumerate(self.pairs)}

    @cached_property
    def vertex_row_index(self) -> dict[tuple[int, str], int]:
        return {p: i for i, p in enumerate(self.vertex_rows)}

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    @property
    def omega(self) -> int:
        return 2 * len(self.pairs)

    @property
    def n_signed(self) -> int:
        return 2 * len(self.pairs) + 1

    @property
    def n_vars(self) -> int:
        return self.n_signed + len(self.vertex_rows)

    def phi_x(self, k: int, a: str) -> int:
        return self.pair_index[(k, a)]

    def phi_mu(self, k: int, a: str) -> int:
        return self.n_pairs + self.pair_index[(k, a)]

    def pi_index(self, k: int, v: str) -> int:
        return self.n_signed + self.vertex_row_index[(k, v)]

    def describe(self, index: int) -> str:
        n = self.n_pairs
        if index < n:
            k, a = self.pairs[index]
            return f"x[{k},{a}]"
        if index < 2 * n:
            k, a = self.pairs[index - n]
            return f"mu[{k},{a}]"
        if index == 2 * n:
            return "omega"
        k, v = self.vertex_rows[index - 2 * n - 1]
        return f"pi[{k},{v}]"


def build_index_sets(instance: Instance) -> IndexSets:
    pairs = []
    vertex_rows = []
    for k, spec in enumerate(instance.classes):
        sub = instance.subgraphs[k]
        pairs.extend((k, a) for a in sub.arcs)
        vertex_rows.extend((k, v) for v in sub.vertices if v != spec.origin)
    return IndexSets(tuple(pairs), tuple(vertex_rows))


def build_incidence(instance: Instance, subgraph: ClassSubgraph) -> Matrix:
    """Node-arc incidence of ``(V^k, A^k)`` without the origin row.

    Entry is +1 when the arc leaves the vertex and -1 when it enters it.
    """
    origin = instance.classes[subgraph.k].origin
    rows = [v for v in subgraph.vertices if v != origin]
    row_of = {v: i for i, v in enumerate(rows)}
    mat = [[ZERO] * len(subgraph.arcs) for _ in rows]
    for j, a in enumerate(subgraph.arcs):
        arc = instance.arc_by_id[a]
        if arc.tail in row_of:
            mat[row_of[arc.tail]][j] = ONE
        if arc.head in row_of:
            mat[row_of[arc.head]][j] = -ONE
    return mat


def build_demand(instance: Instance) -> list[Fraction]:
    """Stacked right-hand side of the conservation rows (origin rows dropped)."""
    b = []
    for k, spec in enumerate(instance.classes):
        for v in instance.subgraphs[k].vertices:
            if v == spec.origin:
                continue
            b.append(-Fraction(spec.demand) if v == spec.destination else ZERO)
    return b


def build_cost_blocks(instance: Instance, index_sets: IndexSets | None = None) -> Matrix:
    """Square block mapping x-pairs to cost rows.

    Row ``(a, k)`` carries ``alpha_a^k`` on every x-column ``(a, k')`` that
    exists, so that the row reads ``alpha_a^k * (total flow on a)``.
    """
    index_sets = index_sets or build_index_sets(instance)
    n = index_sets.n_pairs
    by_arc: dict[str, list[int]] = {}
    for j, (_, a) in enumerate(index_sets.pairs):
        by_arc.setdefault(a, []).append(j)
    mat = [[ZERO] * n for _ in range(n)]
    for j, (k, a) in enumerate(index_sets.pairs):
        alpha = Fraction(instance.classes[k].alpha[a])
        for col in by_arc[a]:
            mat[j][col] = alpha
    return mat


@dataclass(frozen=True)
class LcpSystem:
    """Data of the augmented program for a covering vector ``e``.

    ``Mbar`` has columns x (N), mu (N), omega (1); ``pi_block`` is the column
    block ``(0; M^T)`` of the unsigned potentials; ``rhs`` is ``(b; -beta)``.
    """

    M: Matrix
    C: Matrix
    e: tuple[Fraction, ...]
    Mbar: Matrix
    pi_block: Matrix
    b: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    index_sets: IndexSets

    @property
    def n_rows(self) -> int:
        return len(self.Mbar)

    @property
    def rhs(self) -> list[Fraction]:
        return list(self.b) + [-v for v in self.beta]

    def full_matrix(self) -> Matrix:
        """``[Mbar | (0; M^T)]``: one column per variable index."""
        return [list(r) + list(p) for r, p in zip(self.Mbar, self.pi_block)]

    def residual(self, values: Sequence[Fraction]) -> list[Fraction]:
        """``A z - rhs`` for a full variable vector ``z`` (indexed as in IndexSets)."""
        full = self.full_matrix()
        return [sum((c * v for c, v in zip(row, values) if c), ZERO) - r
                for row, r in zip(full, self.rhs)]


def block_diagonal(blocks: Sequence[Matrix], widths: Sequence[int]) -> Matrix:
    total = sum(widths)
    out = []
    offset = 0
    for block, width in zip(blocks, widths):
        for row in block:
            out.append([ZERO] * offset + list(row) + [ZERO] * (total - offset - width))
        offset += width
    return out


def assemble(instance: Instance, e: Sequence[Fraction]) -> LcpSystem:
    index_sets = build_index_sets(instance)
    n = index_sets.n_pairs
    if len(e) != n:
        raise ValueError(f"covering vector has {len(e)} entries, expected {n}")
    subs = instance.subgraphs
    M = block_diagonal([build_incidence(instance, s) for s in subs], [len(s.arcs) for s in subs])
    C = build_cost_blocks(instance, index_sets)
    p = len(index_sets.vertex_rows)
    assert len(M) == p

    mbar = []
    for row in M:
        mbar.append(list(row) + [ZERO] * n + [ZERO])
    for j in range(n):
        mu = [ZERO] * n
        mu[j] = -ONE
        mbar.append(list(C[j]) + mu + [Fraction(e[j])])

    pi_block = [[ZERO] * p for _ in range(p)]
    for j in range(n):
        pi_block.append([M[i][j] for i in range(p)])

    beta = tuple(Fraction(instance.classes[k].beta[a]) for k, a in index_sets.pairs)
    system = LcpSystem(M, C, tuple(Fraction(v) for v in e), mbar, pi_block,
                       tuple(build_demand(instance)), beta, index_sets)
    assert system.n_rows == n + p
    assert all(len(r) == 2 * n + 1 for r in mbar)
    return system


def state_vector(system: LcpSystem, state) -> list[Fraction]:
    """Flatten a SolutionState into the variable order of ``system``."""
    ix = system.index_sets
    z = [ZERO] * ix.n_vars
    for j, key in enumerate(ix.pairs):
        z[j] = Fraction(state.x.get(key, ZERO))
        z[ix.n_pairs + j] = Fraction(state.mu.get(key, ZERO))
    z[ix.omega] = Fraction(state.omega)
    for i, key in enumerate(ix.vertex_rows):
        z[ix.n_signed + i] = Fraction(state.pi.get(key, ZERO))
    return z
