"""Enumeration solver based on the arrangement of equilibrium hyperplanes.

Potentials live in the product over classes of ``R^(V^k - s^k)`` (the origin
coordinate is pinned to 0). Each class/arc pair contributes a hyperplane on
which the arc is tight at zero load, and each arc shared by two classes
contributes a hyperplane on which both classes see the same load. Every cell
of the arrangement yields a candidate support family; an equilibrium is
found by testing the candidates with an exact linear feasibility problem.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import SizeGuardError
from .lcp import assemble, build_index_sets
from .linalg import rank
from .lp import feasible_point
from .model import Instance, SolutionState, check_instance

SupportFamily = tuple[frozenset[str], ...]

CELL_BOUND_LIMIT = 5000


@dataclass(frozen=True)
class Hyperplane:
    """``normal . y = offset`` in canonical scaling (first nonzero normal entry is 1).

    ``tags`` pairs each generating object with the orientation that maps the
    canonical sign to the tag's own sign; the negative side of a tag is the
    side on which the corresponding arc can be in the support.
    """

    normal: tuple[Fraction, ...]
    offset: Fraction
    tags: tuple[tuple[tuple, int], ...] = ()

    def value(self, y: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.normal, y) if c), Fraction(0)) - self.offset

    def sign(self, y: Sequence[Fraction]) -> int:
        v = self.value(y)
        return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Cell:
    signs: tuple[int, ...]
    witness: tuple[Fraction, ...]

    def dimension(self, H: Sequence[Hyperplane]) -> int:
        on = [h.normal for h, s in zip(H, self.signs) if s == 0]
        return len(self.witness) - rank(on)


def _canonical(normal: list[Fraction], offset: Fraction) -> tuple[tuple[Fraction, ...], Fraction, int]:
    lead = next(c for c in normal if c)
    return tuple(c / lead for c in normal), offset / lead, (1 if lead > 0 else -1)


def build_hyperplanes(instance: Instance) -> tuple[Hyperplane, ...]:
    """Single-class and class-pair hyperplanes, identical ones merged.

    Tag ``("arc", k, a)`` has negative side ``y_v - y_u > beta``; tag
    ``("pair", a, k, k2)`` has negative side
    ``alpha^k2 (y_v^k - y_u^k - beta^k) > alpha^k (y_v^k2 - y_u^k2 - beta^k2)``.
    """
    ix = build_index_sets(instance)
    coord = ix.vertex_row_index
    d = len(ix.vertex_rows)

    def delta(k: int, a: str) -> list[Fraction]:
        """Coefficients of ``y_v^k - y_u^k`` for arc ``a = (u, v)``."""
        arc = instance.arc_by_id[a]
        vec = [Fraction(0)] * d
        if (k, arc.head) in coord:
            vec[coord[(k, arc.head)]] += 1
        if (k, arc.tail) in coord:
            vec[coord[(k, arc.tail)]] -= 1
        return vec

    merged: dict[tuple, list] = {}

    def add(tag, normal, offset, flip=False):
        key_normal, key_offset, orient = _canonical(normal, offset)
        entry = merged.setdefault((key_normal, key_offset), [])
        entry.append((tag, orient))
        if flip:
            entry.append((flip, -orient))

    for k, spec in enumerate(instance.classes):
        for a in instance.subgraphs[k].arcs:
            # beta - (y_v - y_u) < 0 on the negative side
            add(("arc", k, a), [-c for c in delta(k, a)], -Fraction(spec.beta[a]))
    arcs_of = [set(s.arcs) for s in instance.subgraphs]
    for arc in instance.arcs:
        a = arc.id
        for k in range(instance.n_classes):
            for k2 in range(k + 1, instance.n_classes):
                if a not in arcs_of[k] or a not in arcs_of[k2]:
                    continue
                s1, s2 = instance.classes[k], instance.classes[k2]
                al1, al2 = Fraction(s1.alpha[a]), Fraction(s2.alpha[a])
                be1, be2 = Fraction(s1.beta[a]), Fraction(s2.beta[a])
                # alpha1 (D2 - beta2) - alpha2 (D1 - beta1) < 0 on the negative side of (k, k2)
                normal = [al1 * c2 - al2 * c1 for c1, c2 in zip(delta(k, a), delta(k2, a))]
                offset = al1 * be2 - al2 * be1
                add(("pair", a, k, k2), normal, offset, flip=("pair", a, k2, k))
    return tuple(Hyperplane(n, o, tuple(tags)) for (n, o), tags in merged.items())


def cell_bound(n: int, d: int, k: int | None = None) -> int:
    """Upper bound on the number of ``k``-cells (all cells when ``k`` is None)."""
    if k is None:
        return sum(cell_bound(n, d, j) for j in range(d + 1))
    return sum(comb(d - i, k - i) * comb(n, d - i) for i in range(k + 1))


def realize(H: Sequence[Hyperplane], signs: Sequence[int], d: int) -> tuple[Fraction, ...] | None:
    """A point with the given sign on each hyperplane, or None."""
    eq, strict = [], []
    for h, s in zip(H, signs):
        if s == 0:
            eq.append((h.normal, h.offset))
        elif s < 0:
            strict.append((h.normal, h.offset))
        else:
            strict.append(([-c for c in h.normal], -h.offset))
    point = feasible_point(d, equalities=eq, strict=strict)
    return None if point is None else tuple(point)


def enumerate_cells(H: Sequence[Hyperplane], d: int) -> list[Cell]:
    """All nonempty cells, of every dimension, by incremental insertion.

    Each inserted hyperplane splits the current cells it crosses. The side
    containing the old witness is kept for free; the other sides are
    confirmed with an exact LP, skipping the LPs implied by convexity.
    """
    cells = [Cell((), tuple(Fraction(0) for _ in range(d)))]
    for t, h in enumerate(H):
        prefix = H[: t + 1]
        out = []
        for cell in cells:
            s_w = h.sign(cell.witness)
            out.append(Cell(cell.signs + (s_w,), cell.witness))
            first, second = ((1, -1) if s_w == 0 else (0, -s_w))
            point = realize(prefix, cell.signs + (first,), d)
            if point is None:
                continue
            out.append(Cell(cell.signs + (first,), point))
            # one side present implies the other by relative openness of the cell
            point = realize(prefix, cell.signs + (second,), d)
            assert point is not None
            out.append(Cell(cell.signs + (second,), point))
        cells = out
    return cells


def _tag_signs(cell: Cell, H: Sequence[Hyperplane]) -> dict[tuple, int]:
    signs = {}
    for h, s in zip(H, cell.signs):
        for tag, orient in h.tags:
            signs[tag] = s * orient
    return signs


def cell_supports(cell: Cell, instance: Instance, H: Sequence[Hyperplane]) -> SupportFamily:
    """Arcs whose support region (closed negative sides of its tags) contains the cell."""
    if len(cell.signs) != len(H):
        raise ValueError("cell sign vector does not match the hyperplane set")
    signs = _tag_signs(cell, H)
    arcs_of = [set(s.arcs) for s in instance.subgraphs]
    family = []
    for k in range(instance.n_classes):
        chosen = set()
        for a in instance.subgraphs[k].arcs:
            tags = [("arc", k, a)] + [("pair", a, k, k2) for k2 in range(instance.n_classes)
                                      if k2 != k and a in arcs_of[k2]]
            try:
                if all(signs[tag] <= 0 for tag in tags):
                    chosen.add(a)
            except KeyError as exc:
                raise ValueError(f"sign vector lacks hyperplane {exc.args[0]}") from None
        family.append(frozenset(chosen))
    return tuple(family)


def support_feasibility(instance: Instance, family: SupportFamily) -> SolutionState | None:
    """Equilibrium whose class-k support lies in ``family[k]`` and is tight there.

    Sets ``mu = 0`` on the family and ``x = 0`` off it, then solves the
    remaining linear system with ``x, mu >= 0`` exactly.
    """
    ix = build_index_sets(instance)
    n = ix.n_pairs
    system = assemble(instance, [Fraction(0)] * n)
    full = system.full_matrix()
    columns = []
    for j, (k, a) in enumerate(ix.pairs):
        columns.append(j if a in family[k] else n + j)
    columns.extend(range(ix.n_signed, ix.n_vars))
    eqs = [([row[c] for c in columns], rhs) for row, rhs in zip(full, system.rhs)]
    point = feasible_point(len(columns), equalities=eqs, nonneg=range(n))
    if point is None:
        return None
    z = [Fraction(0)] * ix.n_vars
    for c, v in zip(columns, point):
        z[c] = v
    from .lemke import state_from_vector

    return state_from_vector(ix, z)


def arrangement_solve(instance: Instance, limit: int = CELL_BOUND_LIMIT) -> SolutionState:
    check_instance(instance)
    H = build_hyperplanes(instance)
    d = len(build_index_sets(instance).vertex_rows)
    if cell_bound(len(H), d) > limit:
        raise SizeGuardError(f"arrangement of {len(H)} hyperplanes in dimension {d} is too large")
    seen = set()
    for cell in enumerate_cells(H, d):
        family = cell_supports(cell, instance, H)
        if family in seen:
            continue
        seen.add(family)
        state = support_feasibility(instance, family)
        if state is not None:
            return state
    raise AssertionError("no candidate support admits an equilibrium")
