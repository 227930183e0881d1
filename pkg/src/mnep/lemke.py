"""Network Lemke-like pivoting for the multiclass equilibrium problem.

The covering column of omega is 1 on arcs outside a spanning arborescence of
each class and 0 on the arborescence, which yields an explicit starting
basis. From there complementary pivots follow the twin indices until omega
leaves the basis. Degeneracy (present as soon as a tree has a branching
vertex) is resolved by the lexicographic rule of :class:`~mnep.tableau.Tableau`.
"""
from __future__ import annotations

import hashlib
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvariantError
from .kernels import Backend
from .lcp import IndexSets, LcpSystem, assemble, build_index_sets
from .model import Instance, SolutionState, check_instance
from .tableau import Tableau


@dataclass(frozen=True)
class Arborescences:
    """Per class, the tree arcs in breadth-first discovery order, and ``A^k``."""

    trees: tuple[tuple[str, ...], ...]
    class_arcs: tuple[tuple[str, ...], ...]

    def contains(self, k: int, a: str) -> bool:
        return a in self.trees[k]


@dataclass(frozen=True)
class Basis:
    indices: frozenset[int]
    n_pairs: int

    @property
    def omega(self) -> int:
        return 2 * self.n_pairs

    def __contains__(self, index: int) -> bool:
        return index in self.indices

    def __len__(self) -> int:
        return len(self.indices)

    def is_complementary(self) -> bool:
        return not any(j in self.indices and self.n_pairs + j in self.indices
                       for j in range(self.n_pairs))

    def digest(self) -> str:
        data = ",".join(map(str, sorted(self.indices))).encode()
        return hashlib.blake2b(data, digest_size=8).hexdigest()


@dataclass(frozen=True)
class PivotStep:
    entering: int
    leaving: int
    step: Fraction
    basis_digest: str


@dataclass
class PivotTrace:
    steps: list[PivotStep] = field(default_factory=list)
    solved_at_start: bool = False
    pivot_seconds: float = 0.0
    inversion_seconds: float = 0.0
    backend: str = ""
    basis_size: int = 0
    all_feasible: bool = True
    all_complementary: bool = True
    size_constant: bool = True
    digests: list[str] = field(default_factory=list)

    @property
    def pivots(self) -> int:
        return len(self.steps)

    def summary(self) -> dict:
        return {
            "pivots": self.pivots,
            "solved_at_start": self.solved_at_start,
            "pivot_seconds": self.pivot_seconds,
            "inversion_seconds": self.inversion_seconds,
            "backend": self.backend,
            "all_feasible": self.all_feasible,
            "all_complementary": self.all_complementary,
            "size_constant": self.size_constant,
            "distinct_bases": len(set(self.digests)),
            "bases_visited": len(self.digests),
        }


@dataclass(frozen=True)
class InitialBasis:
    basis: Basis
    state: SolutionState
    solved: bool
    pair0: tuple[int, str] | None = None


def build_arborescences(instance: Instance) -> Arborescences:
    """Breadth-first spanning arborescence of each ``(V^k, A^k)``, arcs scanned in file order."""
    trees = []
    class_arcs = []
    for k, spec in enumerate(instance.classes):
        sub = instance.subgraphs[k]
        out: dict[str, list] = {}
        for a in sub.arcs:
            out.setdefault(instance.arc_by_id[a].tail, []).append(instance.arc_by_id[a])
        seen = {spec.origin}
        queue = deque([spec.origin])
        tree = []
        while queue:
            u = queue.popleft()
            for arc in out.get(u, ()):
                if arc.head not in seen:
                    seen.add(arc.head)
                    tree.append(arc.id)
                    queue.append(arc.head)
        trees.append(tuple(tree))
        class_arcs.append(sub.arcs)
    return Arborescences(tuple(trees), tuple(class_arcs))


def covering_vector(arbs: Arborescences) -> tuple[Fraction, ...]:
    """0 on tree arcs, 1 elsewhere, in pair order (classes, then arcs of ``A^k``)."""
    e = []
    for tree, arcs in zip(arbs.trees, arbs.class_arcs):
        members = set(tree)
        e.extend(Fraction(0) if a in members else Fraction(1) for a in arcs)
    return tuple(e)


def _tree_flows(instance: Instance, arbs: Arborescences) -> dict[tuple[int, str], Fraction]:
    x = {}
    for k, spec in enumerate(instance.classes):
        parent = {instance.arc_by_id[a].head: a for a in arbs.trees[k]}
        for a in arbs.class_arcs[k]:
            x[(k, a)] = Fraction(0)
        v = spec.destination
        while v != spec.origin:
            a = parent[v]
            x[(k, a)] = Fraction(spec.demand)
            v = instance.arc_by_id[a].tail
    return x


def initial_basis(instance: Instance, arbs: Arborescences,
                  index_sets: IndexSets | None = None) -> InitialBasis:
    """Starting basis built from the arborescences.

    Sends each demand along its tree path, fixes the potentials from the
    tree arcs and inspects the reduced costs of the other arcs. If none is
    negative the problem is already solved; otherwise omega enters at the
    most negative one (first in class/arc order on ties).
    """
    ix = index_sets or build_index_sets(instance)
    x = _tree_flows(instance, arbs)
    load: dict[str, Fraction] = {}
    for (_, a), v in x.items():
        load[a] = load.get(a, Fraction(0)) + v

    pi: dict[tuple[int, str], Fraction] = {}
    reduced: dict[tuple[int, str], Fraction] = {}
    for k, spec in enumerate(instance.classes):
        pot = {spec.origin: Fraction(0)}
        for a in arbs.trees[k]:
            arc = instance.arc_by_id[a]
            pot[arc.head] = pot[arc.tail] + spec.alpha[a] * load[a] + spec.beta[a]
        for v, value in pot.items():
            if v != spec.origin:
                pi[(k, v)] = value
        tree = set(arbs.trees[k])
        for a in arbs.class_arcs[k]:
            if a not in tree:
                arc = instance.arc_by_id[a]
                reduced[(k, a)] = (spec.alpha[a] * load[a] + spec.beta[a]
                                   + pot[arc.tail] - pot[arc.head])

    tree_x = {ix.phi_x(k, a) for k, tree in enumerate(arbs.trees) for a in tree}
    nontree_mu = {ix.phi_mu(k, a) for (k, a) in reduced}
    pair0 = None
    low = Fraction(0)
    for key in ix.pairs:  # pair order gives the tie rule
        if key in reduced and reduced[key] < low:
            low, pair0 = reduced[key], key

    if pair0 is None:
        mu = {key: reduced.get(key, Fraction(0)) for key in ix.pairs}
        state = SolutionState(x=x, mu=mu, pi=pi, omega=Fraction(0))
        return InitialBasis(Basis(frozenset(tree_x | nontree_mu), ix.n_pairs), state, True)

    omega = -low
    mu = {key: (reduced[key] + omega if key in reduced else Fraction(0)) for key in ix.pairs}
    indices = (tree_x | nontree_mu | {ix.omega}) - {ix.phi_mu(*pair0)}
    state = SolutionState(x=x, mu=mu, pi=pi, omega=omega)
    return InitialBasis(Basis(frozenset(indices), ix.n_pairs), state, False, pair0)


def _initial_pivot_order(instance: Instance, arbs: Arborescences, ix: IndexSets,
                         init: InitialBasis) -> list[tuple[int, int]]:
    """Pivot positions that keep the starting factorization sparse.

    Basic mu first (each is alone in its cost row), then tree flows on
    conservation rows from the leaves up, then potentials on tree cost rows
    from the root down, then omega on the cost row of the entering pair.
    """
    p = len(ix.vertex_rows)
    order = []
    for j, key in enumerate(ix.pairs):
        if ix.n_pairs + j in init.basis:
            order.append((ix.n_pairs + j, p + j))
    for k, tree in enumerate(arbs.trees):
        for a in reversed(tree):
            head = instance.arc_by_id[a].head
            order.append((ix.phi_x(k, a), ix.vertex_row_index[(k, head)]))
    for k, tree in enumerate(arbs.trees):
        for a in tree:
            head = instance.arc_by_id[a].head
            order.append((ix.pi_index(k, head), p + ix.phi_x(k, a)))
    if init.pair0 is not None:
        order.append((ix.omega, p + ix.phi_x(*init.pair0)))
    return order


def state_from_vector(ix: IndexSets, z) -> SolutionState:
    n = ix.n_pairs
    x = {key: Fraction(z[j]) for j, key in enumerate(ix.pairs)}
    mu = {key: Fraction(z[n + j]) for j, key in enumerate(ix.pairs)}
    pi = {key: Fraction(z[ix.n_signed + i]) for i, key in enumerate(ix.vertex_rows)}
    return SolutionState(x=x, mu=mu, pi=pi, omega=Fraction(z[ix.omega]))


def _tableau(system: LcpSystem, basis: Basis, backend: Backend | None = None,
             order=None) -> Tableau:
    ix = system.index_sets
    pis = range(ix.n_signed, ix.n_vars)
    columns = sorted(basis.indices) + list(pis)
    return Tableau.build(system.full_matrix(), system.rhs, columns, ix.n_signed,
                         order=order, backend=backend)


def basic_solution(system: LcpSystem, basis: Basis, backend: Backend | None = None) -> SolutionState:
    """Unique solution with nonbasic x, mu (and omega when absent) at zero.

    Raises :class:`~mnep.errors.NotABasisError` when the columns are singular.
    """
    tab = _tableau(system, basis, backend)
    return state_from_vector(system.index_sets, tab.values(system.index_sets.n_vars))


def twin_indices(basis: Basis) -> tuple[int, int] | None:
    if not basis.is_complementary():
        raise ValueError("basis is not complementary")
    if basis.omega not in basis:
        return None
    n = basis.n_pairs
    twins = [j for j in range(n) if j not in basis and n + j not in basis]
    if len(twins) != 1:
        raise ValueError(f"expected one twin pair, found {len(twins)}")
    return twins[0], n + twins[0]


def entering_index(basis: Basis, just_left: int) -> int:
    twins = twin_indices(basis)
    if twins is None or just_left not in twins:
        raise ValueError(f"index {just_left} is not a twin index of the basis")
    return twins[1] if just_left == twins[0] else twins[0]


def _tie_key(n_pairs: int):
    def key(var: int):
        if var < n_pairs:
            return (var, 0)
        if var < 2 * n_pairs:
            return (var - n_pairs, 1)
        return (n_pairs, 2)
    return key


def leaving_index(system: LcpSystem, basis: Basis, entering: int,
                  backend: Backend | None = None) -> tuple[int, Fraction]:
    """Index leaving when ``entering`` is pivoted in, and the step length."""
    if entering in basis:
        raise ValueError(f"index {entering} is already basic")
    tab = _tableau(system, basis, backend)
    n = system.index_sets.n_pairs
    r, theta = tab.ratio_test(entering, prefer=2 * n, tie_key=_tie_key(n))
    return tab.basic[r], theta


def lemke_solve(instance: Instance, backend: Backend | None = None) -> tuple[SolutionState, PivotTrace]:
    """Solve the equilibrium problem; returns the state (omega = 0) and the pivot trace."""
    check_instance(instance)
    arbs = build_arborescences(instance)
    e = covering_vector(arbs)
    system = assemble(instance, e)
    ix = system.index_sets
    init = initial_basis(instance, arbs, ix)
    trace = PivotTrace(basis_size=len(init.basis))
    if init.solved:
        trace.solved_at_start = True
        trace.digests.append(init.basis.digest())
        return init.state, trace

    t0 = time.perf_counter()
    order = _initial_pivot_order(instance, arbs, ix, init)
    tab = _tableau(system, init.basis, backend, order)
    trace.inversion_seconds = time.perf_counter() - t0
    trace.backend = tab.backend.name
    if tab.value(ix.omega) != init.state.omega or not tab.is_feasible():
        raise InvariantError("starting tableau disagrees with the starting basis")

    n = ix.n_pairs
    tie_key = _tie_key(n)
    visited = {init.basis.indices}
    trace.digests.append(init.basis.digest())
    just_left = ix.phi_mu(*init.pair0)
    t0 = time.perf_counter()
    while True:
        entering = just_left - n if just_left >= n else just_left + n
        r, theta = tab.ratio_test(entering, prefer=ix.omega, tie_key=tie_key)
        leaving = tab.pivot(r, entering)
        basis = Basis(tab.basis, n)
        digest = basis.digest()
        trace.steps.append(PivotStep(entering, leaving, theta, digest))
        trace.digests.append(digest)
        if len(basis) != trace.basis_size:
            trace.size_constant = False
            raise InvariantError("basis size changed")
        if not tab.is_feasible():
            trace.all_feasible = False
            raise InvariantError(f"infeasible basis after pivot {trace.pivots}")
        partner = entering - n if entering >= n else entering + n
        if partner in basis:
            trace.all_complementary = False
            raise InvariantError(f"non-complementary basis after pivot {trace.pivots}")
        if basis.indices in visited:
            raise InvariantError(f"basis revisited after pivot {trace.pivots}")
        visited.add(basis.indices)
        if leaving == ix.omega:
            break
        just_left = leaving
    trace.pivot_seconds = time.perf_counter() - t0

    state = state_from_vector(ix, tab.values(ix.n_vars))
    if state.omega != 0:
        raise InvariantError("terminated with nonzero omega")
    return state, trace
