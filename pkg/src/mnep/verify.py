"""Independent equilibrium certification and a brute-force oracle.

An equilibrium is certified through shortest-path potentials: every arc that
carries flow of class k must be tight for the class-k potentials computed at
the current loads. No tolerances are involved; all arithmetic is exact.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import SizeGuardError
from .model import Instance, SolutionState, aggregate_flow, check_instance

BRUTE_FORCE_LIMIT = 16


def _arc_costs(instance: Instance, k: int, load: Mapping[str, Fraction]) -> dict[str, Fraction]:
    spec = instance.classes[k]
    return {a: spec.alpha[a] * load.get(a, Fraction(0)) + spec.beta[a]
            for a in instance.subgraphs[k].arcs}


def shortest_potentials(instance: Instance, k: int, load: Mapping[str, Fraction]) -> dict[str, Fraction]:
    """Least cost of an origin-v path for every v in ``V^k`` (FIFO label correcting)."""
    costs = _arc_costs(instance, k, load)
    out: dict[str, list[tuple[str, Fraction]]] = {}
    for a, c in costs.items():
        arc = instance.arc_by_id[a]
        out.setdefault(arc.tail, []).append((arc.head, c))
    origin = instance.classes[k].origin
    label = {origin: Fraction(0)}
    queue = deque([origin])
    queued = {origin}
    while queue:
        u = queue.popleft()
        queued.discard(u)
        for v, c in out.get(u, ()):
            cand = label[u] + c
            if v not in label or cand < label[v]:
                label[v] = cand
                if v not in queued:
                    queue.append(v)
                    queued.add(v)
    return label


def mincost_arcs(instance: Instance, k: int, load: Mapping[str, Fraction]) -> set[str]:
    costs = _arc_costs(instance, k, load)
    pot = shortest_potentials(instance, k, load)
    tight = set()
    for a, c in costs.items():
        arc = instance.arc_by_id[a]
        if pot[arc.head] - pot[arc.tail] == c:
            tight.add(a)
    return tight


@dataclass
class VerificationReport:
    flow_conservation_ok: bool = True
    nonnegativity_ok: bool = True
    support_condition_ok: bool = True
    complementarity_ok: bool | None = None
    potentials: dict[tuple[int, str], Fraction] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return (self.flow_conservation_ok and self.nonnegativity_ok
                and self.support_condition_ok and self.complementarity_ok is not False)

    def __bool__(self) -> bool:
        return self.accepted

    def lines(self) -> list[str]:
        dual = {None: "skipped", True: "ok", False: "FAILED"}[self.complementarity_ok]
        out = [
            f"flow conservation: {'ok' if self.flow_conservation_ok else 'FAILED'}",
            f"nonnegativity: {'ok' if self.nonnegativity_ok else 'FAILED'}",
            f"support within min-cost arcs: {'ok' if self.support_condition_ok else 'FAILED'}",
            f"cost rows and complementarity: {dual}",
        ]
        out.extend(f"violation: {v}" for v in self.violations)
        out.append("ACCEPTED" if self.accepted else "REJECTED")
        return out


def verify_equilibrium(instance: Instance, solution: SolutionState) -> VerificationReport:
    """Check conservation, sign and support conditions, plus duals when given."""
    report = VerificationReport()
    fail = report.violations.append

    valid_pairs = {(k, a) for k in range(instance.n_classes) for a in instance.subgraphs[k].arcs}
    for key in solution.x:
        if key not in valid_pairs:
            report.flow_conservation_ok = False
            fail(f"flow given for class {key[0]} on arc {key[1]} outside its reachable arcs")

    for key, v in solution.x.items():
        if v < 0:
            report.nonnegativity_ok = False
            fail(f"negative flow x[{key[0]},{key[1]}] = {v}")

    for k, spec in enumerate(instance.classes):
        balance = {v: Fraction(0) for v in instance.subgraphs[k].vertices}
        for a in instance.subgraphs[k].arcs:
            arc = instance.arc_by_id[a]
            f = solution.flow(k, a)
            balance[arc.tail] += f
            balance[arc.head] -= f
        for v, net in balance.items():
            want = Fraction(0)
            if v == spec.origin:
                want = Fraction(spec.demand)
            elif v == spec.destination:
                want = -Fraction(spec.demand)
            if net != want:
                report.flow_conservation_ok = False
                fail(f"class {k}: net outflow {net} at {v}, expected {want}")

    load = aggregate_flow(solution, instance)
    for k in range(instance.n_classes):
        pot = shortest_potentials(instance, k, load)
        for v, value in pot.items():
            report.potentials[(k, v)] = value
        tight = mincost_arcs(instance, k, load)
        for a in sorted(solution.support(k) - tight):
            report.support_condition_ok = False
            fail(f"class {k} uses arc {a} off every minimum-cost path")

    if solution.mu or solution.pi:
        report.complementarity_ok = _check_duals(instance, solution, load, fail)
    return report


def _check_duals(instance, solution, load, fail) -> bool:
    ok = True
    if solution.omega != 0:
        ok = False
        fail(f"omega = {solution.omega}, expected 0")
    for k, spec in enumerate(instance.classes):
        if solution.pi.get((k, spec.origin), Fraction(0)) != 0:
            ok = False
            fail(f"class {k}: origin potential is not zero")
        for a in instance.subgraphs[k].arcs:
            arc = instance.arc_by_id[a]
            mu = solution.mu.get((k, a), Fraction(0))
            x = solution.flow(k, a)
            if mu < 0:
                ok = False
                fail(f"negative mu[{k},{a}] = {mu}")
            if x * mu != 0:
                ok = False
                fail(f"complementarity fails on class {k}, arc {a}")
            pu = solution.pi.get((k, arc.tail), Fraction(0))
            pv = solution.pi.get((k, arc.head), Fraction(0))
            row = spec.alpha[a] * load[a] + spec.beta[a] + pu - pv - mu
            if row != 0:
                ok = False
                fail(f"cost row of class {k}, arc {a} has residual {row}")
    return ok


def brute_force_solve(instance: Instance, limit: int = BRUTE_FORCE_LIMIT) -> SolutionState:
    """Try every support family in turn; the first feasible one is an equilibrium.

    Families are enumerated as bit masks over the ``(class, arc)`` pairs in
    pair order, counting up from the empty family. Families leaving a class
    with positive demand without arcs are skipped without solving.
    """
    from .arrangement import support_feasibility

    check_instance(instance)
    pairs = [(k, a) for k in range(instance.n_classes) for a in instance.subgraphs[k].arcs]
    if len(pairs) > limit:
        raise SizeGuardError(f"{len(pairs)} class/arc pairs exceed the brute-force limit of {limit}")
    needs_arc = {k for k, spec in enumerate(instance.classes) if spec.demand > 0}
    for bits in itertools.product((False, True), repeat=len(pairs)):
        chosen = [p for p, b in zip(reversed(pairs), bits) if b]
        family = tuple(frozenset(a for j, a in chosen if j == k) for k in range(instance.n_classes))
        if any(not family[k] for k in needs_arc):
            continue
        state = support_feasibility(instance, family)
        if state is not None:
            return state
    raise AssertionError("no support family is feasible although an equilibrium exists")
