"""Problem instances, class subgraphs and candidate solutions.

Every scalar is a :class:`fractions.Fraction`. Vertex and arc ids are opaque
strings; wherever an ordering is needed, file order (the order of
``Instance.vertices`` and ``Instance.arcs``) is used.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from .errors import InstanceError

Rational = Fraction

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*")


def parse_rational(text: str) -> Fraction:
    """Read ``"p"`` or ``"p/q"`` (q > 0) into a canonical Fraction."""
    if not isinstance(text, str):
        raise InstanceError(f"expected a rational string, got {text!r}")
    match = _RATIONAL_RE.fullmatch(text)
    if match is None:
        raise InstanceError(f"malformed rational {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise InstanceError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Arc:
    id: str
    tail: str
    head: str


@dataclass(frozen=True, eq=True)
class ClassSpec:
    """Origin, destination, demand and affine cost coefficients of one class.

    ``alpha`` and ``beta`` map arc ids to coefficients of ``alpha*x + beta``.
    """

    origin: str
    destination: str
    demand: Fraction
    alpha: Mapping[str, Fraction] = field(default_factory=dict)
    beta: Mapping[str, Fraction] = field(default_factory=dict)


@dataclass(frozen=True)
class ClassSubgraph:
    k: int
    vertices: tuple[str, ...]
    arcs: tuple[str, ...]


@dataclass(frozen=True, eq=True)
class Instance:
    vertices: tuple[str, ...]
    arcs: tuple[Arc, ...]
    classes: tuple[ClassSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "classes", tuple(self.classes))

    @cached_property
    def arc_by_id(self) -> dict[str, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def subgraphs(self) -> tuple[ClassSubgraph, ...]:
        return tuple(reachable_subgraph(self, k) for k in range(len(self.classes)))

    @property
    def n_classes(self) -> int:
        return len(self.classes)


def reachable_subgraph(instance: Instance, k: int) -> ClassSubgraph:
    """Vertices reachable from the origin of class ``k`` and the arcs leaving them."""
    origin = instance.classes[k].origin
    out: dict[str, list[Arc]] = {}
    for arc in instance.arcs:
        out.setdefault(arc.tail, []).append(arc)
    seen = {origin}
    queue = deque([origin])
    while queue:
        u = queue.popleft()
        for arc in out.get(u, ()):
            if arc.head not in seen:
                seen.add(arc.head)
                queue.append(arc.head)
    vertices = tuple(v for v in instance.vertices if v in seen)
    arcs = tuple(a.id for a in instance.arcs if a.tail in seen)
    return ClassSubgraph(k, vertices, arcs)


def validate_instance(instance: Instance) -> list[str]:
    """Return a list of human-readable violations; empty means valid."""
    violations = []
    vertex_set = set(instance.vertices)
    if len(vertex_set) != len(instance.vertices):
        violations.append("duplicate vertex ids")
    if len({a.id for a in instance.arcs}) != len(instance.arcs):
        violations.append("duplicate arc ids")
    for arc in instance.arcs:
        if arc.tail not in vertex_set or arc.head not in vertex_set:
            violations.append(f"arc {arc.id}: endpoint does not exist")
        elif arc.tail == arc.head:
            violations.append(f"arc {arc.id}: self-loops are not allowed")
    if not instance.classes:
        violations.append("at least one class is required")
    if violations:
        return violations

    for k, spec in enumerate(instance.classes):
        if spec.origin not in vertex_set:
            violations.append(f"class {k}: origin {spec.origin!r} does not exist")
            continue
        if spec.destination not in vertex_set:
            violations.append(f"class {k}: destination {spec.destination!r} does not exist")
            continue
        if spec.origin == spec.destination:
            violations.append(f"class {k}: origin and destination coincide")
        if spec.demand < 0:
            violations.append(f"class {k}: demand must be nonnegative")
        sub = instance.subgraphs[k]
        if spec.destination not in sub.vertices:
            violations.append(f"class {k}: destination unreachable")
        for a in sub.arcs:
            if a not in spec.alpha or a not in spec.beta:
                violations.append(f"class {k}, arc {a}: missing cost coefficients")
                continue
            if spec.alpha[a] <= 0:
                violations.append(f"class {k}, arc {a}: alpha must be positive")
            if spec.beta[a] < 0:
                violations.append(f"class {k}, arc {a}: beta must be nonnegative")
    return violations


def check_instance(instance: Instance) -> Instance:
    violations = validate_instance(instance)
    if violations:
        raise InstanceError("invalid instance: " + "; ".join(violations))
    return instance


def arc_cost(instance: Instance, k: int, a: str, load: Fraction) -> Fraction:
    if a not in instance.subgraphs[k].arcs:
        raise InstanceError(f"arc {a!r} is not reachable by class {k}")
    spec = instance.classes[k]
    return spec.alpha[a] * load + spec.beta[a]


@dataclass
class SolutionState:
    """Candidate ``(x, mu, pi, omega)``; keys are ``(class, arc)`` / ``(class, vertex)``.

    Missing entries read as zero. ``mu`` and ``pi`` may be left empty when only
    flows are known.
    """

    x: dict[tuple[int, str], Fraction] = field(default_factory=dict)
    mu: dict[tuple[int, str], Fraction] = field(default_factory=dict)
    pi: dict[tuple[int, str], Fraction] = field(default_factory=dict)
    omega: Fraction = Fraction(0)

    def flow(self, k: int, a: str) -> Fraction:
        return self.x.get((k, a), Fraction(0))

    def support(self, k: int) -> set[str]:
        return {a for (j, a), v in self.x.items() if j == k and v > 0}

    def values(self):
        yield from self.x.values()
        yield from self.mu.values()
        yield from self.pi.values()
        yield self.omega


def aggregate_flow(solution: SolutionState, instance: Instance | None = None) -> dict[str, Fraction]:
    """Total flow per arc; with ``instance`` every arc gets an entry."""
    totals: dict[str, Fraction] = {}
    if instance is not None:
        totals = {a.id: Fraction(0) for a in instance.arcs}
    for (_, a), value in solution.x.items():
        totals[a] = totals.get(a, Fraction(0)) + value
    return totals
