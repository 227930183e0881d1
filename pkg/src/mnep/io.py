"""JSON documents for instances and solutions.

All numbers are written as rational strings (``"7/2"``) so that a
write/read cycle is lossless. Output is deterministic: identical objects
serialize to identical bytes.
"""
from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .errors import InstanceError
from .model import (Arc, ClassSpec, Instance, SolutionState, aggregate_flow,
                    check_instance, format_rational, parse_rational)

log = logging.getLogger(__name__)


def _require(doc: Mapping, key: str, kind: type, where: str):
    if not isinstance(doc, Mapping) or key not in doc:
        raise InstanceError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise InstanceError(f"{where}: field {key!r} has the wrong type")
    return value


def _rational_map(doc: Any, where: str) -> dict[str, Fraction]:
    if not isinstance(doc, Mapping):
        raise InstanceError(f"{where}: expected an object")
    return {str(k): parse_rational(v) for k, v in doc.items()}


def instance_from_dict(doc: Mapping) -> Instance:
    """Build and validate an instance; costs on unreachable arcs are dropped."""
    vertices = tuple(str(v) for v in _require(doc, "vertices", list, "instance"))
    arcs = []
    for i, a in enumerate(_require(doc, "arcs", list, "instance")):
        where = f"arc #{i}"
        arcs.append(Arc(str(_require(a, "id", str, where)), str(_require(a, "tail", str, where)),
                        str(_require(a, "head", str, where))))
    known = {a.id for a in arcs}
    specs = []
    for k, c in enumerate(_require(doc, "classes", list, "instance")):
        where = f"class #{k}"
        alpha, beta = {}, {}
        for a, coef in _require(c, "costs", dict, where).items():
            if a not in known:
                raise InstanceError(f"{where}: cost given for unknown arc {a!r}")
            alpha[a] = parse_rational(_require(coef, "alpha", str, f"{where}, arc {a}"))
            beta[a] = parse_rational(_require(coef, "beta", str, f"{where}, arc {a}"))
        specs.append(ClassSpec(str(_require(c, "origin", str, where)),
                               str(_require(c, "destination", str, where)),
                               parse_rational(_require(c, "demand", str, where)), alpha, beta))
    instance = check_instance(Instance(vertices, tuple(arcs), tuple(specs)))
    subgraphs = instance.subgraphs
    trimmed = []
    for k, spec in enumerate(specs):
        reach = set(subgraphs[k].arcs)
        extra = sorted(set(spec.alpha) - reach)
        if extra:
            log.warning("class %d: ignoring costs on unreachable arcs %s", k, ", ".join(extra))
        trimmed.append(ClassSpec(spec.origin, spec.destination, spec.demand,
                                 {a: v for a, v in spec.alpha.items() if a in reach},
                                 {a: v for a, v in spec.beta.items() if a in reach}))
    return Instance(vertices, tuple(arcs), tuple(trimmed))


def instance_to_dict(instance: Instance) -> dict:
    """Canonical document: costs are written for the arcs each class can reach."""
    classes = []
    for k, spec in enumerate(instance.classes):
        costs = {a: {"alpha": format_rational(spec.alpha[a]), "beta": format_rational(spec.beta[a])}
                 for a in instance.subgraphs[k].arcs}
        classes.append({"origin": spec.origin, "destination": spec.destination,
                        "demand": format_rational(spec.demand), "costs": costs})
    return {
        "vertices": list(instance.vertices),
        "arcs": [{"id": a.id, "tail": a.tail, "head": a.head} for a in instance.arcs],
        "classes": classes,
    }


def solution_to_dict(instance: Instance, solution: SolutionState, meta: Mapping | None = None) -> dict:
    """Per-class flows, slacks and potentials plus the destination potential."""
    load = aggregate_flow(solution, instance)
    classes = []
    for k, spec in enumerate(instance.classes):
        sub = instance.subgraphs[k]
        entry = {
            "x": {a: format_rational(solution.flow(k, a)) for a in sub.arcs},
            "mu": {a: format_rational(solution.mu.get((k, a), Fraction(0))) for a in sub.arcs},
            "pi": {v: format_rational(solution.pi.get((k, v), Fraction(0))) for v in sub.vertices},
        }
        if solution.pi:
            entry["destination_potential"] = entry["pi"][spec.destination]
        classes.append(entry)
    return {
        "omega": format_rational(solution.omega),
        "classes": classes,
        "load": {a.id: format_rational(load[a.id]) for a in instance.arcs if a.id in load},
        "meta": dict(meta or {}),
    }


def solution_from_dict(instance: Instance, doc: Mapping) -> SolutionState:
    """Read a solution; ``mu``/``pi`` sections may be absent."""
    classes = _require(doc, "classes", list, "solution")
    if len(classes) != instance.n_classes:
        raise InstanceError(f"solution has {len(classes)} classes, instance has {instance.n_classes}")
    state = SolutionState()
    for k, entry in enumerate(classes):
        where = f"solution class #{k}"
        for a, v in _rational_map(_require(entry, "x", dict, where), where).items():
            state.x[(k, a)] = v
        for a, v in _rational_map(entry.get("mu", {}), where).items():
            state.mu[(k, a)] = v
        for u, v in _rational_map(entry.get("pi", {}), where).items():
            state.pi[(k, u)] = v
    if "omega" in doc:
        state.omega = parse_rational(doc["omega"])
    return state


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    except UnicodeDecodeError:
        raise InstanceError(f"{path}: not a text file") from None


def read_instance(path: str | Path) -> Instance:
    return instance_from_dict(_load_json(path))


def write_instance(path: str | Path, instance: Instance) -> None:
    Path(path).write_text(dumps(instance_to_dict(instance)))


def read_solution(path: str | Path, instance: Instance) -> SolutionState:
    return solution_from_dict(instance, _load_json(path))


def write_solution(path: str | Path, instance: Instance, solution: SolutionState,
                   meta: Mapping | None = None) -> None:
    Path(path).write_text(dumps(solution_to_dict(instance, solution, meta)))
