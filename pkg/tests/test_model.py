from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from mnep.errors import InstanceError
from mnep.model import (Arc, ClassSpec, Instance, SolutionState, aggregate_flow, arc_cost,
                        check_instance, format_rational, parse_rational, validate_instance)

from instances import path_and_shortcut, two_arc


@pytest.mark.parametrize("text,value", [
    ("7/2", F(7, 2)), ("-3", F(-3)), (" 4 / 6 ", F(2, 3)), ("+5", F(5)), ("0/9", F(0)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1.5", "1/0", "a", "1/-2", "3/", "1e3"])
def test_parse_rational_rejects(text):
    with pytest.raises(InstanceError):
        parse_rational(text)


def test_parse_rational_rejects_non_strings():
    with pytest.raises(InstanceError):
        parse_rational(3)


@given(st.fractions())
def test_rational_text_round_trip(value):
    assert parse_rational(format_rational(value)) == value


def test_subgraph_keeps_reachable_part():
    arcs = (Arc("a", "s", "t"), Arc("b", "t", "u"), Arc("c", "w", "s"))
    costs = {a: F(1) for a in "abc"}
    inst = Instance(("s", "t", "u", "w"), arcs, (ClassSpec("s", "t", F(1), costs, costs),))
    sub = inst.subgraphs[0]
    assert sub.vertices == ("s", "t", "u")
    # dead-end arcs out of reachable vertices stay in the class arc set
    assert sub.arcs == ("a", "b")


def test_valid_instances_pass():
    assert validate_instance(two_arc(4)) == []
    assert check_instance(path_and_shortcut()) is not None


def _with(**changes):
    base = dict(origin="s", destination="t", demand=F(1),
                alpha={"a1": F(1), "a2": F(1)}, beta={"a1": F(0), "a2": F(0)})
    base.update(changes)
    arcs = (Arc("a1", "s", "t"), Arc("a2", "s", "t"))
    return Instance(("s", "t"), arcs, (ClassSpec(**base),))


@pytest.mark.parametrize("changes,message", [
    (dict(origin="t", destination="t"), "coincide"),
    (dict(origin="x"), "does not exist"),
    (dict(demand=F(-1)), "nonnegative"),
    (dict(alpha={"a1": F(0), "a2": F(1)}), "alpha must be positive"),
    (dict(beta={"a1": F(-1), "a2": F(0)}), "beta must be nonnegative"),
    (dict(alpha={"a1": F(1)}), "missing cost"),
    (dict(origin="t", destination="s"), "unreachable"),
])
def test_validation_messages(changes, message):
    violations = validate_instance(_with(**changes))
    assert any(message in v for v in violations), violations
    with pytest.raises(InstanceError):
        check_instance(_with(**changes))


def test_structural_violations():
    costs = {"a": F(1)}
    loop = Instance(("s", "t"), (Arc("a", "s", "s"),), (ClassSpec("s", "t", F(1), costs, costs),))
    assert any("self-loop" in v for v in validate_instance(loop))
    dup = Instance(("s", "s"), (Arc("a", "s", "s"),), ())
    assert "duplicate vertex ids" in validate_instance(dup)
    dangling = Instance(("s",), (Arc("a", "s", "q"),), ())
    assert any("endpoint" in v for v in validate_instance(dangling))
    assert "at least one class is required" in validate_instance(Instance(("s", "t"), (), ()))


def test_arc_cost_and_aggregate():
    inst = two_arc(4)
    assert arc_cost(inst, 0, "a2", F(1)) == 3
    state = SolutionState(x={(0, "a1"): F(3), (0, "a2"): F(1)})
    assert aggregate_flow(state, inst) == {"a1": 3, "a2": 1}
    with pytest.raises(InstanceError):
        arc_cost(inst, 0, "zz", F(0))


def test_solution_state_support():
    state = SolutionState(x={(0, "a"): F(0), (0, "b"): F(1, 2), (1, "a"): F(2)})
    assert state.support(0) == {"b"}
    assert state.flow(1, "missing") == 0
