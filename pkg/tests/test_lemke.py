import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from mnep.errors import InfiniteRayError, NotABasisError
from mnep.generate import gen_manhattan
from mnep.kernels import PYTHON
from mnep.lcp import assemble
from mnep.lemke import (Basis, _initial_pivot_order, _tableau, _tie_key, basic_solution,
                        build_arborescences, covering_vector, entering_index, initial_basis,
                        leaving_index, lemke_solve, state_from_vector, twin_indices)
from mnep.linalg import solve
from mnep.model import Arc, ClassSpec, Instance
from mnep.tableau import Tableau
from mnep.verify import verify_equilibrium

from instances import path_and_shortcut, random_small, two_arc
from oracles import gauss_jordan_solve


def test_arborescences():
    # breadth-first: t is reached from s through the shortcut before v is expanded
    assert build_arborescences(path_and_shortcut()).trees == (("sv", "st"),)
    path = Instance(("s", "v", "t"), (Arc("vt", "v", "t"), Arc("sv", "s", "v")),
                    (ClassSpec("s", "t", F(1), {"sv": F(1), "vt": F(1)}, {"sv": F(0), "vt": F(0)}),))
    assert build_arborescences(path).trees == (("sv", "vt"),)
    assert build_arborescences(two_arc(4)).trees == (("a1",),)
    arbs = build_arborescences(gen_manhattan(2, 2, seed=0))
    assert [len(t) for t in arbs.trees] == [3, 3]


def test_covering_vector_counts():
    inst = gen_manhattan(4, 2, seed=5)
    e = covering_vector(build_arborescences(inst))
    assert sum(e) == 2 * (48 - 16 + 1)
    assert covering_vector(build_arborescences(two_arc(4))) == (0, 1)


def test_initial_basis_with_negative_reduced_cost():
    inst = two_arc(4)
    init = initial_basis(inst, build_arborescences(inst))
    assert not init.solved
    assert init.pair0 == (0, "a2")
    assert init.basis.indices == frozenset({0, 4})  # x(a1) and omega
    assert init.state.x == {(0, "a1"): 4, (0, "a2"): 0}
    assert init.state.pi == {(0, "t"): 4}
    assert init.state.omega == 2


def test_initial_basis_already_optimal():
    inst = two_arc(1)
    init = initial_basis(inst, build_arborescences(inst))
    assert init.solved
    assert init.state.x == {(0, "a1"): 1, (0, "a2"): 0}
    assert init.state.mu[(0, "a2")] == 1
    assert init.state.omega == 0


def test_zero_demand_is_solved_at_start():
    inst = Instance(("s", "t"), (Arc("a", "s", "t"),),
                    (ClassSpec("s", "t", F(0), {"a": F(2)}, {"a": F(7, 3)}),))
    init = initial_basis(inst, build_arborescences(inst))
    assert init.solved and init.state.pi == {(0, "t"): F(7, 3)}


def _system(inst):
    return assemble(inst, covering_vector(build_arborescences(inst)))


def test_basic_solution_of_starting_basis():
    inst = two_arc(4)
    state = basic_solution(_system(inst), Basis(frozenset({0, 4}), 2))
    assert state.x == {(0, "a1"): 4, (0, "a2"): 0}
    assert state.mu == {(0, "a1"): 0, (0, "a2"): 0}
    assert (state.omega, state.pi[(0, "t")]) == (2, 4)


def test_basic_solution_without_omega():
    inst = two_arc(1)
    state = basic_solution(_system(inst), Basis(frozenset({0, 3}), 2))
    assert state.omega == 0 and state.mu[(0, "a2")] == 1


def test_singular_basis_is_rejected():
    # x(a1) and x(a2) leave both cost rows without a pivot for pi
    with pytest.raises(NotABasisError):
        basic_solution(_system(two_arc(4)), Basis(frozenset({2, 3}), 2))


def test_twin_and_entering_indices():
    b = Basis(frozenset({0, 4}), 2)
    assert twin_indices(b) == (1, 3)
    assert entering_index(b, 3) == 1
    assert entering_index(b, 1) == 3
    with pytest.raises(ValueError):
        entering_index(b, 0)
    assert twin_indices(Basis(frozenset({0, 3}), 2)) is None
    with pytest.raises(ValueError):
        twin_indices(Basis(frozenset({0, 2}), 2))


def test_leaving_index_hand_traced():
    inst = two_arc(4)
    assert leaving_index(_system(inst), Basis(frozenset({0, 4}), 2), 1) == (4, 1)


def test_infinite_ray_is_reported():
    tab = Tableau.build([[F(1), F(-1)]], [F(1)], [0], n_signed=2, backend=PYTHON)
    with pytest.raises(InfiniteRayError):
        tab.ratio_test(1)


@pytest.mark.parametrize("demand,x,pi_t,pivots", [(4, (3, 1), 3, 1), (1, (1, 0), 1, 0)])
def test_two_arc_solutions(demand, x, pi_t, pivots):
    state, trace = lemke_solve(two_arc(demand))
    assert (state.x[(0, "a1")], state.x[(0, "a2")]) == x
    assert state.pi[(0, "t")] == pi_t and state.omega == 0
    assert trace.pivots == pivots
    assert trace.solved_at_start == (pivots == 0)


def test_path_with_shortcut():
    state, _ = lemke_solve(path_and_shortcut())
    # path cost 2x + 2 equals shortcut cost 3y with x + y = 5
    assert (state.x[(0, "sv")], state.x[(0, "st")]) == (F(13, 5), F(12, 5))
    assert state.pi[(0, "t")] == F(36, 5)


def _walk(inst, backend=PYTHON):
    """Replay the pivot loop, recording the basis and values after every pivot."""
    arbs = build_arborescences(inst)
    system = assemble(inst, covering_vector(arbs))
    ix = system.index_sets
    init = initial_basis(inst, arbs, ix)
    if init.solved:
        return system, []
    tab = _tableau(system, init.basis, backend, _initial_pivot_order(inst, arbs, ix, init))
    steps = [(None, None, tab.basis, tab.values(ix.n_vars))]
    n = ix.n_pairs
    just_left = ix.phi_mu(*init.pair0)
    while True:
        entering = just_left - n if just_left >= n else just_left + n
        r, _ = tab.ratio_test(entering, prefer=ix.omega, tie_key=_tie_key(n))
        leaving = tab.pivot(r, entering)
        steps.append((entering, leaving, tab.basis, tab.values(ix.n_vars)))
        if leaving == ix.omega:
            break
        just_left = leaving
    return system, steps


@pytest.mark.parametrize("seed", range(3))
def test_incremental_tableau_matches_fresh_solves(seed):
    inst = gen_manhattan(3, 2, seed=seed)
    system, steps = _walk(inst)
    ix = system.index_sets
    full = system.full_matrix()
    for _, _, basis, values in steps:
        b = Basis(basis, ix.n_pairs)
        assert basic_solution(system, b, PYTHON) == _state(ix, values)
        cols = sorted(basis) + list(range(ix.n_signed, ix.n_vars))
        square = [[row[c] for c in cols] for row in full]
        ref = solve(square, system.rhs)
        assert ref == gauss_jordan_solve(square, system.rhs)
        assert [values[c] for c in cols] == ref


def _state(ix, values):
    return state_from_vector(ix, values)


@pytest.mark.parametrize("seed", range(4))
def test_pivots_are_reversible(seed):
    inst = gen_manhattan(3, 2, seed=seed)
    arbs = build_arborescences(inst)
    system = assemble(inst, covering_vector(arbs))
    ix = system.index_sets
    init = initial_basis(inst, arbs, ix)
    if init.solved:
        pytest.skip("no pivots")
    tab = _tableau(system, init.basis, PYTHON, _initial_pivot_order(inst, arbs, ix, init))
    n = ix.n_pairs
    key = _tie_key(n)
    just_left = ix.phi_mu(*init.pair0)
    while True:
        before = tab.basis
        entering = just_left - n if just_left >= n else just_left + n
        r, _ = tab.ratio_test(entering, prefer=ix.omega, tie_key=key)
        leaving = tab.pivot(r, entering)
        # pivoting the leaver straight back restores the previous basis
        r_back, _ = tab.ratio_test(leaving, prefer=ix.omega, tie_key=key)
        assert tab.pivot(r_back, leaving) == entering
        assert tab.basis == before
        tab.pivot(r, entering)
        if leaving == ix.omega:
            break
        just_left = leaving


def test_trace_invariants_on_grid():
    state, trace = lemke_solve(gen_manhattan(4, 2, seed=11))
    assert trace.pivots > 0
    assert len(set(trace.digests)) == len(trace.digests) == trace.pivots + 1
    assert trace.all_feasible and trace.all_complementary and trace.size_constant
    assert trace.basis_size == 2 * 48
    assert state.omega == 0
    assert verify_equilibrium(gen_manhattan(4, 2, seed=11), state).accepted


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_random_small_instances_reach_verified_equilibria(seed):
    inst = random_small(random.Random(seed), max_vertices=4, max_arcs=6, max_classes=3)
    state, trace = lemke_solve(inst)
    assert state.omega == 0
    report = verify_equilibrium(inst, state)
    assert report.accepted, report.violations
    assert report.complementarity_ok is True
    assert all(isinstance(v, F) for v in state.values())
