import pytest

from mnep.errors import InstanceError
from mnep.generate import gen_manhattan, grid_graph
from mnep.model import validate_instance


@pytest.mark.parametrize("n,vertices,arcs", [(2, 4, 8), (4, 16, 48), (6, 36, 120), (8, 64, 224)])
def test_grid_sizes(n, vertices, arcs):
    V, A = grid_graph(n)
    assert (len(V), len(A)) == (vertices, arcs)


def test_grid_has_both_orientations():
    _, A = grid_graph(3)
    pairs = {(a.tail, a.head) for a in A}
    assert all((h, t) in pairs for t, h in pairs)
    assert len(pairs) == len(A)


def test_generated_parameters_in_range():
    inst = gen_manhattan(4, 3, seed=2)
    assert not validate_instance(inst)
    for spec in inst.classes:
        assert spec.origin != spec.destination
        assert 1 <= spec.demand <= 10 and spec.demand.denominator == 1
        for a in spec.alpha:
            assert 1 <= spec.alpha[a] <= 10 and 100 % spec.alpha[a].denominator == 0
            assert 0 <= spec.beta[a] <= 100 and 100 % spec.beta[a].denominator == 0


def test_generation_is_seeded():
    assert gen_manhattan(3, 2, seed=4) == gen_manhattan(3, 2, seed=4)
    assert gen_manhattan(3, 2, seed=4) != gen_manhattan(3, 2, seed=5)


@pytest.mark.parametrize("n,k", [(1, 1), (3, 0)])
def test_generator_rejects_bad_arguments(n, k):
    with pytest.raises(InstanceError):
        gen_manhattan(n, k, seed=0)
