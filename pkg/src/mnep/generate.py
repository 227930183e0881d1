"""Random Manhattan (grid) instances."""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import InstanceError
from .model import Arc, ClassSpec, Instance

ALPHA_RANGE = (1, 10)
BETA_RANGE = (0, 100)
DEMAND_RANGE = (1, 10)
LATTICE = 100


def grid_graph(n: int) -> tuple[tuple[str, ...], tuple[Arc, ...]]:
    """n x n grid with both orientations of every edge.

    Vertices ``r{i}c{j}`` in row-major order; for each vertex its outgoing
    arcs are listed right, down, left, up.
    """
    if n < 2:
        raise InstanceError("grid side must be at least 2")
    vertices = tuple(f"r{i}c{j}" for i in range(n) for j in range(n))
    arcs = []
    for i in range(n):
        for j in range(n):
            for di, dj in ((0, 1), (1, 0), (0, -1), (-1, 0)):
                p, q = i + di, j + dj
                if 0 <= p < n and 0 <= q < n:
                    arcs.append(Arc(f"a{len(arcs)}", f"r{i}c{j}", f"r{p}c{q}"))
    return vertices, tuple(arcs)


def _lattice(rng: random.Random, low: int, high: int) -> Fraction:
    return Fraction(rng.randint(low * LATTICE, high * LATTICE), LATTICE)


def gen_manhattan(n: int, classes: int, seed: int) -> Instance:
    """Grid instance with costs drawn on a 1/100 lattice.

    alpha in [1, 10], beta in [0, 100], distinct origin/destination drawn
    uniformly, integer demand in [1, 10]. Deterministic in ``seed``.
    """
    if classes < 1:
        raise InstanceError("need at least one class")
    vertices, arcs = grid_graph(n)
    rng = random.Random(seed)
    specs = []
    for _ in range(classes):
        origin, destination = rng.sample(vertices, 2)
        demand = Fraction(rng.randint(*DEMAND_RANGE))
        alpha = {a.id: _lattice(rng, *ALPHA_RANGE) for a in arcs}
        beta = {a.id: _lattice(rng, *BETA_RANGE) for a in arcs}
        specs.append(ClassSpec(origin, destination, demand, alpha, beta))
    return Instance(vertices, arcs, tuple(specs))
