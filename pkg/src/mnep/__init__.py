"""Exact solvers for multiclass network equilibria with affine arc costs."""
from .arrangement import arrangement_solve, build_hyperplanes, enumerate_cells
from .errors import (InfiniteRayError, InstanceError, InvariantError, MnepError,
                     NotABasisError, SizeGuardError)
from .generate import gen_manhattan
from .lemke import lemke_solve
from .model import Arc, ClassSpec, Instance, SolutionState, aggregate_flow
from .verify import brute_force_solve, verify_equilibrium

__all__ = [
    "Arc", "ClassSpec", "Instance", "SolutionState", "aggregate_flow",
    "lemke_solve", "arrangement_solve", "brute_force_solve", "verify_equilibrium",
    "build_hyperplanes", "enumerate_cells", "gen_manhattan",
    "MnepError", "InstanceError", "SizeGuardError", "NotABasisError",
    "InfiniteRayError", "InvariantError",
]
