"""Exact optimization of non-negative polynomials over mixed-integer points of polytopes.

The library solves

    max f(x, z)   s.t.  A x + B z <= b,  x real, z integer,

for polynomials f with rational coefficients that are non-negative on the
feasible region, in fixed dimension, to any prescribed relative accuracy
(1 - epsilon), entirely in exact rational arithmetic.  Grid refinement
reduces the mixed problem to pure lattice problems; those are solved either
by exhaustive enumeration or through short rational generating functions
(Barvinok-style cone decompositions) with power-sum bounds.
"""

from .errors import (
    DimensionError,
    GuardError,
    InfeasibleError,
    MipolyError,
    NegativityError,
    SchemaError,
    SingularMatrixError,
    UnboundedError,
)
from .multipoly import MultiPoly
from .polytopes import Polyhedron
from .barvinok import Rgf, RgfTerm
from .intopt import Bounds, bounds, choose_k, enumerate_oracle, maximize_integer
from .mixedopt import MixedProblem, Solution, solve_mixed

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "DimensionError",
    "GuardError",
    "InfeasibleError",
    "MipolyError",
    "MixedProblem",
    "MultiPoly",
    "NegativityError",
    "Polyhedron",
    "Rgf",
    "RgfTerm",
    "SchemaError",
    "SingularMatrixError",
    "Solution",
    "UnboundedError",
    "bounds",
    "choose_k",
    "enumerate_oracle",
    "maximize_integer",
    "solve_mixed",
]
