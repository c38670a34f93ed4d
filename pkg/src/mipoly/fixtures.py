"""Built-in problem families used by the CLI and the test-suite.

`parity_*`: the two-limit-point example — feasible set is the segment
{(x, 0) : 0 <= x <= 1} plus the isolated point (1/2, 1); grids of even
refinement see the point, odd ones do not, so grid optima alternate.

`an1_problem`: quadratic-residue decision instances.  Whether some positive
x < c has x^2 = a (mod b) is equivalent to whether the maximum of
K - (x^2 - a - b*y)^2 over the associated lattice rectangle equals K.
"""

from fractions import Fraction
from math import ceil, floor

from .mixedopt import MixedProblem
from .multipoly import MultiPoly
from .polytopes import Polyhedron


def parity_polytope():
    """z <= 2x, z <= 2(1-x), x >= 0, 0 <= z <= 1 with x continuous, z integer."""
    rows = (
        (-2, 1),   # z <= 2x
        (2, 1),    # z <= 2 - 2x
        (-1, 0),   # x >= 0
        (0, -1),   # z >= 0
        (0, 1),    # z <= 1
    )
    rhs = (0, 2, 0, 0, 1)
    return Polyhedron(1, 1, rows, rhs)


def parity_objective(shift=0):
    """2z - x (+ optional constant shift to keep it non-negative)."""
    return MultiPoly(2, {(0, 1): Fraction(2), (1, 0): Fraction(-1), (0, 0): Fraction(shift)})


def parity_problem(epsilon=Fraction(1, 4), shift=1):
    return MixedProblem(parity_polytope(), parity_objective(shift), Fraction(epsilon))


def an1_bounds(a, b, c):
    """Integer rectangle 1 <= x <= c-1, ceil((1-a)/b) <= y <= floor(((c-1)^2-a)/b)."""
    ylo = ceil(Fraction(1 - a, b))
    yhi = floor(Fraction((c - 1) ** 2 - a, b))
    return 1, c - 1, ylo, yhi


def an1_problem(a, b, c, offset=None, epsilon=None):
    """Maximization instance deciding whether x^2 = a (mod b) has a solution
    with 0 < x < c.

    Returns (MixedProblem, K): the objective is K - (x^2 - a - b*y)^2 with
    K = (max |x^2 - a - b*y| over the rectangle)^2 + 1, which keeps it
    positive everywhere; the instance is solvable exactly when the optimum
    equals K.  With epsilon < 1/K (the default), any (1-epsilon)-approximate
    value decides solvability after exact re-evaluation.
    """
    if a < 1 or b < 1 or c < 2:
        raise ValueError("need positive a, b and c >= 2")
    xlo, xhi, ylo, yhi = an1_bounds(a, b, c)
    if ylo > yhi:
        raise ValueError("empty rectangle: no candidate y values")
    if offset is None:
        corners = [
            x * x - a - b * y for x in (xlo, xhi) for y in (ylo, yhi)
        ]
        k_value = max(abs(v) for v in corners) ** 2 + 1
    else:
        k_value = int(offset)
    rows = (
        (1, 0),
        (-1, 0),
        (0, 1),
        (0, -1),
    )
    rhs = (xhi, -xlo, yhi, -ylo)
    poly = Polyhedron(0, 2, rows, rhs)
    # K - (x^2 - a - b y)^2 expanded
    terms = {
        (4, 0): Fraction(-1),
        (2, 1): Fraction(2 * b),
        (2, 0): Fraction(2 * a),
        (0, 2): Fraction(-b * b),
        (0, 1): Fraction(-2 * a * b),
        (0, 0): Fraction(k_value - a * a),
    }
    if epsilon is None:
        epsilon = Fraction(1, k_value + 1)
    prob = MixedProblem(poly, MultiPoly(2, terms), Fraction(epsilon))
    return prob, k_value
