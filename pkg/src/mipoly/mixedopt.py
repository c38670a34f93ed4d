"""The mixed-integer approximation scheme.

Pipeline: clear coefficient denominators, compute the geometric constants
(integral scaling Delta, coordinate bound M, coefficient bound C, local
Lipschitz constant L), shortcut constant objectives, pick the grid refinement

    m = Delta * ceil((2/eps) * (D*d1*Delta)**D * L * (d1+1) * M)

and solve the resulting pure lattice problem to relative accuracy eps/2.
The grid is fine enough that it carries a point within delta of the true
optimizer, where

    delta = eps / (2 * (D*d1*Delta)**D * L),

so L*delta <= (eps/2) * (optimal value) whenever the objective is not
constant on the feasible region; combining both halves gives the exact
(1 - eps) guarantee.  Everything is rational arithmetic; the certificate is
returned with the solution.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import DimensionError, InfeasibleError, NegativityError
from .intopt import find_lattice_point, maximize_integer, power_sum
from .multipoly import MultiPoly
from .polytopes import Polyhedron


@dataclass(frozen=True)
class MixedProblem:
    polyhedron: Polyhedron
    objective: MultiPoly
    epsilon: Fraction

    def __post_init__(self):
        if self.objective.dim != self.polyhedron.dim:
            raise DimensionError("objective dimension must match the polytope")
        eps = Fraction(self.epsilon)
        if not 0 < eps < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        object.__setattr__(self, "epsilon", eps)


@dataclass(frozen=True)
class Solution:
    x: tuple
    z: tuple
    value: Fraction
    certificate: dict = field(compare=False)


@dataclass(frozen=True)
class GridProblem:
    """Integer reformulation of one grid refinement: substituting x = xt / m
    turns the mixed constraints into A xt + m B z <= m b over lattice points,
    and the objective into an integer-coefficient polynomial whose values are
    m**D times the original ones."""

    polytope: Polyhedron
    objective: MultiPoly
    m: int
    degree: int


def build_grid_problem(prob, m):
    """Pure lattice problem equivalent to restricting the continuous block to
    the (1/m)-grid.  The objective must already have integer coefficients."""
    if not prob.objective.has_integer_coefficients():
        raise ValueError("clear objective denominators before grid scaling")
    poly = prob.polyhedron
    m = int(m)
    if m < 1:
        raise ValueError("grid refinement must be positive")
    d1 = poly.d1
    rows = tuple(
        tuple(row[:d1]) + tuple(m * x for x in row[d1:]) for row in poly.rows
    )
    rhs = tuple(m * b for b in poly.rhs)
    scaled = Polyhedron(0, poly.dim, rows, rhs, assume_bounded=True)
    objective = prob.objective.grid_scale(d1, m)
    return GridProblem(
        polytope=scaled, objective=objective, m=m, degree=prob.objective.total_degree
    )


def _unscale_point(poly, point, m):
    x = tuple(Fraction(point[i], m) for i in range(poly.d1))
    z = tuple(int(point[i]) for i in range(poly.d1, poly.dim))
    return x, z


def solve_grid(prob, m, eps_grid, backend="enumeration"):
    """(x, z, value) with value >= (1 - eps_grid) times the optimum over
    P cap ((1/m) Z^{d1} x Z^{d2}); value is the exact original objective."""
    f_int, mult = prob.objective.clear_denominators()
    scaled_prob = MixedProblem(prob.polyhedron, f_int, prob.epsilon)
    gp = build_grid_problem(scaled_prob, m)
    point, scaled_value = maximize_integer(gp.polytope, gp.objective, eps_grid, backend)
    x, z = _unscale_point(prob.polyhedron, point, m)
    value = prob.objective.eval(x + z)
    if value * (m**gp.degree) * mult != scaled_value:
        raise AssertionError("grid scaling inconsistency")
    return x, z, value


def is_constant_on_feasible(prob, backend="enumeration"):
    """Decide whether the objective is constant on the whole mixed-integer
    feasible set; returns (flag, value or None).

    Constancy on P cap (R^{d1} x Z^{d2}) is equivalent to constancy on the
    grid with refinement D*d1*Delta, and constancy of the finitely many grid
    values is in turn equivalent to the exact variance identity
    n * sum f^2 = (sum f)^2 over the scaled lattice problem.
    """
    f_int, mult = prob.objective.clear_denominators()
    poly = prob.polyhedron
    scaled_prob = MixedProblem(poly, f_int, prob.epsilon)
    if f_int.total_degree == 0:
        value = (
            Fraction(next(iter(f_int.terms.values())), mult) if f_int.terms else Fraction(0)
        )
        grid = build_grid_problem(scaled_prob, max(1, poly.compute_delta()))
        _, n = power_sum(grid.polytope, grid.objective, 0, backend)
        if n == 0:
            raise InfeasibleError("empty feasible set")
        return True, value
    if poly.d1 == 0:
        target, m0, deg = poly, 1, 0
        objective = f_int
    else:
        m0 = f_int.total_degree * poly.d1 * poly.compute_delta()
        grid = build_grid_problem(scaled_prob, m0)
        target, objective, deg = grid.polytope, grid.objective, grid.degree
    s1, n = power_sum(target, objective, 1, backend)
    if n == 0:
        raise InfeasibleError("empty feasible set")
    s2, _ = power_sum(target, objective, 2, backend)
    if n * s2 == s1 * s1:
        return True, Fraction(s1, n) / (m0**deg * mult)
    return False, None


def optimum_lower_bound(prob):
    """(D * d1 * Delta)**(-D): a positive lower bound on the maximum of any
    integer-coefficient objective that is non-negative and not constant on
    the feasible region (1 for the pure lattice case)."""
    f = prob.objective
    if not f.has_integer_coefficients():
        raise ValueError("integer-coefficient objective required")
    if f.total_degree == 0:
        raise ValueError("bound is vacuous for a constant objective")
    if prob.polyhedron.d1 == 0:
        return Fraction(1)
    base = f.total_degree * prob.polyhedron.d1 * prob.polyhedron.compute_delta()
    return Fraction(1, base**f.total_degree)


def solve_mixed(prob, backend="enumeration"):
    """Certified (1 - epsilon)-approximate solution of the mixed problem.

    The objective must be non-negative on the feasible region (contract);
    every explicitly evaluated point is checked and a violation aborts with
    the witness.
    """
    poly = prob.polyhedron
    eps = prob.epsilon
    f_int, mult = prob.objective.clear_denominators()
    delta_scale = poly.compute_delta()

    def _certificate(m, delta, grid_eps, constants):
        c, l, bigm = constants
        return {
            "Delta": delta_scale,
            "M": bigm,
            "C": c,
            "L": l,
            "delta": delta,
            "m": m,
            "grid_epsilon": grid_eps,
            "multiplier": mult,
        }

    if poly.d1 == 0:
        point, scaled_value = maximize_integer(poly, f_int, eps, backend)
        value = Fraction(scaled_value, mult)
        if value < 0:
            raise NegativityError(point, value)
        bigm = Fraction(0)
        cert = _certificate(1, Fraction(0), eps, (f_int.max_abs_coeff, Fraction(0), bigm))
        return Solution(x=(), z=tuple(point), value=value, certificate=cert)

    constant, cvalue = is_constant_on_feasible(prob, backend)
    if constant:
        grid = build_grid_problem(MixedProblem(poly, f_int, eps), delta_scale)
        point = find_lattice_point(grid.polytope, backend)
        x, z = _unscale_point(poly, point, delta_scale)
        if cvalue < 0:
            raise NegativityError(x + z, cvalue)
        cert = _certificate(
            delta_scale, Fraction(0), eps, (f_int.max_abs_coeff, Fraction(0), poly.bounding_M())
        )
        return Solution(x=x, z=z, value=cvalue, certificate=cert)

    degree = f_int.total_degree
    bigm = poly.bounding_M()
    bigc = f_int.max_abs_coeff
    lip = f_int.lipschitz_constant(bigm)
    base = Fraction((degree * poly.d1 * delta_scale) ** degree)
    delta = eps / (2 * base * lip)
    inner = (2 / eps) * base * lip * (poly.d1 + 1) * bigm
    m = delta_scale * max(1, ceil(inner))
    if 2 * delta * lip * base != eps:
        raise AssertionError("grid tolerance identity violated")
    x, z, value = solve_grid(prob, m, eps / 2, backend)
    if value < 0:
        raise NegativityError(x + z, value)
    cert = _certificate(m, delta, eps / 2, (bigc, lip, bigm))
    return Solution(x=x, z=z, value=value, certificate=cert)
