"""Certified maximization of non-negative integer polynomials over lattice
points of polytopes.

Two interchangeable backends compute the power sums S_k = sum f(a)^k over
P cap Z^d: exhaustive enumeration (exact oracle, desk-scale guard) and the
generating-function pipeline.  From S_k come the lower/upper bounds

    L_k = (S_k / n)^(1/k)      U_k = S_k^(1/k)

which sandwich the maximum; k-th roots are never materialized, every
comparison happens on exact k-th powers.  Solution extraction bisects the
bounding box, descending into the half with the larger upper bound, and
certifies the final point against an exact power-form inequality.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log, log2

from . import kernels
from .barvinok import (
    _apply_operator_raw,
    _operator_monomials,
    _raw_terms,
    _specialize_raw,
    count_lattice_points,
    rgf_of_polytope,
)
from .errors import InfeasibleError, NegativityError
from .multipoly import MultiPoly

BACKENDS = ("enumeration", "barvinok")


@dataclass(frozen=True)
class Bounds:
    """Sandwich bounds for max f over P cap Z^d, carried as exact k-th powers."""

    k: int
    count: int
    lower_kth_power: Fraction
    upper_kth_power: Fraction

    @property
    def lower_float(self):
        return _kth_root_float(self.lower_kth_power, self.k)

    @property
    def upper_float(self):
        return _kth_root_float(self.upper_kth_power, self.k)


def _kth_root_float(value, k):
    value = Fraction(value)
    if value == 0:
        return 0.0
    return 2.0 ** ((log2(value.numerator) - log2(value.denominator)) / k)


def _validate_backend(backend):
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}")


def _validate_objective(poly, f):
    if f.dim != poly.dim:
        raise ValueError("objective dimension does not match the polytope")
    if not f.has_integer_coefficients():
        raise ValueError("integer-coefficient objective required (clear denominators)")


def _enumerated_values(poly, f):
    points = poly.enumerate_lattice_points()
    coeffs = [int(c) for _, c in f.sorted_terms()]
    exps = [e for e, _ in f.sorted_terms()]
    if points:
        los = [min(p[i] for p in points) for i in range(poly.dim)]
        his = [max(p[i] for p in points) for i in range(poly.dim)]
    else:
        los = his = None
    values = kernels.eval_poly_points(coeffs, exps, points, los, his)
    return points, values


def power_sum(poly, f, k, backend="enumeration"):
    """(S_k, n) with S_k = sum of f(a)**k over a in P cap Z^d and n = |P cap Z^d|.

    The enumeration backend additionally reports any negative value it sees,
    since non-negativity of f is the caller's contract.
    """
    _validate_backend(backend)
    _validate_objective(poly, f)
    if k < 0:
        raise ValueError("k must be non-negative")
    if backend == "enumeration":
        points, values = _enumerated_values(poly, f)
        for p, v in zip(points, values):
            if v < 0:
                raise NegativityError(p, v)
        return sum(v**k for v in values) if k else len(points), len(points)
    n = count_lattice_points(poly)
    if k == 0:
        return n, n
    raw = _raw_terms(rgf_of_polytope(poly))
    monomials = _operator_monomials(f, poly.dim)
    for _ in range(k):
        raw = _apply_operator_raw(raw, monomials)
    total = _specialize_raw(poly.dim, raw)
    if total.denominator != 1:
        raise AssertionError("integer power sum expected")
    return int(total), n


def bounds(poly, f, k, backend="enumeration"):
    """Exact k-th-power bounds L_k^k = S_k/n and U_k^k = S_k; both backends
    produce identical values."""
    if k < 1:
        raise ValueError("k must be positive")
    s_k, n = power_sum(poly, f, k, backend)
    if n == 0:
        raise InfeasibleError("no lattice points")
    if s_k < 0:
        raise NegativityError(None, s_k)
    return Bounds(k=k, count=n, lower_kth_power=Fraction(s_k, n), upper_kth_power=Fraction(s_k))


def choose_k(epsilon, n):
    """Power for which the bounds close to within a (1+eps) factor:
    k = max(1, ceil((1 + 1/eps) * ln n)), nudged up until n <= (1+eps)**k
    holds as an exact rational inequality."""
    eps = Fraction(epsilon)
    if not 0 < eps <= 1:
        raise ValueError("epsilon must be in (0, 1]")
    if n < 1:
        raise ValueError("need at least one lattice point")
    if n == 1:
        return 1
    k = max(1, ceil(float((1 + 1 / eps)) * log(n)))
    while n > (1 + eps) ** k:
        k += 1
    return k


def enumerate_oracle(poly, f):
    """Exact maximization by exhaustive evaluation (guarded), lexicographic
    tie-break.  Returns (argmax point, maximum value, all values in point-lex
    order)."""
    if f.dim != poly.dim:
        raise ValueError("objective dimension does not match the polytope")
    points = poly.enumerate_lattice_points()
    if not points:
        raise InfeasibleError("no lattice points")
    if f.has_integer_coefficients():
        _, values = _enumerated_values(poly, f)
        values = [Fraction(v) for v in values]
    else:
        values = [f.eval(p) for p in points]
    best_i = 0
    for i in range(1, len(points)):
        if values[i] > values[best_i]:
            best_i = i
    return points[best_i], values[best_i], tuple(values)


def find_lattice_point(poly, backend="enumeration"):
    """Deterministic feasible lattice point (lex-least for enumeration,
    count-guided descent for the generating-function backend)."""
    _validate_backend(backend)
    if backend == "enumeration":
        points = poly.enumerate_lattice_points()
        if not points:
            raise InfeasibleError("no lattice points")
        return points[0]
    if count_lattice_points(poly) == 0:
        raise InfeasibleError("no lattice points")
    lo, hi = (list(t) for t in poly.integer_box())
    while any(h > l for l, h in zip(lo, hi)):
        axis, (alo, ahi) = _split_axis(lo, hi)
        h1, h2 = _halves(poly, lo, hi, axis, alo, ahi)
        if count_lattice_points(h1[0]) >= 1:
            lo, hi = h1[1], h1[2]
        else:
            lo, hi = h2[1], h2[2]
    point = tuple(lo)
    if not poly.contains(point):
        raise AssertionError("descent lost the lattice point")
    return point


def _split_axis(lo, hi):
    widths = [h - l for l, h in zip(lo, hi)]
    axis = max(range(len(widths)), key=lambda i: (widths[i], -i))
    return axis, (lo[axis], hi[axis])


def _halves(poly, lo, hi, axis, alo, ahi):
    """Closed halves of the box along one axis (overlapping at the midpoint
    when the width exceeds 1, disjoint singletons when the width is 1)."""
    if ahi - alo == 1:
        m1, m2 = alo, ahi
    else:
        mid = (alo + ahi) // 2
        m1, m2 = mid, mid
    lo1, hi1 = list(lo), list(hi)
    hi1[axis] = m1
    lo2, hi2 = list(lo), list(hi)
    lo2[axis] = m2
    p1 = poly.restrict_box(lo1, hi1)
    p2 = poly.restrict_box(lo2, hi2)
    return (p1, lo1, hi1), (p2, lo2, hi2)


def _provable_k(eps, steps):
    """Smallest k with 2**steps <= (1/(1-eps))**k: at that power the greedy
    descent below provably retains a (1-eps) fraction of the optimum."""
    if steps <= 0:
        return 1
    one_minus = 1 - eps
    est = max(1, ceil(steps * log(2) / -log(float(one_minus))))
    k = max(1, est - 2)
    while one_minus**k * 2**steps > 1:
        k += 1
    return k


def _descent(poly, f, k, lo, hi):
    """Greedy bisection: split the longest axis, keep the closed half with the
    larger k-th power sum (ties: lower half), switch to count-guided descent
    once a single lattice point remains."""
    lo, hi = list(lo), list(hi)
    while any(h > l for l, h in zip(lo, hi)):
        region = poly.restrict_box(lo, hi)
        cnt = count_lattice_points(region)
        if cnt <= 0:
            raise AssertionError("descent region lost all lattice points")
        axis, (alo, ahi) = _split_axis(lo, hi)
        h1, h2 = _halves(poly, lo, hi, axis, alo, ahi)
        if cnt == 1:
            pick = h1 if count_lattice_points(h1[0]) >= 1 else h2
        else:
            s1, _ = power_sum(h1[0], f, k, "barvinok")
            s2, _ = power_sum(h2[0], f, k, "barvinok")
            if s1 == 0 and s2 == 0:
                pick = h1 if count_lattice_points(h1[0]) >= 1 else h2
            else:
                pick = h1 if s1 >= s2 else h2
        lo, hi = pick[1], pick[2]
    return tuple(lo)


def maximize_integer(poly, f, epsilon, backend="enumeration"):
    """Feasible lattice point with f(point) >= (1 - epsilon) * max, exactly.

    Enumeration backend: exhaustive argmax (and negativity reporting).
    Generating-function backend: greedy bisection guided by upper bounds with
    an exact certificate f(point)^K >= (1-eps)^K * S_K; the descent power is
    escalated until the certificate passes, which provably happens no later
    than the power matching the number of bisection steps.
    """
    _validate_backend(backend)
    _validate_objective(poly, f)
    eps = Fraction(epsilon)
    if backend == "enumeration":
        if not 0 <= eps <= 1:
            raise ValueError("epsilon must be in [0, 1]")
        point, value, values = enumerate_oracle(poly, f)
        low = min(values)
        if low < 0:
            witness = poly.enumerate_lattice_points()[values.index(low)]
            raise NegativityError(witness, low)
        return point, value
    if not 0 < eps <= 1:
        raise ValueError("epsilon must be in (0, 1]")
    n = count_lattice_points(poly)
    if n == 0:
        raise InfeasibleError("no lattice points")
    lo, hi = poly.integer_box()
    steps = sum(ceil(log2(w)) + 1 for w in (h - l for l, h in zip(lo, hi)) if w >= 1)
    if eps == 1:
        point = find_lattice_point(poly, "barvinok")
        value = Fraction(f.eval_int(point))
        if value < 0:
            raise NegativityError(point, value)
        return point, value
    k_prov = _provable_k(eps, steps)
    k_cert = choose_k(eps, n)
    k_desc = min(4, k_prov)
    while True:
        point = _descent(poly, f, k_desc, lo, hi)
        value = f.eval_int(point)
        if value < 0:
            raise NegativityError(point, value)
        kk = k_desc if k_desc >= k_prov else max(k_cert, k_desc)
        s_kk, _ = power_sum(poly, f, kk, "barvinok")
        if Fraction(value) ** kk >= (1 - eps) ** kk * s_kk:
            return point, Fraction(value)
        if k_desc >= k_prov:
            raise AssertionError("certificate failed at the provable power")
        k_desc = min(k_desc * 2, k_prov)
