"""Integer H-representation polytopes with a continuous/integer variable split.

A Polyhedron stores rows @ (x, z) <= rhs with integer data, the first d1
coordinates continuous and the last d2 integer.  Boundedness is a hard input
requirement, checked at construction through the recession cone; all geometry
(vertices, bounding boxes, slices, the integral scaling constant, grid
rounding) is exact.
"""

from fractions import Fraction
from itertools import combinations
from math import ceil, floor, gcd, prod

from . import kernels
from .errors import DimensionError, GuardError, InfeasibleError, UnboundedError
from .linalg import det, solve_linear, solve_rectangular, vdot
from .errors import SingularMatrixError

VERTEX_DIM_GUARD = 4
ENUM_GUARD = 10**7


def vertex_enumerate(rows, rhs, dim):
    """Exact vertex set of {x : rows @ x <= rhs}: basic solutions of all
    dim-subsets of tight rows that satisfy every constraint.  Deduplicated,
    sorted lexicographically.  Assumes the feasible set is bounded."""
    if dim > VERTEX_DIM_GUARD:
        raise GuardError(f"vertex enumeration limited to dimension {VERTEX_DIM_GUARD}")
    if dim == 0:
        return ((),) if all(r >= 0 for r in rhs) else ()
    seen = {}
    for idx in combinations(range(len(rows)), dim):
        sub = [rows[i] for i in idx]
        sub_rhs = [rhs[i] for i in idx]
        try:
            x = solve_linear(sub, sub_rhs)
        except SingularMatrixError:
            continue
        if all(vdot(row, x) <= r for row, r in zip(rows, rhs)):
            seen[x] = None
    return tuple(sorted(seen))


class Polyhedron:
    """Bounded polyhedron {(x, z) : rows @ (x, z) <= rhs} with integer data."""

    __slots__ = ("d1", "d2", "rows", "rhs", "_vertices", "_delta")

    def __init__(self, d1, d2, rows, rhs, assume_bounded=False):
        if d1 < 0 or d2 < 0 or d1 + d2 == 0:
            raise DimensionError("need at least one variable")
        rows = tuple(tuple(int(a) for a in row) for row in rows)
        rhs = tuple(int(b) for b in rhs)
        if len(rows) != len(rhs) or any(len(row) != d1 + d2 for row in rows):
            raise DimensionError("constraint shape mismatch")
        object.__setattr__(self, "d1", d1)
        object.__setattr__(self, "d2", d2)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "_vertices", None)
        object.__setattr__(self, "_delta", None)
        if not assume_bounded and self._has_recession_direction():
            raise UnboundedError("constraints do not describe a polytope")

    def __setattr__(self, name, value):
        raise AttributeError("Polyhedron is immutable")

    # basic structure ----------------------------------------------------------

    @property
    def dim(self):
        return self.d1 + self.d2

    @property
    def a_block(self):
        return tuple(row[: self.d1] for row in self.rows)

    @property
    def b_block(self):
        return tuple(row[self.d1 :] for row in self.rows)

    def __repr__(self):
        return f"Polyhedron(d1={self.d1}, d2={self.d2}, m={len(self.rows)})"

    def _has_recession_direction(self):
        """True when {w : rows @ w <= 0} contains a nonzero vector, i.e. the
        feasible set is unbounded in some direction.  Decided exactly by
        enumerating vertices of the recession cone clipped to [-1, 1]^d."""
        d = self.dim
        ext_rows = list(self.rows)
        ext_rhs = [0] * len(self.rows)
        for i in range(d):
            e = [0] * d
            e[i] = 1
            ext_rows.append(tuple(e))
            ext_rhs.append(1)
            ext_rows.append(tuple(-v for v in e))
            ext_rhs.append(1)
        for v in vertex_enumerate(tuple(ext_rows), tuple(ext_rhs), d):
            if any(x != 0 for x in v):
                return True
        return False

    def contains(self, point):
        if len(point) != self.dim:
            raise DimensionError("point dimension mismatch")
        pt = [Fraction(x) for x in point]
        return all(vdot(row, pt) <= r for row, r in zip(self.rows, self.rhs))

    def with_extra(self, extra_rows, extra_rhs):
        """Intersect with additional constraints (stays bounded)."""
        return Polyhedron(
            self.d1,
            self.d2,
            self.rows + tuple(tuple(r) for r in extra_rows),
            self.rhs + tuple(extra_rhs),
            assume_bounded=True,
        )

    def restrict_box(self, lows, highs):
        rows = []
        rhs = []
        d = self.dim
        for i in range(d):
            e = [0] * d
            e[i] = 1
            rows.append(tuple(e))
            rhs.append(highs[i])
            rows.append(tuple(-v for v in e))
            rhs.append(-lows[i])
        return self.with_extra(rows, rhs)

    def slice_z(self, zvec):
        """Fix the integer block to zvec; the slice lives in the continuous
        variables only (d2 = 0)."""
        if len(zvec) != self.d2:
            raise DimensionError("integer block dimension mismatch")
        if self.d1 == 0:
            raise DimensionError("no continuous variables to slice onto")
        new_rhs = tuple(
            r - vdot(row[self.d1 :], zvec) for row, r in zip(self.rows, self.rhs)
        )
        return Polyhedron(self.d1, 0, self.a_block, new_rhs, assume_bounded=True)

    # vertices and boxes --------------------------------------------------------

    def vertices(self):
        """All vertices, lex sorted.  Raises InfeasibleError when empty."""
        if self._vertices is None:
            object.__setattr__(
                self, "_vertices", vertex_enumerate(self.rows, self.rhs, self.dim)
            )
        if not self._vertices:
            raise InfeasibleError("empty polytope")
        return self._vertices

    def is_empty(self):
        try:
            self.vertices()
        except InfeasibleError:
            return True
        return False

    def bounding_box(self):
        """Exact per-coordinate (min, max) over the polytope, from vertices."""
        verts = self.vertices()
        los = [min(v[i] for v in verts) for i in range(self.dim)]
        his = [max(v[i] for v in verts) for i in range(self.dim)]
        return tuple(los), tuple(his)

    def integer_box(self):
        los, his = self.bounding_box()
        return tuple(ceil(v) for v in los), tuple(floor(v) for v in his)

    def bounding_M(self):
        """Smallest M with |x_i| <= M over the polytope for every continuous
        coordinate (0 when there are none)."""
        verts = self.vertices()
        if self.d1 == 0:
            return Fraction(0)
        return max(abs(v[i]) for v in verts for i in range(self.d1))

    # lattice-related -----------------------------------------------------------

    def compute_delta(self):
        """Integral scaling constant: the lcm of |det S| over all nonsingular
        d1 x d1 row-submatrices S of the continuous block.  Scaling any
        z-slice of the polytope by this number makes it an integral polytope."""
        if self._delta is not None:
            return self._delta
        d1 = self.d1
        result = 1
        if d1 >= 1:
            a = self.a_block
            for idx in combinations(range(len(a)), d1):
                sub = [a[i] for i in idx]
                dd = det(sub)
                if dd != 0:
                    val = abs(int(dd))
                    result = result * val // gcd(result, val)
        object.__setattr__(self, "_delta", result)
        return result

    def enumerate_lattice_points(self):
        """All integer points, lex sorted.  Guarded: the bounding box may hold
        at most 10**7 cells."""
        try:
            los, his = self.integer_box()
        except InfeasibleError:
            return []
        cells = prod(max(0, hi - lo + 1) for lo, hi in zip(los, his))
        if cells > ENUM_GUARD:
            raise GuardError(
                f"enumeration needs {cells} cells (> {ENUM_GUARD}); "
                "use the barvinok backend"
            )
        if cells == 0:
            return []
        return kernels.enum_box_points(self.rows, self.rhs, los, his)


# Caratheodory-based grid rounding ---------------------------------------------


def convex_multipliers(vertices, xstar):
    """Express xstar as a convex combination of at most d+1 of the given
    vertices.  Deterministic: the first support in lexicographic vertex order
    whose (unique) multipliers are non-negative wins.  Returns a list of
    (vertex, multiplier) pairs; raises InfeasibleError when xstar is outside
    the hull."""
    verts = sorted(tuple(Fraction(c) for c in v) for v in vertices)
    if not verts:
        raise InfeasibleError("no vertices")
    d = len(verts[0])
    xs = tuple(Fraction(c) for c in xstar)
    for size in range(1, d + 2):
        for sub in combinations(verts, size):
            m = [[sub[j][i] for j in range(size)] for i in range(d)]
            m.append([Fraction(1)] * size)
            lam = solve_rectangular(m, list(xs) + [Fraction(1)])
            if lam is not None and all(l >= 0 for l in lam):
                return list(zip(sub, lam))
    raise InfeasibleError("point is outside the polytope")


def caratheodory_round(vertices, xstar, k):
    """Round a point of an integral polytope onto the (1/k)-grid while staying
    inside the polytope.

    Writes xstar = sum lam_i v_i over at most d+1 vertices, floors every
    multiplier except the first to a multiple of 1/k, and gives the slack to
    the first.  The result moves by at most (d+1) * max|vertex|_inf / k in the
    infinity norm.
    """
    if k < 1:
        raise ValueError("grid parameter must be positive")
    support = convex_multipliers(vertices, xstar)
    for v, _ in support:
        if any(Fraction(c).denominator != 1 for c in v):
            raise ValueError("polytope is not integral")
    rounded = []
    acc = Fraction(0)
    for v, lam in support[1:]:
        lp = Fraction(floor(k * lam), k)
        rounded.append((v, lp))
        acc += lp
    lam0 = Fraction(1) - acc
    rounded.append((support[0][0], lam0))
    d = len(xstar)
    out = [Fraction(0)] * d
    for v, lam in rounded:
        for i in range(d):
            out[i] += lam * Fraction(v[i])
    return tuple(out)


def grid_point_near(poly, xstar, zstar, m, delta):
    """Point of the (1/m)-grid inside the zstar-slice within distance delta of
    xstar (infinity norm).  Requires m to be a multiple of the integral
    scaling constant and the caller to have chosen m large enough, namely
    m/Delta >= (d1+1) * M / delta."""
    if len(xstar) != poly.d1 or len(zstar) != poly.d2:
        raise DimensionError("point split mismatch")
    point = tuple(Fraction(x) for x in xstar) + tuple(int(z) for z in zstar)
    if not poly.contains(point):
        raise InfeasibleError(f"({tuple(xstar)}, {tuple(zstar)}) is not feasible")
    dlt = poly.compute_delta()
    if m % dlt:
        raise ValueError(f"grid refinement {m} is not a multiple of {dlt}")
    k = m // dlt
    sl = poly.slice_z(zstar)
    scaled = Polyhedron(
        poly.d1,
        0,
        sl.rows,
        tuple(dlt * b for b in sl.rhs),
        assume_bounded=True,
    )
    target = tuple(dlt * Fraction(x) for x in xstar)
    y = caratheodory_round(scaled.vertices(), target, k)
    x = tuple(c / dlt for c in y)
    dist = max(abs(a - Fraction(b)) for a, b in zip(x, xstar))
    if dist > Fraction(delta):
        raise ValueError("rounding exceeded the requested distance; k too small")
    return x
