"""Short rational generating functions for the lattice points of polytopes.

A bounded polytope's lattice-point sum  sum_{a in P cap Z^d} z^a  is encoded
as a signed sum of terms

    coeff * z^u / prod_j (1 - z^{v_j})^{mult_j},

built from the tangent cone at each vertex via signed decomposition into
unimodular cones.  Differential operators turn the plain sum into
sum f(a) z^a for a polynomial weight f, and specialization at z = 1 extracts
the total exactly.

All triangulation and signed decomposition happens on polar (dual) cones;
lower-dimensional cones produced there polarize back to cones containing
lines, whose generating functions vanish identically, so discarding them is
sound.  This is the single place where that convention is applied.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import ceil, gcd, prod

from . import kernels
from .errors import DimensionError, GuardError
from .linalg import (
    adjugate,
    det,
    identity,
    lll_reduce,
    mat_inverse,
    primitive_vector,
    solve_linear,
    solve_rectangular,
    transpose,
    unimodular_for_vector,
    vdot,
)
from .multipoly import MultiPoly
from .polytopes import Polyhedron

RGF_DIM_GUARD = 3

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


@dataclass(frozen=True)
class RgfTerm:
    """One signed rational-function term coeff * z^u / prod (1 - z^v)^mult."""

    sign: int
    coeff: Fraction
    u: tuple
    dens: tuple  # ((vector, multiplicity), ...) sorted by vector

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.coeff <= 0:
            raise ValueError("coeff must be positive; fold signs into sign")
        for v, mult in self.dens:
            if all(x == 0 for x in v):
                raise ValueError("zero vector in denominator")
            if len(v) != len(self.u):
                raise DimensionError("denominator dimension mismatch")
            if mult < 1:
                raise ValueError("multiplicity must be >= 1")

    def weight(self):
        return self.sign * self.coeff


@dataclass(frozen=True)
class Rgf:
    """Signed sum of rational-function terms encoding a weighted lattice sum."""

    dim: int
    terms: tuple

    def __post_init__(self):
        for t in self.terms:
            if len(t.u) != self.dim:
                raise DimensionError("term dimension mismatch")


def make_rgf(dim, weighted_terms):
    """Merge {(u, dens): signed weight} (or an iterable of such pairs) into a
    canonical Rgf: like terms combined, zeros dropped, fixed sort order."""
    merged = {}
    items = weighted_terms.items() if isinstance(weighted_terms, dict) else weighted_terms
    for (u, dens), w in items:
        key = (tuple(u), tuple((tuple(v), int(m)) for v, m in dens))
        acc = merged.get(key, Fraction(0)) + Fraction(w)
        if acc == 0:
            merged.pop(key, None)
        else:
            merged[key] = acc
    terms = []
    for (u, dens) in sorted(merged):
        w = merged[(u, dens)]
        sign = 1 if w > 0 else -1
        terms.append(RgfTerm(sign=sign, coeff=abs(w), u=u, dens=dens))
    return Rgf(dim, tuple(terms))


def dump_rgf(g):
    """Diagnostic dump, one term per line: `sign; u; [(v, mult), ...]` with the
    coefficient appended only when it differs from 1."""
    lines = []
    for t in g.terms:
        dens = ", ".join(f"({v}, {m})" for v, m in t.dens)
        line = f"{t.sign:+d}; {t.u}; [{dens}]"
        if t.coeff != 1:
            line += f"; {t.coeff}"
        lines.append(line)
    return "\n".join(lines)


# --- generic directions ------------------------------------------------------


def generic_direction(dim, vectors):
    """Deterministic integer direction lam = (1, q, q^2, ...) with
    <lam, v> != 0 for every given vector; q runs over small primes."""
    for q in _PRIMES:
        lam = tuple(q**i for i in range(dim))
        if all(vdot(lam, v) != 0 for v in vectors):
            return lam
    raise AssertionError("no generic direction among prime powers")


# --- cone geometry -----------------------------------------------------------


def rays_of_inequality_cone(normals, dim):
    """Primitive extreme rays of the pointed cone {x : n.x <= 0 for n in normals}.

    Each ray is tight on dim-1 independent normals; candidates come from exact
    nullspace vectors of those subsets, oriented to satisfy every inequality.
    """
    normals = [tuple(n) for n in normals if any(x != 0 for x in n)]
    if dim == 1:
        rays = set()
        for n in normals:
            rays.add((-1,) if n[0] > 0 else (1,))
        if len(rays) != 1:
            raise ValueError("cone is not pointed")
        return tuple(sorted(rays))
    found = {}
    for sub in combinations(range(len(normals)), dim - 1):
        if dim == 2:
            (n,) = (normals[i] for i in sub)
            cand = (-n[1], n[0])
        else:
            n1, n2 = (normals[i] for i in sub)
            cand = (
                n1[1] * n2[2] - n1[2] * n2[1],
                n1[2] * n2[0] - n1[0] * n2[2],
                n1[0] * n2[1] - n1[1] * n2[0],
            )
        if all(x == 0 for x in cand):
            continue
        cand = primitive_vector(cand)
        for ray in (cand, tuple(-x for x in cand)):
            if all(vdot(n, ray) <= 0 for n in normals):
                found[ray] = None
    return tuple(sorted(found))


def _in_cone(target, gens, dim):
    """Exact membership of an integer vector in the cone generated by gens."""
    for size in range(1, dim + 1):
        for sub in combinations(gens, size):
            m = [[Fraction(g[i]) for g in sub] for i in range(dim)]
            t = solve_rectangular(m, target)
            if t is not None and all(x >= 0 for x in t):
                return True
    return False


def extreme_generators(gens, dim):
    """Prune a generating set of a pointed cone to its extreme rays."""
    uniq = sorted({primitive_vector(g) for g in gens})
    keep = list(uniq)
    i = 0
    while i < len(keep):
        others = keep[:i] + keep[i + 1 :]
        if others and _in_cone(keep[i], others, dim):
            keep.pop(i)
        else:
            i += 1
    return tuple(keep)


def _strict_positive_functional(gens, dim):
    """Rational w with <w, g> >= 1 for every generator (exists iff the cone is
    pointed).  Found by growing a box until the exact feasibility region has a
    vertex; deterministic."""
    from .polytopes import vertex_enumerate

    box = 1
    while box <= 2**20:
        rows = [tuple(-x for x in g) for g in gens]
        rhs = [-1] * len(gens)
        for i in range(dim):
            e = [0] * dim
            e[i] = 1
            rows.append(tuple(e))
            rhs.append(box)
            rows.append(tuple(-v for v in e))
            rhs.append(box)
        verts = vertex_enumerate(tuple(rows), tuple(rhs), dim)
        if verts:
            return verts[0]
        box *= 2
    raise ValueError("cone is not pointed")


def _cyclic_order_3d(gens):
    """Generators of a pointed full-dimensional 3D cone in convex cyclic order.

    The cone's cross-section along a strictly positive functional is a convex
    polygon; its vertices are ordered by exact angular comparison around the
    polygon centroid in an affine chart."""
    w = _strict_positive_functional(gens, 3)
    drop = next(i for i in range(3) if w[i] != 0)
    keep = [i for i in range(3) if i != drop]
    pts = []
    for g in gens:
        h = vdot(w, g)
        pts.append((Fraction(g[keep[0]], 1) / h, Fraction(g[keep[1]], 1) / h))
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    rel = [(p[0] - cx, p[1] - cy) for p in pts]

    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    def compare(i, j):
        a, b = rel[i], rel[j]
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = a[0] * b[1] - a[1] * b[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        raise AssertionError("distinct extreme rays share a direction")

    order = sorted(range(len(gens)), key=cmp_to_key(compare))
    return [gens[i] for i in order]


def _fan_triangulate(gens, dim):
    """Split a pointed full-dimensional cone into simplicial pieces.

    Valid here only because callers work on the polar side, where the facets
    shared between fan pieces polarize back to non-pointed cones and drop out.
    """
    if len(gens) < dim:
        raise AssertionError("cone is not full-dimensional")
    if len(gens) == dim:
        return [tuple(gens)]
    if dim != 3:
        raise AssertionError("only 3D cones can need triangulation")
    ordered = _cyclic_order_3d(gens)
    pieces = []
    for i in range(1, len(ordered) - 1):
        pieces.append((ordered[0], ordered[i], ordered[i + 1]))
    return pieces


def polar_cone(gens):
    """Polar of a full-dimensional simplicial cone, as primitive generators
    paired index-by-index with the input (the i-th output ray is orthogonal to
    every input ray but the i-th, with negative pairing)."""
    n = len(gens)
    inv = mat_inverse(gens)
    out = []
    for i in range(n):
        col = [-inv[r][i] for r in range(n)]
        mult = 1
        for x in col:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        out.append(primitive_vector(tuple(int(x * mult) for x in col)))
    return tuple(out)


# --- signed decomposition into unimodular cones ------------------------------


def _short_vector(gens, index):
    """Nonzero integer vector w = sum gamma_i * gens_i with max|gamma_i| < 1,
    so replacing any generator with w strictly decreases the cone index.
    Tries an LLL-reduced candidate first, then falls back to exhaustive
    search inside the open parallelepiped (Minkowski guarantees a hit)."""
    d = len(gens)
    dd = det(gens)
    adj = adjugate(gens)
    denom = int(dd)
    reduced = lll_reduce(adj)
    cands = sorted(reduced, key=lambda row: (max(abs(x) for x in row), row))
    for lam in cands:
        if all(x == 0 for x in lam):
            continue
        if max(abs(x) for x in lam) >= abs(denom):
            continue
        w_scaled = [vdot(lam, tuple(g[j] for g in gens)) for j in range(d)]
        if any(x % denom for x in w_scaled):
            raise AssertionError("lattice arithmetic error in short vector")
        w = tuple(x // denom for x in w_scaled)
        if any(w):
            return w
    # exhaustive fallback: w = gamma @ gens with gamma in (-1, 1)^d
    radius = [sum(abs(g[k]) for g in gens) for k in range(d)]
    if prod(2 * r + 1 for r in radius) > 10**6:
        raise GuardError("short-vector search space too large")
    best = None
    gt = transpose(gens)
    point = [-r for r in radius]
    while True:
        w = tuple(point)
        if any(w):
            gamma = solve_linear(gt, w)
            norm = max(abs(x) for x in gamma)
            if norm < 1 and (best is None or (norm, w) < best):
                best = (norm, w)
        i = 0
        while i < d and point[i] == radius[i]:
            point[i] = -radius[i]
            i += 1
        if i == d:
            break
        point[i] += 1
    if best is None:
        raise AssertionError("Minkowski vector not found")
    return best[1]


def _signed_decompose(gens):
    """Signed decomposition of a full-dimensional simplicial cone into
    unimodular cones, recursing on strictly decreasing index.  The identity
    [cone] = sum sign_i [cone_i] holds modulo lower-dimensional cones."""
    out = []
    stack = [(1, tuple(tuple(g) for g in gens))]
    while stack:
        sign, g = stack.pop()
        dd = det(g)
        idx = abs(int(dd))
        if idx == 0:
            raise ValueError("degenerate cone")
        if idx == 1:
            out.append((sign, g))
            continue
        w = _short_vector(g, idx)
        gamma = solve_linear(transpose(g), w)
        if all(gi <= 0 for gi in gamma):
            # the replacement identity needs w outside -cone: flip it
            w = tuple(-x for x in w)
            gamma = tuple(-gi for gi in gamma)
        for i, gi in enumerate(gamma):
            if gi == 0:
                continue
            child = g[:i] + (w,) + g[i + 1 :]
            stack.append((sign if gi > 0 else -sign, child))
    return out


def unimodular_decompose(gens):
    """Decompose a full-dimensional simplicial cone into signed unimodular
    cones (performed on the polar side, polarized back)."""
    gens = tuple(tuple(int(x) for x in g) for g in gens)
    if det(gens) == 0:
        raise ValueError("cone must be simplicial and full-dimensional")
    dual = polar_cone(gens)
    return [(sign, polar_cone(piece)) for sign, piece in _signed_decompose(dual)]


# --- tangent cones and the generating function -------------------------------


def tangent_cones(poly):
    """(vertex, primitive edge directions) for every vertex, vertices in lex
    order.  Empty polytope gives an empty list."""
    from .errors import InfeasibleError

    try:
        verts = poly.vertices()
    except InfeasibleError:
        return []
    out = []
    for v in verts:
        tight = [
            row
            for row, b in zip(poly.rows, poly.rhs)
            if any(x != 0 for x in row) and vdot(row, v) == b
        ]
        out.append((v, rays_of_inequality_cone(tight, poly.dim)))
    return out


def _reduce_to_fulldim(poly):
    """Strip implicit equalities with lattice-preserving unimodular substitutions.

    Returns one of
      ("empty",)                      feasible set is empty
      ("nolattice",)                  affine hull carries no lattice points
      ("point", x0)                   feasible set's lattice is the single point x0
      ("ok", x0, basis, reduced)      points of poly = x0 + basis @ points of reduced,
                                      with reduced full-dimensional
    where basis columns form a lattice basis of the affine hull's direction.
    """
    d = poly.dim
    x0 = tuple(0 for _ in range(d))
    basis = identity(d)
    cur = poly
    while True:
        dcur = cur.dim
        try:
            verts = cur.vertices()
        except Exception:
            return ("empty",)
        imp = None
        for row, b in zip(cur.rows, cur.rhs):
            if all(x == 0 for x in row):
                continue
            if all(vdot(row, v) == b for v in verts):
                imp = (row, b)
                break
        if imp is None:
            return ("ok", x0, basis, cur)
        g, beta = imp
        u, gamma = unimodular_for_vector(g)
        if beta % gamma:
            return ("nolattice",)
        y1 = beta // gamma
        shift = tuple(u[i][0] * y1 for i in range(dcur))
        ncols = [[u[i][j] for i in range(dcur)] for j in range(1, dcur)]
        new_rows = []
        new_rhs = []
        feasible = True
        for row, b in zip(cur.rows, cur.rhs):
            nb = b - vdot(row, shift)
            nr = tuple(vdot(row, col) for col in ncols)
            if all(x == 0 for x in nr):
                if nb < 0:
                    feasible = False
                    break
                continue
            new_rows.append(nr)
            new_rhs.append(nb)
        if not feasible:
            return ("empty",)
        x0 = tuple(a + vdot(basis[i], shift) for i, a in enumerate(x0))
        basis = tuple(
            tuple(vdot(basis[i], col) for col in ncols) for i in range(d)
        )
        if dcur - 1 == 0:
            return ("point", x0)
        cur = Polyhedron(0, dcur - 1, new_rows, new_rhs, assume_bounded=True)


def _vertex_terms(poly, vertex):
    """Rgf terms of the tangent cone at one vertex of a full-dimensional
    polytope: polar generators are the tight constraint rows; triangulation
    and signed decomposition run on that polar side."""
    d = poly.dim
    tight = [
        primitive_vector(row)
        for row, b in zip(poly.rows, poly.rhs)
        if any(x != 0 for x in row) and vdot(row, vertex) == b
    ]
    dual_gens = extreme_generators(tight, d)
    terms = []
    for piece in _fan_triangulate(dual_gens, d):
        for sign, dual_uni in _signed_decompose(piece):
            gens = polar_cone(dual_uni)
            gamma = solve_linear(transpose(gens), vertex)
            u = tuple(
                sum(ceil(gamma[j]) * gens[j][i] for j in range(d)) for i in range(d)
            )
            dens = tuple(sorted((tuple(g), 1) for g in gens))
            terms.append(((u, dens), sign))
    return terms


def rgf_of_polytope(poly):
    """Generating function of the lattice points of a bounded polytope, with
    each variable of the polytope treated as a lattice variable."""
    if poly.dim > RGF_DIM_GUARD:
        raise GuardError(f"generating functions limited to dimension {RGF_DIM_GUARD}")
    reduced = _reduce_to_fulldim(poly)
    if reduced[0] in ("empty", "nolattice"):
        return Rgf(poly.dim, ())
    if reduced[0] == "point":
        return make_rgf(poly.dim, {(reduced[1], ()): 1})
    _, x0, basis, cur = reduced
    raw = []
    for v in cur.vertices():
        raw.extend(_vertex_terms(cur, v))
    if cur.dim == poly.dim:
        return make_rgf(poly.dim, raw)
    # push the reduced-space terms forward through points = x0 + basis @ y
    pushed = []
    for (u, dens), sign in raw:
        u2 = tuple(x0[i] + vdot(basis[i], u) for i in range(poly.dim))
        dens2 = tuple(
            sorted(
                (tuple(vdot(basis[i], v) for i in range(poly.dim)), m)
                for v, m in dens
            )
        )
        pushed.append(((u2, dens2), sign))
    return make_rgf(poly.dim, pushed)


def count_lattice_points(poly):
    """|P cap Z^d| via the generating function specialized at z = 1."""
    val = specialize_at_one(rgf_of_polytope(poly))
    if val.denominator != 1 or val < 0:
        raise AssertionError(f"lattice count came out as {val}")
    return int(val)


# --- weighting by a polynomial ------------------------------------------------


def _raw_terms(g):
    """{(u, dens): weight} form of an Rgf; weights stay plain ints when the
    coefficients are integral so the hot loops run on native integers."""
    out = {}
    for t in g.terms:
        w = int(t.coeff) * t.sign if t.coeff.denominator == 1 else t.coeff * t.sign
        out[(t.u, t.dens)] = out.get((t.u, t.dens), 0) + w
    return out


def _operator_monomials(f, dim):
    if not isinstance(f, MultiPoly) or f.dim != dim:
        raise DimensionError("operator dimension mismatch")
    if not f.has_integer_coefficients():
        raise ValueError("operator polynomial must have integer coefficients")
    return [(int(c), e) for e, c in f.sorted_terms()]


def _apply_operator_raw(weighted, monomials):
    acc = {}
    for (u, dens), w0 in weighted.items():
        images = kernels.op_term_images(u, dens, monomials)
        for key, w in images.items():
            prev = acc.get(key, 0) + w0 * w
            if prev:
                acc[key] = prev
            else:
                acc.pop(key, None)
    return acc


def apply_polynomial_operator(g, f):
    """Turn sum w(a) z^a into sum f(a) w(a) z^a by applying the operator
    f(z1 d/dz1, ..., zd d/dzd) term by term, merging like terms after every
    elementary step.  Requires integer coefficients (clear denominators
    first); denominator multiplicities grow by at most deg f."""
    monomials = _operator_monomials(f, g.dim)
    return make_rgf(g.dim, _apply_operator_raw(_raw_terms(g), monomials))


# --- specialization at z = 1 ---------------------------------------------------


def specialize_at_one(g):
    """Exact value of the encoded lattice sum.

    Substitutes z_j = (1 + t)^{lam_j} along a generic integer direction; every
    term becomes a Laurent series in t with pole order equal to its total
    denominator multiplicity, and the answer is the sum of the constant
    coefficients.  Series products within each denominator-support group are
    built incrementally over the multiplicity lattice.
    """
    return _specialize_raw(g.dim, _raw_terms(g))


def _specialize_raw(dim, weighted):
    if not weighted:
        return Fraction(0)
    all_vecs = [v for (_, dens) in weighted for v, _ in dens]
    lam = generic_direction(dim, all_vecs) if all_vecs else (1,) * dim
    groups = {}
    for (u, dens), w in weighted.items():
        support = tuple(v for v, _ in dens)
        groups.setdefault(support, []).append((u, dens, w))
    total = Fraction(0)
    for support in sorted(groups):
        terms = groups[support]
        if not support:
            for _, _, w in terms:
                total += w
            continue
        cs = [vdot(lam, v) for v in support]
        max_pole = max(sum(m for _, m in dens) for _, dens, _ in terms)
        base_factors = []
        for c in cs:
            coeffs = kernels.ser_binom(c, max_pole + 1)[1:]  # C(c, i+1), i >= 0
            den, nums = kernels.ser_inv(1, coeffs, max_pole)
            base_factors.append((den, [-x for x in nums]))
        cache = {}

        def g_profile(profile):
            cached = cache.get(profile)
            if cached is not None:
                return cached
            if all(m == 1 for m in profile):
                den, nums = base_factors[0]
                for f_den, f_nums in base_factors[1:]:
                    den, nums = kernels.ser_mul(den, nums, f_den, f_nums, max_pole)
            else:
                j = next(i for i, m in enumerate(profile) if m > 1)
                pred = profile[:j] + (profile[j] - 1,) + profile[j + 1 :]
                p_den, p_nums = g_profile(pred)
                den, nums = kernels.ser_mul(
                    p_den, p_nums, base_factors[j][0], base_factors[j][1], max_pole
                )
            cache[profile] = (den, nums)
            return den, nums

        for u, dens, w in sorted(terms, key=lambda item: tuple(m for _, m in item[1])):
            profile = tuple(m for _, m in dens)
            pole = sum(profile)
            den, nums = g_profile(profile)
            binom = kernels.ser_binom(vdot(lam, u), pole)
            num, dd = kernels.ser_coeff_conv(den, nums, binom, pole)
            total += w * Fraction(num, dd)
    return total


# --- truncated expansion (verification helper) --------------------------------


def expansion_in_box(g, lows, highs, direction=None):
    """Coefficient of z^p for every lattice point p of a box, by expanding all
    terms consistently with respect to one generic direction (denominators
    with positive pairing are flipped first).

    For the generating function of a polytope the result is the true weighted
    lattice sum for any generic direction.  For a single cone it is the
    cone's own expansion along `direction`; pass one that pairs negatively
    with the cone's generators to read off its lattice points directly."""
    out = {}
    if not g.terms:
        return out
    all_vecs = [v for t in g.terms for v, _ in t.dens]
    if direction is not None:
        lam = tuple(direction)
        if any(vdot(lam, v) == 0 for v in all_vecs):
            raise ValueError("direction is not generic for this Rgf")
    else:
        lam = generic_direction(g.dim, all_vecs) if all_vecs else (1,) * g.dim
    d = g.dim
    points = kernels.enum_box_points((), (), lows, highs)
    for t in g.terms:
        w = t.weight()
        u = list(t.u)
        flipped = []
        for v, m in t.dens:
            if vdot(lam, v) > 0:
                if m % 2:
                    w = -w
                u = [a - m * b for a, b in zip(u, v)]
                flipped.append((tuple(-x for x in v), m))
            else:
                flipped.append((v, m))
        for p in points:
            target = [a - b for a, b in zip(p, u)]
            if not flipped:
                if any(target):
                    continue
                out[p] = out.get(p, Fraction(0)) + w
                continue
            m = [[Fraction(v[i]) for v, _ in flipped] for i in range(d)]
            sol = solve_rectangular(m, target)
            if sol is None:
                continue
            if any(x.denominator != 1 or x < 0 for x in sol):
                continue
            mult = Fraction(1)
            for n, (_, mm) in zip(sol, flipped):
                # weight C(n + mm - 1, mm - 1) from the power-series expansion
                n = int(n)
                num = 1
                den = 1
                for i in range(1, mm):
                    num *= n + i
                    den *= i
                mult *= Fraction(num, den)
            out[p] = out.get(p, Fraction(0)) + w * mult
    return {p: c for p, c in out.items() if c != 0}
