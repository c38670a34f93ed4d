"""Exact linear algebra over integers and rationals.

Matrices are tuples/lists of row tuples, vectors are flat tuples/lists.
Everything is exact: integer entries stay integers (fraction-free Bareiss
for determinants), rational entries use fractions.Fraction.  No floats.
"""

from fractions import Fraction
from math import gcd

from .errors import DimensionError, SingularMatrixError


def vdot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def vneg(v):
    return tuple(-a for a in v)


def is_zero_vector(v):
    return all(a == 0 for a in v)


def vec_lcm(values):
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def primitive_vector(v):
    """Divide an integer vector by the gcd of its entries (input must be nonzero)."""
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(a // g for a in v)


def mat_vec(m, x):
    return tuple(vdot(row, x) for row in m)


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def transpose(m):
    return tuple(zip(*m))


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _check_square(m):
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise DimensionError("square matrix required")
    return n


def det(m):
    """Exact determinant.

    Integer matrices go through fraction-free Bareiss elimination; matrices
    with rational entries are scaled row-wise to integers first and the scale
    divided back out.
    """
    n = _check_square(m)
    scale = 1
    a = []
    for row in m:
        if all(isinstance(x, int) for x in row):
            a.append(list(row))
        else:
            fr = [Fraction(x) for x in row]
            mult = vec_lcm([f.denominator for f in fr])
            scale *= mult
            a.append([int(f * mult) for f in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale)


def solve_linear(m, rhs):
    """Solve m x = rhs exactly for square nonsingular m.

    Raises DimensionError on shape mismatch and SingularMatrixError when the
    matrix is singular.
    """
    n = len(m)
    if n == 0 or any(len(row) != n for row in m) or len(rhs) != n:
        raise DimensionError("need a square system with matching right-hand side")
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise SingularMatrixError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pval = a[col][col]
        a[col] = [x / pval for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(row[n] for row in a)


def solve_rectangular(m, rhs):
    """Solve an (e x u) exact linear system, u <= e allowed to be inconsistent.

    Returns the unique solution tuple, or None when the system is inconsistent
    or underdetermined (rank < number of unknowns).
    """
    rows = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(m, rhs)]
    if not rows:
        return None
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    if len(pivots) < ncols:
        return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][ncols]
    return tuple(sol)


def mat_inverse(m):
    n = _check_square(m)
    cols = [solve_linear(m, tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def adjugate(m):
    """Adjugate by cofactor expansion: adj(m) @ m = m @ adj(m) = det(m) * I."""
    n = _check_square(m)
    if n == 1:
        return ((1,),)
    rows = [list(r) for r in m]

    def minor(i, j):
        return [row[:j] + row[j + 1 :] for k, row in enumerate(rows) if k != i]

    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sign = -1 if (i + j) % 2 else 1
            cof = sign * det(minor(i, j))
            adj[j][i] = int(cof) if cof.denominator == 1 else cof
    return tuple(tuple(r) for r in adj)


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with g = x*a + y*b, g >= 0."""
    prevx, x = 1, 0
    prevy, y = 0, 1
    while b != 0:
        q, r = divmod(a, b)
        x, prevx = prevx - q * x, x
        y, prevy = prevy - q * y, y
        a, b = b, r
    if a < 0:
        return -a, -prevx, -prevy
    return a, prevx, prevy


def unimodular_for_vector(g):
    """Unimodular column transform clearing an integer vector to (gcd, 0, ..., 0).

    Returns (U, gamma) with U integer, |det U| = 1 and g @ U = (gamma, 0, ..., 0),
    gamma = gcd(g) > 0.  Needed to substitute away one integer equality while
    keeping a bijection of lattices.
    """
    d = len(g)
    if is_zero_vector(g):
        raise ValueError("zero vector")
    cols = [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    w = list(g)
    for j in range(1, d):
        a, b = w[0], w[j]
        if b == 0:
            continue
        gg, x, y = xgcd(a, b)
        c0 = [x * cols[0][i] + y * cols[j][i] for i in range(d)]
        cj = [(-b // gg) * cols[0][i] + (a // gg) * cols[j][i] for i in range(d)]
        cols[0], cols[j] = c0, cj
        w[0], w[j] = gg, 0
    if w[0] < 0:
        cols[0] = [-x for x in cols[0]]
        w[0] = -w[0]
    u = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
    return u, w[0]


def lll_reduce(basis, delta=Fraction(3, 4)):
    """LLL-reduce a basis of integer row vectors (reduction parameter 3/4).

    Output generates the same lattice; deterministic for a fixed input order.
    Linearly dependent input raises SingularMatrixError.
    """
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n == 0:
        return ()

    def gso():
        bstar = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                denom = vdot(bstar[j], bstar[j])
                mu[i][j] = Fraction(vdot(b[i], bstar[j]), 1) / denom
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            if all(x == 0 for x in v):
                raise SingularMatrixError("basis vectors are linearly dependent")
            bstar.append(v)
        return bstar, mu

    bstar, mu = gso()
    k = 1
    while k < n:
        changed = False
        for j in range(k - 1, -1, -1):
            q = mu[k][j]
            r = (q.numerator * 2 + q.denominator) // (2 * q.denominator)  # round half up
            if r != 0:
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                changed = True
        if changed:
            bstar, mu = gso()
        lhs = vdot(bstar[k], bstar[k])
        rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * vdot(bstar[k - 1], bstar[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu = gso()
            k = max(k - 1, 1)
    return tuple(tuple(row) for row in b)
