"""Pure-Python kernels.  Reference implementation of the hot inner loops.

The compiled twin in _speed.pyx implements the same functions with identical
semantics and bit-identical outputs; mipoly.kernels picks one at import time.

Truncated power series are represented as (den, nums): a positive integer
common denominator and a list of integer numerators, coefficient of t**i
being nums[i] / den.  Series are always normalized (gcd of all numerators
and the denominator is 1) so representations are unique.
"""

from math import gcd

IMPL_NAME = "pure"


# --- truncated integer-scaled power series ---------------------------------


def ser_normalize(den, nums):
    g = den
    for x in nums:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        den //= g
        nums = [x // g for x in nums]
    return den, list(nums)


def ser_mul(a_den, a_nums, b_den, b_nums, trunc):
    """Product truncated to trunc+1 coefficients."""
    n = min(trunc + 1, len(a_nums) + len(b_nums) - 1) if a_nums and b_nums else 0
    out = [0] * n
    for i, x in enumerate(a_nums):
        if x == 0 or i >= n:
            continue
        jmax = min(len(b_nums), n - i)
        for j in range(jmax):
            y = b_nums[j]
            if y:
                out[i + j] += x * y
    return ser_normalize(a_den * b_den, out)


def ser_inv(a_den, a_nums, trunc):
    """Reciprocal series, truncated; a_nums[0] must be nonzero.

    Uses the standard recurrence b_n = -(sum_{i>=1} a_i b_{n-i}) / a_0 with all
    intermediate values kept integer by scaling with powers of a_0.
    """
    a0 = a_nums[0]
    if a0 == 0:
        raise ZeroDivisionError("series has zero constant term")
    n = trunc + 1
    # c[i] = (1/A)_i * a0**(i+1) is integral: c_k = -sum A_i c_{k-i} a0**(i-1).
    c = [0] * n
    c[0] = 1
    for k in range(1, n):
        acc = 0
        power = 1
        for i in range(1, k + 1):
            if i < len(a_nums) and a_nums[i]:
                acc += a_nums[i] * c[k - i] * power
            power *= a0
        c[k] = -acc
    # (1/A)_i = c[i] / a0**(i+1); common denominator a0**n, then scale by a_den.
    out = [0] * n
    power = 1
    for i in range(n - 1, -1, -1):
        out[i] = c[i] * power * a_den
        power *= a0
    den = a0**n
    if den < 0:
        den = -den
        out = [-x for x in out]
    return ser_normalize(den, out)


def ser_binom(n, trunc):
    """(1 + t)**n truncated: generalized binomial coefficients, exact ints."""
    out = [1]
    c = 1
    for i in range(1, trunc + 1):
        c = c * (n - i + 1)
        if c % i:
            raise AssertionError("binomial of integer argument must be integral")
        c //= i
        out.append(c)
    return out


def ser_coeff_conv(a_den, a_nums, b_nums, order):
    """Numerator/denominator pair for the t**order coefficient of the product of
    (a_den, a_nums) with an integer series b_nums."""
    acc = 0
    lo = max(0, order - len(b_nums) + 1)
    hi = min(order, len(a_nums) - 1)
    for i in range(lo, hi + 1):
        x = a_nums[i]
        if x:
            acc += x * b_nums[order - i]
    return acc, a_den


# --- one application of a polynomial differential operator -----------------


def op_term_images(u, dens, monomials):
    """Apply the operator f(z1 d/dz1, ..., zd d/dzd) to one rational-function
    term z**u / prod((1 - z**v) ** mult).

    monomials is [(coeff, beta)] for f = sum coeff * x**beta with integer
    coefficients.  Returns {(u', dens'): integer weight}: the image is the sum
    of weight * z**u' / prod((1 - z**v')**mult') over the keys.  A single
    z_i d/dz_i application maps a term to (1 + #denominators) terms; like
    terms are merged after every step.
    """
    out = {}
    for coeff, beta in monomials:
        cur = {(tuple(u), tuple(dens)): 1}
        for i, e in enumerate(beta):
            for _ in range(e):
                nxt = {}
                for (uu, dd), w in cur.items():
                    ui = uu[i]
                    if ui:
                        key = (uu, dd)
                        nxt[key] = nxt.get(key, 0) + w * ui
                    for j, (v, mult) in enumerate(dd):
                        vi = v[i]
                        if vi:
                            uu2 = tuple(a + b for a, b in zip(uu, v))
                            dd2 = dd[:j] + ((v, mult + 1),) + dd[j + 1 :]
                            key = (uu2, dd2)
                            nxt[key] = nxt.get(key, 0) + w * mult * vi
                cur = {k: w for k, w in nxt.items() if w}
        for key, w in cur.items():
            acc = out.get(key, 0) + coeff * w
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return out


def apply_operator_raw(weighted, monomials):
    """Apply the operator to a whole {(u, dens): weight} map at once.

    Within one term the reachable states are bump vectors over its
    denominators (u gains v_j exactly when mult_j grows), so states are packed
    into single integers, 21 bits per denominator; keys are decoded back to
    (u', dens') only when merging into the output map.
    """
    out = {}
    for (u, dens), w0 in weighted.items():
        nd = len(dens)
        vs = [v for v, _ in dens]
        ms = [m for _, m in dens]
        d = len(u)
        final = {}
        for coeff, beta in monomials:
            cur = {0: 1}
            for i in range(d):
                e = beta[i]
                if not e:
                    continue
                ui = u[i]
                vcol = [v[i] for v in vs]
                for _ in range(e):
                    nxt = {}
                    for key, w in cur.items():
                        stay = ui
                        for j in range(nd):
                            bj = (key >> (21 * j)) & 0x1FFFFF
                            if bj:
                                stay += bj * vcol[j]
                        if stay:
                            nxt[key] = nxt.get(key, 0) + w * stay
                        for j in range(nd):
                            vj = vcol[j]
                            if vj:
                                bj = (key >> (21 * j)) & 0x1FFFFF
                                k2 = key + (1 << (21 * j))
                                nxt[k2] = nxt.get(k2, 0) + w * (ms[j] + bj) * vj
                    cur = nxt
            for key, w in cur.items():
                if w:
                    acc = final.get(key, 0) + coeff * w
                    if acc:
                        final[key] = acc
                    else:
                        final.pop(key, None)
        for key, w in final.items():
            bs = [(key >> (21 * j)) & 0x1FFFFF for j in range(nd)]
            u2 = tuple(
                u[c] + sum(bs[j] * vs[j][c] for j in range(nd) if bs[j])
                for c in range(d)
            )
            dens2 = tuple((vs[j], ms[j] + bs[j]) for j in range(nd))
            kk = (u2, dens2)
            acc = out.get(kk, 0) + w0 * w
            if acc:
                out[kk] = acc
            else:
                out.pop(kk, None)
    return out


# --- lattice enumeration ----------------------------------------------------


def enum_box_points(rows, rhs, lows, highs):
    """All integer points of a box satisfying rows @ x <= rhs, in lex order.

    Constraint rows are re-checked incrementally coordinate by coordinate with
    interval arithmetic so large infeasible sub-boxes are pruned early.
    """
    d = len(lows)
    m = len(rows)
    if any(lo > hi for lo, hi in zip(lows, highs)):
        return []
    if d == 0:
        return [()] if all(r >= 0 for r in rhs) else []
    # remaining[k][i]: minimum of sum_{j>=k} rows[i][j]*x_j over the box tail;
    # a partial assignment is pruned only when even that minimum violates.
    remaining = [[0] * m for _ in range(d + 1)]
    for k in range(d - 1, -1, -1):
        for i in range(m):
            a = rows[i][k]
            best = a * (lows[k] if a > 0 else highs[k])
            remaining[k][i] = remaining[k + 1][i] + best
    out = []
    point = [0] * d
    partial = [[0] * m for _ in range(d + 1)]  # partial[k]: sum over j < k

    def rec(k):
        if k == d:
            out.append(tuple(point))
            return
        base = partial[k]
        for val in range(lows[k], highs[k] + 1):
            ok = True
            nxt = partial[k + 1]
            for i in range(m):
                s = base[i] + rows[i][k] * val
                nxt[i] = s
                if s + remaining[k + 1][i] > rhs[i]:
                    ok = False
                    break
            if ok:
                point[k] = val
                rec(k + 1)
        return

    rec(0)
    return out


def eval_poly_points(coeffs, exps, points):
    """Evaluate an integer polynomial (parallel coeff/exponent lists) at many
    integer points; returns a list of ints."""
    out = []
    for p in points:
        total = 0
        for c, e in zip(coeffs, exps):
            term = c
            for x, k in zip(p, e):
                if k:
                    term *= x**k
            total += term
        out.append(total)
    return out
