# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: bit-identical twins of the pure-Python versions.

Series and operator kernels keep arbitrary-precision Python integers (the
speedup comes from compiled loop machinery); lattice enumeration and batch
evaluation run on C 64-bit integers and are only invoked by the facade when
precomputed magnitude bounds rule out overflow.
"""

from libc.stdlib cimport free, malloc

from math import gcd

IMPL_NAME = "compiled"


def ser_normalize(den, nums):
    cdef Py_ssize_t i, n = len(nums)
    g = den
    for i in range(n):
        g = gcd(g, nums[i])
        if g == 1:
            break
    if g > 1:
        den //= g
        nums = [x // g for x in nums]
    return den, list(nums)


def ser_mul(a_den, a_nums, b_den, b_nums, trunc):
    cdef Py_ssize_t i, j, n, la = len(a_nums), lb = len(b_nums), jmax
    if la and lb:
        n = la + lb - 1
        if n > trunc + 1:
            n = trunc + 1
    else:
        n = 0
    out = [0] * n
    for i in range(la):
        x = a_nums[i]
        if x == 0 or i >= n:
            continue
        jmax = lb
        if jmax > n - i:
            jmax = n - i
        for j in range(jmax):
            y = b_nums[j]
            if y:
                out[i + j] += x * y
    return ser_normalize(a_den * b_den, out)


def ser_inv(a_den, a_nums, trunc):
    cdef Py_ssize_t k, i, n = trunc + 1, la = len(a_nums)
    a0 = a_nums[0]
    if a0 == 0:
        raise ZeroDivisionError("series has zero constant term")
    c = [0] * n
    c[0] = 1
    for k in range(1, n):
        acc = 0
        power = 1
        for i in range(1, k + 1):
            if i < la:
                ai = a_nums[i]
                if ai:
                    acc += ai * c[k - i] * power
            power *= a0
        c[k] = -acc
    out = [0] * n
    power = 1
    for k in range(n - 1, -1, -1):
        out[k] = c[k] * power * a_den
        power *= a0
    den = a0**n
    if den < 0:
        den = -den
        out = [-x for x in out]
    return ser_normalize(den, out)


def ser_binom(n, trunc):
    cdef Py_ssize_t i
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
    cdef Py_ssize_t i, lo, hi
    acc = 0
    lo = order - len(b_nums) + 1
    if lo < 0:
        lo = 0
    hi = len(a_nums) - 1
    if hi > order:
        hi = order
    for i in range(lo, hi + 1):
        x = a_nums[i]
        if x:
            acc += x * b_nums[order - i]
    return acc, a_den


def op_term_images(u, dens, monomials):
    cdef Py_ssize_t i, j, e, step, nd
    out = {}
    base = (tuple(u), tuple(dens))
    for coeff, beta in monomials:
        cur = {base: 1}
        for i in range(len(beta)):
            e = beta[i]
            for step in range(e):
                nxt = {}
                for key, w in cur.items():
                    uu = key[0]
                    dd = key[1]
                    ui = uu[i]
                    if ui:
                        prev = nxt.get(key)
                        nxt[key] = w * ui if prev is None else prev + w * ui
                    nd = len(dd)
                    for j in range(nd):
                        v = dd[j][0]
                        vi = v[i]
                        if vi:
                            mult = dd[j][1]
                            uu2 = tuple(a + b for a, b in zip(uu, v))
                            dd2 = dd[:j] + ((v, mult + 1),) + dd[j + 1 :]
                            key2 = (uu2, dd2)
                            prev = nxt.get(key2)
                            add = w * mult * vi
                            nxt[key2] = add if prev is None else prev + add
                cur = {k: w for k, w in nxt.items() if w}
        for key, w in cur.items():
            acc = out.get(key, 0) + coeff * w
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return out


def enum_box_points(rows, rhs, lows, highs):
    cdef Py_ssize_t d = len(lows)
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t i, k, level
    cdef long long s
    cdef bint ok
    if d == 0:
        for r in rhs:
            if r < 0:
                return []
        return [()]
    for k in range(d):
        if lows[k] > highs[k]:
            return []
    cdef long long *amat = <long long *> malloc((m * d if m else 1) * sizeof(long long))
    cdef long long *bvec = <long long *> malloc((m if m else 1) * sizeof(long long))
    cdef long long *lo = <long long *> malloc(d * sizeof(long long))
    cdef long long *hi = <long long *> malloc(d * sizeof(long long))
    cdef long long *remaining = <long long *> malloc((d + 1) * (m if m else 1) * sizeof(long long))
    cdef long long *partial = <long long *> malloc((d + 1) * (m if m else 1) * sizeof(long long))
    cdef long long *point = <long long *> malloc(d * sizeof(long long))
    if not (amat and bvec and lo and hi and remaining and partial and point):
        raise MemoryError()
    out = []
    try:
        for i in range(m):
            row = rows[i]
            for k in range(d):
                amat[i * d + k] = row[k]
            bvec[i] = rhs[i]
        for k in range(d):
            lo[k] = lows[k]
            hi[k] = highs[k]
        for i in range(m):
            remaining[d * m + i] = 0
        for k in range(d - 1, -1, -1):
            for i in range(m):
                s = amat[i * d + k]
                s = s * (lo[k] if s > 0 else hi[k])
                remaining[k * m + i] = remaining[(k + 1) * m + i] + s
        for i in range(m):
            partial[i] = 0
        level = 0
        point[0] = lo[0] - 1
        while level >= 0:
            point[level] += 1
            if point[level] > hi[level]:
                level -= 1
                continue
            ok = True
            for i in range(m):
                s = partial[level * m + i] + amat[i * d + level] * point[level]
                partial[(level + 1) * m + i] = s
                if s + remaining[(level + 1) * m + i] > bvec[i]:
                    ok = False
                    break
            if not ok:
                continue
            if level == d - 1:
                out.append(tuple(point[k] for k in range(d)))
            else:
                level += 1
                point[level] = lo[level] - 1
    finally:
        free(amat)
        free(bvec)
        free(lo)
        free(hi)
        free(remaining)
        free(partial)
        free(point)
    return out


def eval_poly_points(coeffs, exps, points):
    cdef Py_ssize_t nt = len(coeffs)
    cdef Py_ssize_t ip, it, k, e, npts = len(points), d
    cdef long long total, term, base
    if nt == 0:
        return [0] * npts
    d = len(exps[0])
    cdef long long *carr = <long long *> malloc(nt * sizeof(long long))
    cdef long long *earr = <long long *> malloc(nt * d * sizeof(long long))
    cdef long long *parr = <long long *> malloc((d if d else 1) * sizeof(long long))
    if not (carr and earr and parr):
        raise MemoryError()
    out = []
    try:
        for it in range(nt):
            carr[it] = coeffs[it]
            row = exps[it]
            for k in range(d):
                earr[it * d + k] = row[k]
        for ip in range(npts):
            pt = points[ip]
            for k in range(d):
                parr[k] = pt[k]
            total = 0
            for it in range(nt):
                term = carr[it]
                for k in range(d):
                    e = earr[it * d + k]
                    if e:
                        base = parr[k]
                        while e:
                            if e & 1:
                                term *= base
                            base *= base if e > 1 else 1
                            e >>= 1
                total += term
            out.append(total)
    finally:
        free(carr)
        free(earr)
        free(parr)
    return out
