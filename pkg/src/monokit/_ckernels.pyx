# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels mirroring ``_pykernels`` in checked 64-bit arithmetic.

Every signed product or sum goes through the overflow builtins; on overflow
an ``OverflowError`` is raised and the dispatcher reruns the Python kernel.
"""

from libcpp.map cimport map as cmap
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

ctypedef long long i64

cdef extern from *:
    """
    static inline int mk_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int mk_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int mk_mul_ovf(i64 a, i64 b, i64 *r) nogil
    int mk_add_ovf(i64 a, i64 b, i64 *r) nogil


cdef inline i64 cmul(i64 a, i64 b) except? -1:
    cdef i64 r
    if mk_mul_ovf(a, b, &r):
        raise OverflowError("int64 overflow")
    return r


cdef inline i64 cadd(i64 a, i64 b) except? -1:
    cdef i64 r
    if mk_add_ovf(a, b, &r):
        raise OverflowError("int64 overflow")
    return r


cdef inline int reduce_dominant(i64 *x, const i64 *roots, int n):
    """Reflect x into the dominant chamber in place; return parity.

    ``roots`` is row-major with row i the simple root alpha_i in labels.
    """
    cdef int parity = 0
    cdef int i = 0, j
    cdef i64 c
    while i < n:
        c = x[i]
        if c < 0:
            for j in range(n):
                x[j] -= c * roots[i * n + j]
            parity ^= 1
            i = 0
        else:
            i += 1
    return parity


# inputs beyond this magnitude could overflow in the unchecked reflection loop
cdef i64 LABEL_LIMIT = 1LL << 40


cdef vector[i64] _flat(rows, int n):
    cdef vector[i64] out
    for r in rows:
        for j in range(n):
            v = int(r[j])
            if v > LABEL_LIMIT or v < -LABEL_LIMIT:
                raise OverflowError("label outside the compiled range")
            out.push_back(v)
    return out


def freudenthal(lam, order, roots, forms, norms, G, simple_roots):
    cdef int n = len(lam)
    cdef int nroots = len(roots)
    cdef vector[i64] sroots = _flat(simple_roots, n)
    cdef vector[i64] proots = _flat(roots, n)
    cdef vector[i64] pforms = _flat(forms, n)
    cdef vector[i64] pnorms
    cdef vector[i64] Gf = _flat(G, n)
    cdef vector[i64] mu_v = _flat(order, n)
    cdef int nw = len(order)
    cdef i64 lmax = 0
    cdef int k, j, a, w
    for k in range(nroots):
        pnorms.push_back(int(norms[k]))
    for k in range(nw * n):
        if mu_v[k] > lmax:
            lmax = mu_v[k]
    cdef i64 base = lmax + 1
    # encoding key = sum x_j base^j must fit
    cdef i64 cap = 1
    for j in range(n):
        cap = cmul(cap, base)

    cdef unordered_map[i64, i64] mult
    cdef vector[i64] out
    cdef vector[i64] x = vector[i64](n)
    cdef vector[i64] nu = vector[i64](n)
    cdef vector[i64] shifted = vector[i64](n)
    cdef i64 top = 0, lhs, rhs, bse, key, m, i, t, q
    cdef bint miss

    # |lam + delta|^2 (scaled)
    for j in range(n):
        for k in range(n):
            top = cadd(top, cmul(cmul(lam[j] + 1, Gf[j * n + k]), lam[k] + 1))

    for w in range(nw):
        if w == 0:
            key = 0
            for j in range(n):
                key = key * base + mu_v[j]
            mult[key] = 1
            out.push_back(1)
            continue
        lhs = top
        for j in range(n):
            shifted[j] = mu_v[w * n + j] + 1
        for j in range(n):
            for k in range(n):
                lhs = cadd(lhs, -cmul(cmul(shifted[j], Gf[j * n + k]), shifted[k]))
        rhs = 0
        for a in range(nroots):
            bse = 0
            for j in range(n):
                bse = cadd(bse, cmul(mu_v[w * n + j], pforms[a * n + j]))
                nu[j] = mu_v[w * n + j]
            i = 0
            while True:
                i += 1
                for j in range(n):
                    nu[j] += proots[a * n + j]
                    x[j] = nu[j]
                reduce_dominant(&x[0], &sroots[0], n)
                miss = False
                key = 0
                for j in range(n):
                    if x[j] > lmax:
                        miss = True
                        break
                    key = key * base + x[j]
                if miss:
                    break
                it = mult.find(key)
                if it == mult.end():
                    break
                m = deref(it).second
                t = cadd(bse, cmul(i, pnorms[a]))
                rhs = cadd(rhs, cmul(m, t))
        rhs = cmul(rhs, 2)
        if lhs == 0 or rhs % lhs != 0:
            raise ArithmeticError(f"Freudenthal quotient not integral at {order[w]}")
        q = rhs // lhs
        key = 0
        for j in range(n):
            key = key * base + mu_v[w * n + j]
        mult[key] = q
        out.push_back(q)
    return [out[k] for k in range(nw)]


def klimyk(lam, weights, mults, simple_roots):
    cdef int n = len(lam)
    cdef vector[i64] sroots = _flat(simple_roots, n)
    cdef vector[i64] wv = _flat(weights, n)
    cdef vector[i64] mv
    cdef int nw = len(weights)
    cdef int k, j, parity
    cdef bint wall
    for k in range(nw):
        mv.push_back(int(mults[k]))
    cdef vector[i64] shift = vector[i64](n)
    for j in range(n):
        if lam[j] > LABEL_LIMIT or lam[j] < -LABEL_LIMIT:
            raise OverflowError("label outside the compiled range")
        shift[j] = lam[j] + 1
    cdef vector[i64] x = vector[i64](n)
    cdef cmap[vector[i64], i64] acc
    for k in range(nw):
        for j in range(n):
            x[j] = shift[j] + wv[k * n + j]
        parity = reduce_dominant(&x[0], &sroots[0], n)
        wall = False
        for j in range(n):
            if x[j] == 0:
                wall = True
                break
            x[j] -= 1
        if wall:
            continue
        if parity:
            acc[x] = cadd(acc[x], -mv[k])
        else:
            acc[x] = cadd(acc[x], mv[k])
    out = {}
    it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            out[tuple(deref(it).first)] = deref(it).second
        inc(it)
    return out


def convolve_dominant(targets, lw, lm, full_mu):
    cdef int n = len(lw[0])
    cdef int ntar = len(targets)
    cdef int npi = len(lw)
    cdef vector[i64] tv = _flat(targets, n)
    cdef vector[i64] pv = _flat(lw, n)
    cdef vector[i64] pm
    cdef int k, j, p
    for k in range(npi):
        pm.push_back(int(lm[k]))
    # dense box holding the character of mu
    cdef i64 B = 0
    for w in full_mu:
        for j in range(n):
            if abs(w[j]) > B:
                B = abs(w[j])
    cdef i64 side = 2 * B + 1
    cdef i64 size = 1
    for j in range(n):
        size = cmul(size, side)
    if size > 50_000_000:
        raise OverflowError("character box too large")
    cdef vector[i64] box = vector[i64](size, 0)
    cdef i64 key
    for w, m in full_mu.items():
        key = 0
        for j in range(n):
            key = key * side + (w[j] + B)
        box[key] = int(m)
    cdef i64 s, d
    cdef bint outside
    out = {}
    for k in range(ntar):
        s = 0
        for p in range(npi):
            key = 0
            outside = False
            for j in range(n):
                d = tv[k * n + j] - pv[p * n + j]
                if d > B or d < -B:
                    outside = True
                    break
                key = key * side + (d + B)
            if outside:
                continue
            if box[key]:
                s = cadd(s, cmul(pm[p], box[key]))
        if s:
            out[targets[k]] = s
    return out
