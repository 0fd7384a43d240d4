# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the arithmetic hot loops in :mod:`_pykernels`.

Modular routines assume p < 2**31 so that products fit in 64 bits.
"""
from libc.stdlib cimport malloc, free

BACKEND = "cython"

ctypedef unsigned long long u64


def mul_terms(dict a, dict b):
    """Product of two sparse term maps (packed monomial -> coefficient)."""
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    cdef list bi = list(b.items())
    cdef object ma, ca, mb, cb, m, c
    for ma, ca in a.items():
        for mb, cb in bi:
            m = ma + mb
            c = out.get(m)
            if c is None:
                out[m] = ca * cb
            else:
                out[m] = c + ca * cb
    return {m: c for m, c in out.items() if c}


def add_scaled(dict acc, dict b, s):
    """In place ``acc += s*b``; zero entries are removed."""
    cdef object m, c, v
    for m, c in b.items():
        v = acc.get(m)
        if v is None:
            acc[m] = c * s
        else:
            v = v + c * s
            if v:
                acc[m] = v
            else:
                del acc[m]


cdef u64 _powmod(u64 b, u64 e, u64 p):
    cdef u64 r = 1
    b %= p
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def univariate_images(list exps, list coeffs, list point, long long p):
    """Dense univariate images over F_p; see the pure-Python version."""
    cdef Py_ssize_t k = len(point), n = len(exps), i, j, d
    cdef u64 P = <u64>p
    cdef int *maxdeg = <int *>malloc(k * sizeof(int))
    cdef int *ex = <int *>malloc((n * k + 1) * sizeof(int))
    cdef u64 **pw = <u64 **>malloc(k * sizeof(u64 *))
    cdef u64 **ipw = <u64 **>malloc(k * sizeof(u64 *))
    cdef u64 **out = <u64 **>malloc(k * sizeof(u64 *))
    cdef u64 v, iv, val
    try:
        for j in range(k):
            maxdeg[j] = 0
        for i in range(n):
            e = exps[i]
            for j in range(k):
                ex[i * k + j] = e[j]
                if ex[i * k + j] > maxdeg[j]:
                    maxdeg[j] = ex[i * k + j]
        for j in range(k):
            v = <u64>(point[j] % p)
            iv = _powmod(v, P - 2, P)
            pw[j] = <u64 *>malloc((maxdeg[j] + 1) * sizeof(u64))
            ipw[j] = <u64 *>malloc((maxdeg[j] + 1) * sizeof(u64))
            out[j] = <u64 *>malloc((maxdeg[j] + 1) * sizeof(u64))
            pw[j][0] = 1
            ipw[j][0] = 1
            out[j][0] = 0
            for d in range(1, maxdeg[j] + 1):
                pw[j][d] = pw[j][d - 1] * v % P
                ipw[j][d] = ipw[j][d - 1] * iv % P
                out[j][d] = 0
        for i in range(n):
            val = <u64>(coeffs[i] % p)
            for j in range(k):
                val = val * pw[j][ex[i * k + j]] % P
            for j in range(k):
                d = ex[i * k + j]
                out[j][d] = (out[j][d] + val * ipw[j][d]) % P
        return [[int(out[j][d]) for d in range(maxdeg[j] + 1)] for j in range(k)]
    finally:
        for j in range(k):
            free(pw[j])
            free(ipw[j])
            free(out[j])
        free(pw)
        free(ipw)
        free(out)
        free(maxdeg)
        free(ex)


def gcd_modp(list a, list b, long long p):
    """Monic gcd of two dense univariate polynomials over F_p (low degree first)."""
    cdef u64 P = <u64>p
    cdef Py_ssize_t na = len(a), nb = len(b), i, shift, da, db
    cdef u64 *A = <u64 *>malloc((na + 1) * sizeof(u64))
    cdef u64 *B = <u64 *>malloc((nb + 1) * sizeof(u64))
    cdef u64 *T
    cdef u64 q, inv
    try:
        for i in range(na):
            A[i] = <u64>(a[i] % p)
        for i in range(nb):
            B[i] = <u64>(b[i] % p)
        while na and A[na - 1] == 0:
            na -= 1
        while nb and B[nb - 1] == 0:
            nb -= 1
        while nb:
            inv = _powmod(B[nb - 1], P - 2, P)
            db = nb - 1
            while na and na - 1 >= db:
                q = A[na - 1] * inv % P
                shift = na - 1 - db
                for i in range(db + 1):
                    A[shift + i] = (A[shift + i] + (P - q) * B[i]) % P
                while na and A[na - 1] == 0:
                    na -= 1
            T = A
            A = B
            B = T
            da = na
            na = nb
            nb = da
        if not na:
            return []
        inv = _powmod(A[na - 1], P - 2, P)
        return [int(A[i] * inv % P) for i in range(na)]
    finally:
        free(A)
        free(B)
