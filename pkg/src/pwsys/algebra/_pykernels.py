"""Pure-Python implementations of the arithmetic hot loops.

The compiled module ``_ckernels`` exposes the same functions with the same
signatures; :mod:`pwsys.algebra.kernels` picks one at import time.
"""
from __future__ import annotations

BACKEND = "python"


def mul_terms(a: dict, b: dict) -> dict:
    """Product of two sparse term maps (packed monomial -> coefficient)."""
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    bi = list(b.items())
    for ma, ca in a.items():
        for mb, cb in bi:
            m = ma + mb
            c = get(m)
            if c is None:
                out[m] = ca * cb
            else:
                out[m] = c + ca * cb
    return {m: c for m, c in out.items() if c}


def add_scaled(acc: dict, b: dict, s) -> None:
    """In place ``acc += s*b``; zero entries are removed."""
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


def univariate_images(exps: list, coeffs: list, point: list, p: int) -> list:
    """Dense univariate images of a polynomial over F_p.

    ``exps`` holds one exponent tuple per term over k active variables,
    ``coeffs`` the coefficients mod p and ``point`` k nonzero values.  Entry
    j of the result is the coefficient list (low degree first) of the
    polynomial in variable j obtained by substituting ``point`` for all the
    other variables.
    """
    k = len(point)
    maxdeg = [0] * k
    for e in exps:
        for j in range(k):
            if e[j] > maxdeg[j]:
                maxdeg[j] = e[j]
    pw = []
    ipw = []
    for j in range(k):
        v = point[j] % p
        iv = pow(v, -1, p)
        row = [1] * (maxdeg[j] + 1)
        irow = [1] * (maxdeg[j] + 1)
        for d in range(1, maxdeg[j] + 1):
            row[d] = row[d - 1] * v % p
            irow[d] = irow[d - 1] * iv % p
        pw.append(row)
        ipw.append(irow)
    out = [[0] * (maxdeg[j] + 1) for j in range(k)]
    for e, c in zip(exps, coeffs):
        val = c
        for j in range(k):
            val = val * pw[j][e[j]] % p
        for j in range(k):
            row = out[j]
            d = e[j]
            row[d] = (row[d] + val * ipw[j][d]) % p
    return out


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def gcd_modp(a: list, b: list, p: int) -> list:
    """Monic gcd of two dense univariate polynomials over F_p (low degree first)."""
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            q = a[-1] * inv % p
            shift = len(a) - 1 - db
            for i in range(db + 1):
                a[shift + i] = (a[shift + i] - q * b[i]) % p
            _trim(a)
        a, b = b, a
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]
