"""Greatest common divisors in Q(i)[x1, ..., xn].

Three strategies are available (see :mod:`pwsys.config`):

``flint`` (default)
    FLINT's multivariate gcd over Q for real inputs.  Inputs with Gaussian
    coefficients go through ``modular``.

``modular``
    1. Strip monomial content.
    2. Bound ``deg_v gcd`` for every shared variable by univariate images over
       F_p (p = 1 mod 4, i mapped to a square root of -1).  Whenever the image
       keeps the full degree of both inputs the bound is rigorous, so "all
       bounds zero" proves coprimality.  This settles almost every call.
    3. Otherwise the gcd only involves the variables S with a positive bound.
       All other variables are specialised to random integers, the small gcd
       over Q(i)[S] is found with the PRS routine below, and it is accepted
       only if it divides both original inputs exactly.  Since the specialised
       gcd is a multiple of the true one, exact division proves equality.

``prs``
    Recursive primitive polynomial remainder sequence on the full inputs.
    Slow, but shares no code path with the certificate, which makes it the
    reference for the property tests and the benchmark.
"""
from __future__ import annotations

import random

import gmpy2
from flint import fmpq, fmpq_mpoly_ctx

from .. import config
from . import kernels
from .coeff import to_modp
from .poly import ONE_POLY, Polynomial, _max_degrees
from .symbols import SLOT_BITS, SLOT_MASK, by_index, pack, unpack


def _find_primes(count: int) -> list[tuple[int, int]]:
    out = []
    p = (1 << 31) - 1
    while len(out) < count:
        p -= 1
        if p % 4 != 1 or not gmpy2.is_prime(p):
            continue
        g = 2
        while pow(g, (p - 1) // 2, p) != p - 1:
            g += 1
        out.append((p, pow(g, (p - 1) // 4, p)))
    return out


PRIMES = _find_primes(16)
_rng = random.Random(0x9C4D)
_prime_cursor = [0]


def _next_prime() -> tuple[int, int]:
    k = _prime_cursor[0]
    _prime_cursor[0] = (k + 1) % len(PRIMES)
    return PRIMES[k]


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic (graded-lex) gcd of two polynomials; gcd(0, 0) = 0."""
    if not a.terms:
        return b.monic()
    if not b.terms:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return ONE_POLY
    if a.terms is b.terms or a == b:
        return a.monic()
    ma = a.monomial_content()
    mb = b.monomial_content()
    mono = 0
    if ma or mb:
        ua, ub = unpack(ma), unpack(mb)
        mono = pack({k: min(e, ub[k]) for k, e in ua.items() if k in ub})
        if ma:
            a = a.div_monomial(ma)
        if mb:
            b = b.div_monomial(mb)
    if config.GCD_STRATEGY == "prs":
        g = prs_gcd(a, b)
    elif config.GCD_STRATEGY == "flint" and a.is_real() and b.is_real():
        g = flint_gcd(a, b)
    else:
        g = _modular_gcd(a, b)
    if mono:
        g = g.mul_monomial(mono)
    return g


def gcd_many(polys) -> Polynomial:
    g = Polynomial()
    for p in polys:
        g = gcd(g, p)
        if g.is_constant() and g.terms:
            return ONE_POLY
    return g


# -- FLINT ----------------------------------------------------------------------

def _flint_ctx(slots: tuple[int, ...]):
    return fmpq_mpoly_ctx.get(tuple(by_index(k).name for k in slots), "lex")


def _to_flint(p_: Polynomial, slots: tuple[int, ...], ctx):
    shifts = [SLOT_BITS * k for k in slots]
    return ctx.from_dict({
        tuple((m >> sh) & SLOT_MASK for sh in shifts):
            fmpq(int(c.numerator), int(c.denominator))
        for m, c in p_.terms.items()})


def _from_flint(f, slots: tuple[int, ...]) -> Polynomial:
    shifts = [SLOT_BITS * k for k in slots]
    terms = {}
    for exps, c in f.to_dict().items():
        m = 0
        for e, sh in zip(exps, shifts):
            m |= int(e) << sh
        terms[m] = gmpy2.mpq(int(c.p), int(c.q))
    return Polynomial.from_terms(terms)


def flint_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd of two polynomials with rational coefficients."""
    if not (a.slot_mask & b.slot_mask):
        return ONE_POLY
    slots = tuple(sorted(set(a.slots()) | set(b.slots())))
    ctx = _flint_ctx(slots)
    g = _to_flint(a, slots, ctx).gcd(_to_flint(b, slots, ctx))
    if g.is_constant():
        return ONE_POLY
    return _from_flint(g, slots).monic()


# -- modular certificate ------------------------------------------------------

def _image(p_: Polynomial, slots: list[int], p: int, iota: int):
    shifts = [SLOT_BITS * k for k in slots]
    exps = []
    coeffs = []
    for m, c in p_.terms.items():
        v = to_modp(c, p, iota)
        if v is None:
            return None
        exps.append(tuple((m >> sh) & SLOT_MASK for sh in shifts))
        coeffs.append(v)
    return exps, coeffs


def degree_bounds(a: Polynomial, b: Polynomial, tries: int = 4) -> dict[int, int]:
    """Rigorous upper bounds on ``deg_v gcd(a, b)`` for every shared slot v."""
    sa, sb = a.slots(), b.slots()
    common = [k for k in sa if k in set(sb)]
    da = _max_degrees(a.terms)
    db = _max_degrees(b.terms)
    bounds = {k: min(da[k], db[k]) for k in common}
    pending = set(common)
    for _ in range(tries):
        if not pending:
            break
        p, iota = _next_prime()
        ia = _image(a, sa, p, iota)
        ib = _image(b, sb, p, iota)
        if ia is None or ib is None:
            continue
        point = {k: _rng.randrange(1, p) for k in set(sa) | set(sb)}
        ua = kernels.univariate_images(ia[0], ia[1], [point[k] for k in sa], p)
        ub = kernels.univariate_images(ib[0], ib[1], [point[k] for k in sb], p)
        pos_a = {k: j for j, k in enumerate(sa)}
        pos_b = {k: j for j, k in enumerate(sb)}
        for k in list(pending):
            ra = ua[pos_a[k]]
            rb = ub[pos_b[k]]
            if ra[da[k]] == 0 or rb[db[k]] == 0:
                continue  # leading coefficient vanished at this point
            g = kernels.gcd_modp(ra, rb, p)
            bounds[k] = min(bounds[k], len(g) - 1)
            pending.discard(k)
    return bounds


def _modular_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_constant() or b.is_constant():
        return ONE_POLY
    if not (a.slot_mask & b.slot_mask):
        return ONE_POLY
    bounds = degree_bounds(a, b)
    support = {k for k, d in bounds.items() if d > 0}
    if not support:
        return ONE_POLY
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    if big.exact_div(small) is not None:
        return small.monic()
    others = sorted((set(a.slots()) | set(b.slots())) - support)
    for _ in range(3):
        spec = {by_index(k): _rng.choice((-1, 1)) * _rng.randrange(2, 1000) for k in others}
        sa = a.substitute_constants(spec)
        sb = b.substitute_constants(spec)
        if not sa.terms or not sb.terms:
            continue
        g = prs_gcd(sa, sb)
        if g.is_constant():
            return ONE_POLY
        if a.exact_div(g) is not None and b.exact_div(g) is not None:
            return g.monic()
    return prs_gcd(a, b)


# -- primitive PRS ------------------------------------------------------------

def _content_pp(p_: Polynomial, v) -> tuple[Polynomial, Polynomial]:
    """Content in Q(i)[others] and monic primitive part with respect to v."""
    parts = p_.collect(v)
    if len(parts) == 1:
        (e, c), = parts.items()
        return c.monic(), Polynomial.variable(v, e)
    cont = Polynomial()
    for c in sorted(parts.values(), key=len):
        cont = prs_gcd(cont, c)
        if cont.is_constant():
            break
    if cont.is_constant():
        return ONE_POLY, p_.monic()
    q = p_.exact_div(cont)
    assert q is not None
    return cont, q.monic()


def _prem(a: Polynomial, b: Polynomial, v) -> Polynomial:
    """Sparse pseudo-remainder of a by b with respect to v."""
    bparts = b.collect(v)
    db = max(bparts)
    lcb = bparts[db]
    r = a
    while r.terms:
        rparts = r.collect(v)
        dr = max(rparts)
        if dr < db:
            break
        lcr = rparts[dr]
        r = r * lcb - (b * lcr).mul_monomial((dr - db) << v.shift)
    return r


def prs_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by recursive primitive remainder sequences."""
    if not a.terms:
        return b.monic()
    if not b.terms:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return ONE_POLY
    common = [k for k in a.slots() if b.slot_mask >> k & 1]
    if not common:
        # any common factor would involve only shared variables
        return ONE_POLY
    da = _max_degrees(a.terms)
    db = _max_degrees(b.terms)
    k = min(common, key=lambda s: (max(da[s], db[s]), s))
    v = by_index(k)
    ca, pa = _content_pp(a, v)
    cb, pb = _content_pp(b, v)
    c = prs_gcd(ca, cb)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while True:
        if pb.degree(v) <= 0:
            g = ONE_POLY
            break
        r = _prem(pa, pb, v)
        if not r.terms:
            g = pb
            break
        pa, pb = pb, _content_pp(r, v)[1]
    return (c * g).monic()
