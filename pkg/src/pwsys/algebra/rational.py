"""Normalized rational functions over Q(i)."""
from __future__ import annotations

from ..errors import DivisionByZero, SingularSubstitution
from .coeff import coerce
from .gcd import gcd
from .poly import ONE_POLY, Polynomial, _is_scalar
from .symbols import Symbol


def _make(num: Polynomial, den: Polynomial) -> "RationalFunction":
    """Wrap an already normalized pair without checks."""
    obj = object.__new__(RationalFunction)
    obj.num = num
    obj.den = den
    obj._hash = None
    return obj


def normalize(num: Polynomial, den: Polynomial) -> "RationalFunction":
    """The unique representative with coprime parts and monic denominator."""
    if not den.terms:
        raise DivisionByZero("zero denominator")
    if not num.terms:
        return ZERO
    if den.is_constant():
        c = den.constant_value()
        return _make(num.scale(1 / c) if c != 1 else num, ONE_POLY)
    g = gcd(num, den)
    if not g.is_constant():
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num.scale(inv)
        den = den.scale(inv)
    return _make(num, den)


class RationalFunction:
    """Quotient num/den with gcd(num, den) = 1 and den monic in graded lex."""

    __slots__ = ("num", "den", "_hash")

    def __new__(cls, num=0, den=None):
        num = _as_poly(num)
        if den is None:
            return _make(num, ONE_POLY) if num.terms else ZERO_RF()
        return normalize(num, _as_poly(den))

    # -- construction -------------------------------------------------------
    @staticmethod
    def coerce(v) -> "RationalFunction":
        if isinstance(v, RationalFunction):
            return v
        if isinstance(v, Polynomial):
            return _make(v, ONE_POLY)
        if isinstance(v, Symbol):
            return _make(Polynomial.variable(v), ONE_POLY)
        if isinstance(v, str):
            from .text import parse
            return parse(v)
        return _make(Polynomial.constant(v), ONE_POLY)

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value()

    @property
    def slot_mask(self) -> int:
        return self.num.slot_mask | self.den.slot_mask

    def symbols(self) -> list[Symbol]:
        from .symbols import by_index
        mask = self.slot_mask
        return [by_index(k) for k in range(mask.bit_length()) if mask >> k & 1]

    def has(self, sym: Symbol) -> bool:
        return bool(self.slot_mask >> sym.index & 1)

    def free_of(self, syms) -> bool:
        return not any(self.has(s) for s in syms)

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self):
        return _make(-self.num, self.den)

    def __add__(self, o):
        o = _coerce_operand(o)
        if o is NotImplemented:
            return o
        a, b, c, d = self.num, self.den, o.num, o.den
        if not a.terms:
            return o
        if not c.terms:
            return self
        if b.is_constant() and d.is_constant():
            n = a + c
            return _make(n, ONE_POLY) if n.terms else ZERO
        if d.is_constant():
            return _make(a + c * b, b)
        if b.is_constant():
            return _make(a * d + c, d)
        if b == d:
            return normalize(a + c, b)
        g = gcd(b, d)
        if g.is_constant():
            return _make(a * d + c * b, b * d)
        b1 = b.exact_div(g)
        d1 = d.exact_div(g)
        n = a * d1 + c * b1
        if not n.terms:
            return ZERO
        den = b1 * d
        g2 = gcd(n, g)
        if not g2.is_constant():
            n = n.exact_div(g2)
            den = den.exact_div(g2)
        return _make(n, den)

    __radd__ = __add__

    def __sub__(self, o):
        o = _coerce_operand(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = _coerce_operand(o)
        if o is NotImplemented:
            return o
        a, b, c, d = self.num, self.den, o.num, o.den
        if not a.terms or not c.terms:
            return ZERO
        if o.is_constant():
            return _make(a.scale(c.constant_value()), b)
        if self.is_constant():
            return _make(c.scale(a.constant_value()), d)
        if d.is_constant():
            g1 = ONE_POLY
        else:
            g1 = gcd(a, d)
        if b.is_constant():
            g2 = ONE_POLY
        else:
            g2 = gcd(c, b)
        if not g1.is_constant():
            a = a.exact_div(g1)
            d = d.exact_div(g1)
        if not g2.is_constant():
            c = c.exact_div(g2)
            b = b.exact_div(g2)
        return _make(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num.terms:
            raise DivisionByZero("inverse of zero")
        inv = 1 / self.num.leading_coefficient()
        return _make(self.den.scale(inv), self.num.scale(inv))

    def __truediv__(self, o):
        o = _coerce_operand(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        return _make(self.num ** k, self.den ** k)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, o):
        if not isinstance(o, RationalFunction):
            o = _coerce_operand(o)
            if o is NotImplemented:
                return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num.terms)

    # -- calculus and substitution -------------------------------------------
    def diff(self, sym: Symbol) -> "RationalFunction":
        return differentiate(self, sym)

    def subs(self, rules: dict, ctx=None) -> "RationalFunction":
        return substitute(self, rules, ctx)

    def __repr__(self):
        from .text import format_rf
        return f"RationalFunction({format_rf(self)})"

    def __str__(self):
        from .text import format_rf
        return format_rf(self)


def _as_poly(v) -> Polynomial:
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, Symbol):
        return Polynomial.variable(v)
    return Polynomial.constant(v)


def _coerce_operand(o):
    if isinstance(o, RationalFunction):
        return o
    if isinstance(o, Polynomial):
        return _make(o, ONE_POLY)
    if isinstance(o, Symbol):
        return _make(Polynomial.variable(o), ONE_POLY)
    if _is_scalar(o):
        c = coerce(o)
        return _make(Polynomial.constant(c), ONE_POLY) if c else ZERO
    return NotImplemented


ZERO = _make(Polynomial(), ONE_POLY)
ONE = _make(ONE_POLY, ONE_POLY)


def ZERO_RF():
    return ZERO


def var(sym: Symbol | str) -> RationalFunction:
    from .symbols import symbol
    if isinstance(sym, str):
        sym = symbol(sym)
    return _make(Polynomial.variable(sym), ONE_POLY)


def const(c) -> RationalFunction:
    return _coerce_operand(c)


# -- differentiation ----------------------------------------------------------

def differentiate(f: RationalFunction, sym: Symbol) -> RationalFunction:
    """Partial derivative by the quotient rule, normalized."""
    if not f.has(sym):
        return ZERO
    dn = f.num.diff(sym)
    if f.den.is_constant():
        return _make(dn, ONE_POLY) if dn.terms else ZERO
    dd = f.den.diff(sym)
    if not dd.terms:
        return normalize(dn, f.den) if dn.terms else ZERO
    # (n'd - n d') / d^2 with the common factor gcd(d, d') removed first
    g = gcd(f.den, dd)
    if g.is_constant():
        d1, dd1 = f.den, dd
    else:
        d1 = f.den.exact_div(g)
        dd1 = dd.exact_div(g)
    num = dn * d1 - f.num * dd1
    return normalize(num, f.den * d1) if num.terms else ZERO


# -- substitution -------------------------------------------------------------

class _PowerCache:
    def __init__(self, base: Polynomial):
        self.base = base
        self.powers = [ONE_POLY, base]

    def __getitem__(self, k: int) -> Polynomial:
        pw = self.powers
        while len(pw) <= k:
            pw.append(pw[-1] * self.base)
        return pw[k]


def _substitute_poly(p: Polynomial, rules: dict, caches: dict):
    """Numerator and per-symbol denominator exponents of p under rules."""
    syms = [s for s in p.symbols() if s in rules]
    if not syms:
        return p, {}
    degs = {s: p.degree(s) for s in syms}
    syms.sort(key=lambda s: -degs[s])

    def rec(q: Polynomial, j: int) -> Polynomial:
        if j == len(syms) or not q.terms:
            return q
        s = syms[j]
        if not q.has(s) and rules[s].den.is_constant():
            return rec(q, j + 1)
        num_c, den_c = caches[s]
        dmax = degs[s]
        acc: dict = {}
        from . import kernels
        for e, part in q.collect(s).items():
            term = rec(part, j + 1)
            if e:
                term = term * num_c[e]
            if den_c is not None and dmax - e:
                term = term * den_c[dmax - e]
            kernels.add_scaled(acc, term.terms, 1)
        return Polynomial(acc)

    dens = {s: degs[s] for s in syms if caches[s][1] is not None}
    return rec(p, 0), dens


def substitute(f: RationalFunction, rules: dict, ctx=None) -> RationalFunction:
    """Simultaneous substitution of rational functions for symbols."""
    active = {}
    for s, r in rules.items():
        r = RationalFunction.coerce(r)
        if f.has(s) and not (r.den.is_constant() and r.num.terms == {s.monomial: 1}):
            active[s] = r
    if not active:
        return f if ctx is None else ctx.reduce(f)
    caches = {}
    for s, r in active.items():
        caches[s] = (_PowerCache(r.num), None if r.den.is_constant() else _PowerCache(r.den))
    n, dn = _substitute_poly(f.num, active, caches)
    d, dd = _substitute_poly(f.den, active, caches)
    if not d.terms:
        raise SingularSubstitution("substitution makes the denominator vanish")
    for s in set(dn) | set(dd):
        e = dd.get(s, 0) - dn.get(s, 0)
        if e > 0:
            n = n * caches[s][1][e]
        elif e < 0:
            d = d * caches[s][1][-e]
    # cancel the substituted denominators first: they are small and known
    factors = {}
    for s in set(dn) | set(dd):
        q = active[s].den
        if not q.is_constant():
            factors[q] = factors.get(q, 0) + abs(dd.get(s, 0) - dn.get(s, 0))
    for q, k in factors.items():
        for _ in range(k):
            if not d.terms or q.is_constant():
                break
            qn = n.exact_div(q)
            if qn is None:
                break
            qd = d.exact_div(q)
            if qd is None:
                break
            n, d = qn, qd
    out = normalize(n, d)
    return out if ctx is None else ctx.reduce(out)
