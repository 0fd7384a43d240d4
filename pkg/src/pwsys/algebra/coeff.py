"""Exact coefficients in Q(i).

Real coefficients are plain ``gmpy2.mpq`` values; only values with a nonzero
imaginary part are boxed in :class:`GaussianRational`.  Mixed arithmetic works
through Python's reflected operators, so the common real case runs at mpq speed.
"""
from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq, mpz


class GaussianRational:
    """re + im*i with exact rational parts; ``im`` is never zero."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = mpq(re)
        self.im = mpq(im)

    def __add__(self, o):
        if isinstance(o, GaussianRational):
            return make(self.re + o.re, self.im + o.im)
        return make(self.re + o, self.im)

    __radd__ = __add__

    def __sub__(self, o):
        if isinstance(o, GaussianRational):
            return make(self.re - o.re, self.im - o.im)
        return make(self.re - o, self.im)

    def __rsub__(self, o):
        return make(o - self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, GaussianRational):
            return make(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)
        return make(self.re * o, self.im * o)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        return make(self.re / n, -self.im / n)

    def __truediv__(self, o):
        if isinstance(o, GaussianRational):
            return self * o.inverse()
        return make(self.re / o, self.im / o)

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = mpq(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        return isinstance(o, GaussianRational) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def conjugate(self):
        return GaussianRational(self.re, -self.im)


Coefficient = "mpq | GaussianRational"
I_UNIT = GaussianRational(0, 1)
ZERO = mpq(0)
ONE = mpq(1)


def make(re, im=0):
    """Build a coefficient, unboxing when the imaginary part vanishes."""
    if im == 0:
        return mpq(re)
    return GaussianRational(re, im)


def coerce(v):
    """Convert ints, Fractions, mpq, complex-with-rational-parts to a coefficient."""
    if isinstance(v, GaussianRational):
        return v
    if isinstance(v, (int, mpz)):
        return mpq(v)
    if isinstance(v, (Fraction,)):
        return mpq(v.numerator, v.denominator)
    if type(v).__name__ == "mpq":
        return v
    if isinstance(v, complex):
        return make(Fraction(v.real), Fraction(v.imag))
    raise TypeError(f"cannot use {type(v).__name__} as an exact coefficient")


def real_part(c):
    return c.re if isinstance(c, GaussianRational) else c


def imag_part(c):
    return c.im if isinstance(c, GaussianRational) else ZERO


def is_real(c) -> bool:
    return not isinstance(c, GaussianRational)


def conjugate(c):
    return c.conjugate() if isinstance(c, GaussianRational) else c


def to_modp(c, p: int, iota: int) -> int | None:
    """Image of ``c`` in F_p under i -> iota; None if a denominator vanishes."""
    if isinstance(c, GaussianRational):
        a = to_modp(c.re, p, iota)
        b = to_modp(c.im, p, iota)
        if a is None or b is None:
            return None
        return (a + b * iota) % p
    d = int(c.denominator) % p
    if d == 0:
        return None
    return int(c.numerator) * pow(d, -1, p) % p


def format_rational(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_coeff(c) -> str:
    """Canonical text: ``3/4``, ``-2``, ``(1/2+3*I)``, ``I``, ``-I``."""
    if not isinstance(c, GaussianRational):
        return format_rational(c)
    if c.re == 0:
        if c.im == 1:
            return "I"
        if c.im == -1:
            return "-I"
        return f"{format_rational(c.im)}*I"
    im = c.im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    tail = "I" if mag == 1 else f"{format_rational(mag)}*I"
    return f"({format_rational(c.re)}{sign}{tail})"


def to_mpc(c, ctx):
    """Convert to an mpmath complex number using the mpmath context ``ctx``."""
    if isinstance(c, GaussianRational):
        return ctx.mpc(ctx.mpf(int(c.re.numerator)) / int(c.re.denominator),
                       ctx.mpf(int(c.im.numerator)) / int(c.im.denominator))
    return ctx.mpf(int(c.numerator)) / int(c.denominator)
