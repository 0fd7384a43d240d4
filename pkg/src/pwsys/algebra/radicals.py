"""Square-root auxiliaries: a tower s1, s2, ... with s_k**2 = def_k.

Every reduced value has aux-free denominator and numerator of degree at most
one in each auxiliary.  As long as no def_k is a square in the field
generated by the earlier levels, that form is unique, so zero testing is just
reduction.
"""
from __future__ import annotations

from ..errors import ConfigurationError
from .rational import ONE, ZERO, RationalFunction, differentiate
from .symbols import Symbol


class RadicalContext:
    """Immutable list of (auxiliary, defining square) pairs."""

    __slots__ = ("defs",)

    def __init__(self, defs=()):
        defs = tuple((s, RationalFunction.coerce(d)) for s, d in defs)
        seen: list[Symbol] = []
        for s, d in defs:
            later = [a for a, _ in defs[len(seen):]]
            if any(d.has(a) for a in later):
                raise ConfigurationError(
                    f"definition of {s.name} uses an auxiliary introduced at or after it")
            seen.append(s)
        self.defs = defs

    def extend(self, sym: Symbol, square) -> "RadicalContext":
        return RadicalContext(self.defs + ((sym, square),))

    @property
    def auxiliaries(self) -> list[Symbol]:
        return [s for s, _ in self.defs]

    def definition(self, sym: Symbol) -> RationalFunction:
        for s, d in self.defs:
            if s is sym:
                return d
        raise KeyError(sym.name)

    def __bool__(self) -> bool:
        return bool(self.defs)

    # -- reduction ----------------------------------------------------------
    def reduce(self, f) -> RationalFunction:
        f = RationalFunction.coerce(f)
        return self._reduce(f, len(self.defs))

    def _split(self, p, level: int):
        """p = A0 + A1*s with s the auxiliary at ``level``; A0, A1 rational."""
        s, d = self.defs[level - 1]
        a0 = ZERO
        a1 = ZERO
        dpow = {0: ONE}
        for e, part in p.collect(s).items():
            k = e // 2
            if k not in dpow:
                dpow[k] = d ** k
            term = RationalFunction.coerce(part) * dpow[k]
            if e % 2:
                a1 = a1 + term
            else:
                a0 = a0 + term
        return a0, a1

    def _reduce(self, f: RationalFunction, level: int) -> RationalFunction:
        while level > 0 and not f.has(self.defs[level - 1][0]):
            level -= 1
        if level == 0:
            return f
        s, d = self.defs[level - 1]
        n0, n1 = self._split(f.num, level)
        m0, m1 = self._split(f.den, level)
        if m1.is_zero():
            r0 = n0 / m0
            r1 = n1 / m0
        else:
            den = self._reduce(m0 * m0 - m1 * m1 * d, level - 1)
            if den.is_zero():
                raise ConfigurationError(f"auxiliary {s.name} makes a denominator vanish")
            r0 = (n0 * m0 - n1 * m1 * d) / den
            r1 = (n1 * m0 - n0 * m1) / den
        r0 = self._reduce(r0, level - 1)
        r1 = self._reduce(r1, level - 1)
        return r0 + r1 * RationalFunction.coerce(s)

    def parts(self, f, sym: Symbol) -> tuple[RationalFunction, RationalFunction]:
        """(A0, A1) with reduced f = A0 + A1*sym."""
        f = self.reduce(f)
        level = self.auxiliaries.index(sym) + 1
        a0, a1 = self._split(f.num, level)
        den = RationalFunction.coerce(f.den)
        return a0 / den, a1 / den

    def is_zero(self, f) -> bool:
        return self.reduce(f).is_zero()

    # -- calculus -------------------------------------------------------------
    def diff(self, f, sym: Symbol) -> RationalFunction:
        """Total derivative with respect to a base symbol, auxiliaries following."""
        f = RationalFunction.coerce(f)
        out = differentiate(f, sym)
        for s, d in self.defs:
            if f.has(s):
                ds = self.aux_derivative(s, sym)
                if not ds.is_zero():
                    out = out + differentiate(f, s) * ds
        return self.reduce(out)

    def aux_derivative(self, s: Symbol, sym: Symbol) -> RationalFunction:
        d = self.definition(s)
        dd = self.diff(d, sym)
        if dd.is_zero():
            return ZERO
        # d(s)/d(sym) = d'/(2s) = d' s / (2 d)
        return self.reduce(dd * RationalFunction.coerce(s) / (d * 2))

    def substitute(self, f, rules: dict) -> RationalFunction:
        from .rational import substitute
        return substitute(RationalFunction.coerce(f), rules, self)


EMPTY = RadicalContext()
