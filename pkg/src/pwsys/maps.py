"""Birational maps as simultaneous substitutions.

A map is a dictionary of rules ``symbol -> RationalFunction`` on phase
variables, parameters and time; symbols without a rule are fixed.  Applying
a map to an expression substitutes every rule at once, so maps act as field
automorphisms and ``apply(compose(m1, m2), f) == apply(m1, apply(m2, f))``.

Pointwise, ``compose(m1, m2)`` moves a point by ``m1`` first and then by
``m2``; a word ``[g0, g1, ...]`` is the automorphism product ``g0 g1 ...``.

Charts and reduction steps reuse the names x, y, z, w for the new
coordinates: the rule ``x -> 1/x`` reads "x_new = 1/x_old".
"""
from __future__ import annotations

import time
from fractions import Fraction

from .algebra import ONE, RationalFunction, ZERO, dumps, parse, substitute, symbol, var
from .algebra.radicals import EMPTY, RadicalContext
from .algebra.symbols import PARAMS, PHASE, TIME, Symbol
from .errors import ConfigurationError
from .poisson import poisson_bracket
from .report import VerificationReport, make


class BirationalMap:
    """Substitution rules with an optional verified inverse."""

    __slots__ = ("rules", "label", "ctx", "inverse")

    def __init__(self, rules: dict, label: str = "", ctx: RadicalContext = EMPTY,
                 inverse: "BirationalMap | None" = None):
        clean = {}
        for s, r in rules.items():
            if isinstance(s, str):
                s = symbol(s)
            r = RationalFunction.coerce(r)
            if not (r.den.is_constant() and r.num.terms == {s.monomial: 1}):
                clean[s] = r
        self.rules = clean
        self.label = label
        self.ctx = ctx
        self.inverse = inverse

    @classmethod
    def from_text(cls, rules: dict, label: str = "", ctx: RadicalContext = EMPTY,
                  local: dict | None = None) -> "BirationalMap":
        return cls({symbol(k): parse(v, local) for k, v in rules.items()}, label, ctx)

    @classmethod
    def identity(cls, label: str = "id") -> "BirationalMap":
        return cls({}, label)

    # -- queries ------------------------------------------------------------
    def image(self, sym: Symbol) -> RationalFunction:
        r = self.rules.get(sym)
        return var(sym) if r is None else r

    def __call__(self, f) -> RationalFunction:
        return apply(self, f)

    @property
    def phase_rules(self) -> dict:
        return {s: self.image(s) for s in PHASE}

    @property
    def time_map(self) -> RationalFunction:
        return self.image(TIME)

    @property
    def time_jacobian(self) -> RationalFunction:
        """d(tau)/dt of the time map."""
        tau = self.time_map
        return self.ctx.diff(tau, TIME) if self.ctx else tau.diff(TIME)

    def param_action(self, params=PARAMS) -> tuple[list[list[Fraction]], list[Fraction]]:
        """Affine action on ``params``: new = matrix . old + offset.

        Raises ConfigurationError if some parameter image is not affine with
        constant rational coefficients in ``params``.
        """
        matrix, offset = [], []
        for p in params:
            img = self.image(p)
            if not img.is_polynomial():
                raise ConfigurationError(f"{self.label}: image of {p.name} is not affine")
            num = img.num.scale(1 / img.den.constant_value())
            row = [Fraction(0)] * len(params)
            const = Fraction(0)
            for m, c in num.terms.items():
                if not _is_rational(c):
                    raise ConfigurationError(f"{self.label}: non-rational parameter action")
                if m == 0:
                    const = Fraction(int(c.numerator), int(c.denominator))
                    continue
                hit = [k for k, q in enumerate(params) if m == q.monomial]
                if not hit:
                    raise ConfigurationError(f"{self.label}: image of {p.name} is not affine")
                row[hit[0]] = Fraction(int(c.numerator), int(c.denominator))
            matrix.append(row)
            offset.append(const)
        return matrix, offset

    def is_identity(self, symbols=None) -> bool:
        if symbols is None:
            return not self.rules
        return all(s not in self.rules for s in symbols)

    def same_as(self, other: "BirationalMap", symbols=None) -> bool:
        syms = set(self.rules) | set(other.rules)
        if symbols is not None:
            syms &= set(symbols)
        ctx = self.ctx or other.ctx
        return all(ctx.reduce(self.image(s) - other.image(s)).is_zero() for s in syms)

    def max_degree(self) -> int:
        return max((r.num.total_degree() for r in self.rules.values()), default=0)

    def to_text(self) -> str:
        lines = [f"# {self.label}"] if self.label else []
        for s in sorted(self.rules):
            lines.append(f"{s.name} = {dumps(self.rules[s])}")
        return "\n".join(lines) + "\n"

    def restricted(self, keep) -> "BirationalMap":
        keep = set(keep)
        return BirationalMap({s: r for s, r in self.rules.items() if s in keep},
                             self.label, self.ctx)

    def __repr__(self):
        return f"BirationalMap({self.label!r}, {len(self.rules)} rules)"


def _is_rational(c) -> bool:
    return hasattr(c, "numerator") and hasattr(c, "denominator")


def apply(m: BirationalMap, f) -> RationalFunction:
    """Substitute all rules of ``m`` into ``f`` simultaneously."""
    return substitute(RationalFunction.coerce(f), m.rules, m.ctx or None)


def compose(m1: BirationalMap, m2: BirationalMap, label: str | None = None) -> BirationalMap:
    """The map with apply(result, f) = apply(m1, apply(m2, f))."""
    if m1.ctx and m2.ctx and m1.ctx.defs != m2.ctx.defs:
        raise ConfigurationError("cannot compose maps over different radical towers")
    ctx = m1.ctx or m2.ctx
    rules = {}
    for s in set(m1.rules) | set(m2.rules):
        rules[s] = substitute(m2.image(s), m1.rules, ctx or None)
    return BirationalMap(rules, label or f"{m1.label}.{m2.label}", ctx)


def inverse_of(m: BirationalMap) -> BirationalMap:
    """The attached inverse; raises ConfigurationError when none is known."""
    if m.inverse is None:
        raise ConfigurationError(f"map {m.label!r} has no verified inverse")
    return m.inverse


def compose_word(maps: list[BirationalMap], label: str | None = None) -> BirationalMap:
    """Automorphism product maps[0] maps[1] ... maps[-1]."""
    if not maps:
        return BirationalMap.identity(label or "id")
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return BirationalMap(out.rules, label or ".".join(m.label for m in maps), out.ctx)


def power(m: BirationalMap, k: int) -> BirationalMap:
    out = BirationalMap.identity()
    for _ in range(k):
        out = compose(out, m)
    return out


def verify_inverse(m: BirationalMap, candidate: BirationalMap,
                   symbols=None) -> VerificationReport:
    """Check both compositions are the identity; attach the inverse on success."""
    start = time.perf_counter()
    left = compose(m, candidate)
    right = compose(candidate, m)
    bad = {}
    for name, c in (("m.candidate", left), ("candidate.m", right)):
        for s, r in c.rules.items():
            if symbols is None or s in symbols:
                bad[f"{name}:{s.name}"] = dumps(r)
    ok = not bad
    if ok:
        m.inverse = candidate
    return make(f"maps.inverse.{m.label}", ok, "0" if ok else next(iter(bad.values())),
                witnesses=bad, wall_time=time.perf_counter() - start)


def bracket_table(m: BirationalMap) -> dict[str, RationalFunction]:
    """Brackets of the images of the canonical coordinates."""
    X, Y, Z, W = (m.image(s) for s in PHASE)
    ctx = m.ctx
    return {
        "{Y,X}": poisson_bracket(Y, X, ctx),
        "{W,Z}": poisson_bracket(W, Z, ctx),
        "{X,Z}": poisson_bracket(X, Z, ctx),
        "{X,W}": poisson_bracket(X, W, ctx),
        "{Y,Z}": poisson_bracket(Y, Z, ctx),
        "{Y,W}": poisson_bracket(Y, W, ctx),
    }


def is_symplectic(m: BirationalMap, pairs: tuple = ("xy", "zw")) -> VerificationReport:
    """Canonical bracket relations {Y,X} = {W,Z} = 1 and the others 0.

    ``pairs`` restricts the check to a single canonical pair for the
    two-dimensional reduction steps.
    """
    start = time.perf_counter()
    table = bracket_table(m)
    want = {"{Y,X}": ONE, "{W,Z}": ONE}
    keep = set()
    if "xy" in pairs:
        keep.add("{Y,X}")
    if "zw" in pairs:
        keep.add("{W,Z}")
    if len(keep) == 2:
        keep |= {"{X,Z}", "{X,W}", "{Y,Z}", "{Y,W}"}
    bad = {k: dumps(v) for k, v in table.items()
           if k in keep and (v - want.get(k, ZERO)).num.terms}
    return make(f"maps.symplectic.{m.label}", not bad, next(iter(bad.values()), "0"),
                witnesses={"time_jacobian": dumps(m.time_jacobian), **bad},
                wall_time=time.perf_counter() - start)
