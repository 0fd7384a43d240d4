"""Truncated Laurent expansions in a single symbol."""
from __future__ import annotations

from .radicals import RadicalContext
from .rational import ZERO, RationalFunction
from .symbols import Symbol


def _parts(p, s: Symbol) -> dict[int, RationalFunction]:
    return {e: RationalFunction.coerce(c) for e, c in p.collect(s).items()}


def laurent_leading(f, s: Symbol, k: int) -> tuple[int, list[RationalFunction]]:
    """Lowest order ``ord`` and the coefficients of s**ord .. s**(ord+k).

    Coefficients are exact rational functions free of ``s``.  The zero
    function returns ``(0, [0]*(k+1))``.
    """
    f = RationalFunction.coerce(f)
    if f.is_zero():
        return 0, [ZERO] * (k + 1)
    num = _parts(f.num, s)
    den = _parts(f.den, s)
    on = min(num)
    od = min(den)
    d0 = den[od]
    inv = d0.inverse()
    coeffs: list[RationalFunction] = []
    for m in range(k + 1):
        acc = num.get(on + m, ZERO)
        for j in range(1, m + 1):
            dj = den.get(od + j)
            if dj is not None:
                acc = acc - dj * coeffs[m - j]
        coeffs.append(acc * inv)
    return on - od, coeffs


def _shift_to(order: int, coeffs: list, target: int, k: int) -> list:
    """Coefficients indexed from ``target`` for ``k+1`` terms."""
    out = []
    for m in range(k + 1):
        idx = target + m - order
        out.append(coeffs[idx] if 0 <= idx < len(coeffs) else ZERO)
    return out


def sqrt_series(square, s: Symbol, leading, k: int) -> list[RationalFunction]:
    """Power series of the root of ``square`` with value ``leading`` at s=0."""
    order, sq = laurent_leading(square, s, k)
    if order != 0:
        raise ValueError("square must have a nonzero value at s=0")
    a0 = RationalFunction.coerce(leading)
    if a0 * a0 != sq[0]:
        raise ValueError("leading value is not a root of the constant term")
    out = [a0]
    inv = (a0 * 2).inverse()
    for n in range(1, k + 1):
        acc = sq[n]
        for j in range(1, n):
            acc = acc - out[j] * out[n - j]
        out.append(acc * inv)
    return out


def laurent_with_radicals(f, s: Symbol, k: int, ctx: RadicalContext,
                          leading: dict, pad: int = 6) -> tuple[int, list[RationalFunction]]:
    """Laurent expansion of a tower element whose auxiliaries are power series in s.

    ``leading`` maps each auxiliary of ``ctx`` to its exact value at s=0,
    which fixes the branch.  Auxiliaries must be analytic and nonzero at 0.
    Up to ``pad`` orders of cancellation between the aux-free parts are
    absorbed; more raises ValueError.
    """
    f = ctx.reduce(f)
    if f.is_zero():
        return 0, [ZERO] * (k + 1)
    order, coeffs = _expand(f, s, k + pad, ctx, leading)
    shift = 0
    while shift < len(coeffs) and coeffs[shift].is_zero():
        shift += 1
    if shift > pad:
        raise ValueError("cancellation deeper than the padding; raise pad")
    return order + shift, coeffs[shift:shift + k + 1]


def _expand(f, s, k, ctx, leading):
    auxes = [a for a in ctx.auxiliaries if f.has(a)]
    if not auxes:
        return laurent_leading(f, s, k)
    a = auxes[-1]
    c0, c1 = ctx.parts(f, a)
    pieces = []
    if not c0.is_zero():
        pieces.append(_expand(c0, s, k, ctx, leading))
    if not c1.is_zero():
        o1, s1 = _expand(c1, s, k, ctx, leading)
        root = sqrt_series(ctx.definition(a), s, leading[a], k)
        prod = []
        for m in range(k + 1):
            acc = ZERO
            for j in range(m + 1):
                acc = acc + s1[j] * root[m - j]
            prod.append(acc)
        pieces.append((o1, prod))
    low = min(o for o, _ in pieces)
    high = max(o for o, _ in pieces)
    total = [ZERO] * (k + 1 - (high - low))
    for o, cs in pieces:
        total = [x + y for x, y in zip(total, _shift_to(o, cs, low, len(total) - 1))]
    return low, total
