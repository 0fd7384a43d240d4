"""Big-float evaluation of exact expressions with mpmath."""
from __future__ import annotations

import mpmath

from .. import config
from ..errors import ConfigurationError, NearSingularEvaluation
from .coeff import to_mpc
from .poly import Polynomial
from .radicals import EMPTY, RadicalContext
from .rational import RationalFunction
from .symbols import SLOT_BITS, SLOT_MASK, Symbol, by_index


def _eval_poly(p: Polynomial, values: dict, ctx) -> object:
    total = ctx.mpf(0)
    cache: dict = {}
    for m, c in p.terms.items():
        term = to_mpc(c, ctx)
        k = 0
        while m:
            e = m & SLOT_MASK
            if e:
                key = (k, e)
                pw = cache.get(key)
                if pw is None:
                    try:
                        base = values[k]
                    except KeyError:
                        raise ConfigurationError(
                            f"no value for symbol {by_index(k).name}") from None
                    pw = cache[key] = base ** e
                term = term * pw
            m >>= SLOT_BITS
            k += 1
        total += term
    return total


def eval_numeric(f, point: dict, ctx: RadicalContext = EMPTY, branch: dict | None = None,
                 digits: int | None = None):
    """Evaluate ``f`` at ``point`` (Symbol -> number) with ``digits`` precision.

    Auxiliaries of ``ctx`` take their values from ``branch``; each must square
    to its definition at the point within 10**-(digits-5).
    """
    digits = digits or config.DIGITS
    f = RationalFunction.coerce(f)
    with mpmath.workdps(digits + 10):
        values = {s.index: mpmath.mpmathify(v) for s, v in point.items()}
        branch = branch or {}
        for s, d in ctx.defs:
            if s not in branch:
                if f.has(s) or any(dd.has(s) for _, dd in ctx.defs):
                    raise ConfigurationError(f"no branch value for {s.name}")
                continue
            val = mpmath.mpmathify(branch[s])
            square = _eval_rf(d, values, digits)
            scale = max(1, abs(square))
            if abs(val * val - square) > scale * mpmath.mpf(10) ** (-(digits - 5)):
                raise ConfigurationError(
                    f"branch value for {s.name} does not square to its definition")
            values[s.index] = val
        return _eval_rf(f, values, digits)


def _eval_rf(f: RationalFunction, values: dict, digits: int):
    num = _eval_poly(f.num, values, mpmath.mp)
    if f.den.is_constant():
        return num / to_mpc(f.den.constant_value(), mpmath.mp)
    den = _eval_poly(f.den, values, mpmath.mp)
    if abs(den) < mpmath.mpf(10) ** (-(digits // 2)):
        raise NearSingularEvaluation(f"denominator {mpmath.nstr(den, 5)} near zero")
    return num / den


def compile_rf(f, args: list[Symbol]):
    """Python callable evaluating ``f`` at mpmath values given in ``args`` order.

    Constants are converted at call time precision through a small cache, so
    the function works at any ``mpmath.mp.dps``.
    """
    f = RationalFunction.coerce(f)
    pos = {s.index: i for i, s in enumerate(args)}
    for s in f.symbols():
        if s.index not in pos:
            raise ConfigurationError(f"symbol {s.name} missing from argument list")
    consts: list = []
    lines = []
    powers: set = set()

    def poly_expr(p: Polynomial) -> str:
        terms = []
        for m, c in p.sorted_terms():
            consts.append(c)
            factors = [f"K[{len(consts) - 1}]"]
            k = 0
            while m:
                e = m & SLOT_MASK
                if e:
                    name = f"v{pos[k]}"
                    if e == 1:
                        factors.append(name)
                    else:
                        powers.add((pos[k], e))
                        factors.append(f"{name}_{e}")
                m >>= SLOT_BITS
                k += 1
            terms.append("*".join(factors))
        return " + ".join(terms) if terms else "0"

    num = poly_expr(f.num)
    den = poly_expr(f.den) if not f.den.is_constant() else None
    for (i, e) in sorted(powers):
        lines.append(f"    v{i}_{e} = v{i}**{e}")
    params = ", ".join(f"v{i}" for i in range(len(args)))
    body = "\n".join(lines)
    ret = f"({num})/({den})" if den else f"({num})"
    src = f"def _compiled({params}):\n    K = _consts()\n{body}\n    return {ret}\n"
    cache: dict = {}

    def _consts():
        dps = mpmath.mp.dps
        vals = cache.get(dps)
        if vals is None:
            vals = cache[dps] = [to_mpc(c, mpmath.mp) for c in consts]
        return vals

    ns = {"_consts": _consts}
    exec(compile(src, "<pwsys-compiled>", "exec"), ns)
    return ns["_compiled"]
