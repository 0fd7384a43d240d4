"""Canonical text form for polynomials and rational functions.

The format is a subset of Python expression syntax: terms sorted in
descending graded-lex order, explicit ``**`` exponents, rational
coefficients written as ``p/q`` and the imaginary unit as ``I``.  The same
parser accepts hand-written input (parentheses, nested products, ``^`` as a
power operator), which is how the catalog transcribes formulas.
"""
from __future__ import annotations

import ast

from ..errors import ParseError
from .coeff import GaussianRational, I_UNIT, format_coeff
from .poly import Polynomial
from .symbols import SLOT_BITS, SLOT_MASK, by_index, symbol


def _format_monomial(m: int) -> str:
    parts = []
    k = 0
    while m:
        e = m & SLOT_MASK
        if e:
            name = by_index(k).name
            parts.append(name if e == 1 else f"{name}**{e}")
        m >>= SLOT_BITS
        k += 1
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        mono = _format_monomial(m)
        if isinstance(c, GaussianRational):
            neg = c.re == 0 and c.im < 0
        else:
            neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_coeff(mag)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_rf(f) -> str:
    if f.den.is_constant():
        return format_poly(f.num)
    return f"({format_poly(f.num)})/({format_poly(f.den)})"


def dumps(f) -> str:
    """Canonical text of a Polynomial or RationalFunction."""
    if isinstance(f, Polynomial):
        return format_poly(f)
    return format_rf(f)


_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.BitXor)


def parse(text: str, local: dict | None = None):
    """Parse text into a RationalFunction.

    ``local`` may bind extra names to RationalFunctions (used by fixture files
    that refer to previously defined expressions).
    """
    from .rational import RationalFunction, const, var
    try:
        tree = ast.parse("(" + text.strip() + "\n)", mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    local = local or {}

    def ev(node):
        if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
            left = ev(node.left)
            if isinstance(node.op, (ast.Pow, ast.BitXor)):
                k = _int_exponent(node.right)
                return left ** k
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            return left / right
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            return const(node.value)
        if isinstance(node, ast.Name):
            if node.id == "I":
                return const(I_UNIT)
            if node.id in local:
                return RationalFunction.coerce(local[node.id])
            try:
                return var(symbol(node.id))
            except KeyError:
                raise ParseError(f"unknown symbol {node.id!r} in {text!r}") from None
        raise ParseError(f"unsupported syntax {ast.dump(node)[:60]} in {text!r}")

    return ev(tree.body)


def _int_exponent(node) -> int:
    sign = 1
    while isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        if isinstance(node.op, ast.USub):
            sign = -sign
        node = node.operand
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return sign * node.value
    raise ParseError("exponents must be integer literals")


def loads(text: str):
    return parse(text)
