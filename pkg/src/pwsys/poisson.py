"""Canonical Poisson structure on (x, y, z, w)."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import RationalFunction, ZERO, symbol
from .algebra.radicals import EMPTY, RadicalContext


@dataclass(frozen=True)
class PoissonStructure:
    """Pairs (momentum, coordinate) with {momentum, coordinate} = 1."""

    pairs: tuple = ((symbol("y"), symbol("x")), (symbol("w"), symbol("z")))

    def bracket(self, f, g, ctx: RadicalContext = EMPTY) -> RationalFunction:
        f = RationalFunction.coerce(f)
        g = RationalFunction.coerce(g)
        out = ZERO
        for p, q in self.pairs:
            fp, fq = f.diff(p), f.diff(q)
            if fp:
                out = out + fp * g.diff(q)
            if fq:
                out = out - fq * g.diff(p)
        return ctx.reduce(out) if ctx else out

    def hamiltonian_field(self, H) -> dict:
        """Time derivative of every phase symbol: {H, q} for the flow of H.

        With {y, x} = 1 this gives dx/dt = H_y, dy/dt = -H_x and the same for
        (z, w).
        """
        H = RationalFunction.coerce(H)
        field = {}
        for p, q in self.pairs:
            field[q] = H.diff(p)
            field[p] = -H.diff(q)
        return field

    @property
    def phase(self) -> tuple:
        out = []
        for p, q in self.pairs:
            out += [q, p]
        return tuple(out)


CANONICAL = PoissonStructure()


def poisson_bracket(f, g, ctx: RadicalContext = EMPTY) -> RationalFunction:
    """{f, g} = f_y g_x - f_x g_y + f_w g_z - f_z g_w."""
    return CANONICAL.bracket(f, g, ctx)


def flow_derivative(H, f, time_symbol=None) -> RationalFunction:
    """Total derivative of f along the flow of H: {H, f} + df/dt."""
    t = time_symbol or symbol("t")
    f = RationalFunction.coerce(f)
    return poisson_bracket(H, f) + f.diff(t)
