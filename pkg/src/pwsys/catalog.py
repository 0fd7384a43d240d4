"""The five coupled systems and the three classical target Hamiltonians.

Every formula is kept as source text in the shape it is printed, including
the overall prefactors in t, and parsed into exact RationalFunctions on first
use.  Parameter constraints are metadata: nothing here substitutes them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import RationalFunction, dumps, parse, symbol, var
from .algebra.symbols import PARAMS, PHASE, TIME, Symbol
from .errors import UnknownSystem
from .maps import BirationalMap
from .poisson import CANONICAL, PoissonStructure, flow_derivative, poisson_bracket

SYSTEM_IDS = ("A7_2", "C3_1", "A5_2", "D4_3", "G2_1")
CLI_NAMES = {"a7-2": "A7_2", "c3-1": "C3_1", "a5-2": "A5_2", "d4-3": "D4_3", "g2-1": "G2_1"}


# -- Hamiltonians as printed --------------------------------------------------

_H_TEXT = {
    "A7_2": """(
        x**2*y**3 - ((t+1)*x + 2*a2 + a3 + a4)*x*y**2
        + (t*x**2 + (a0 + 2*a2 + a3 + a4 - (a0 + a1)*t)*x + a2*(a2 + a3 + a4))*y + a1*t*x
        + 1/4*(-z**2*w**4 + 2*a4*z*w**3 + ((2*t-1)*z**2 - a4**2)*w**2
               - 2*(-a0 - 2*a2 - a3 - a4 + (a4 + 1)*t)*z*w - t*(t-1)*z**2)
        + y*((y-1)*x - a2)*z*w
    ) / (t*(t-1))""",
    "C3_1": """(
        x**2*y**3 - (t*x + 2*a1 + a2 + a3)*x*y**2 - ((a0*t - 1)*x - a1*(a1 + a2 + a3))*y - t*x
        - z**2*w**4/4 + a3/2*z*w**3 + 1/4*(2*t*z**2 - a3**2)*w**2
        - 1/2*((a3 + 1)*t - 1)*z*w - t**2*z**2/4
        + (x*y - a1)*y*z*w
    ) / t**2""",
    "A5_2": """(
        -t*x*(x-1)*y**2 + (x**2 + ((a0 + a1)*t - 1)*x - a1*t)*y + (a2 + a3)*x - (a0*t - 1)*a1
        - z**2*w**4/4 + a3/2*z*w**3 + 1/4*(2*t*z**2 - a3**2)*w**2
        - 1/2*((a0 + a1 + 2*a2 + 2*a3)*t - 1)*z*w - t**2*z**2/4
        - x*z*w
    ) / t**2""",
    "D4_3": """(
        -12*t*x**2*y**4 + 12*(x + 2*a0*t)*x*y**3 + 3*((a0 + 14*a1 + 9*a2)*x - 4*a0**2*t)*y**2
        + (-24*t*x**2 - 32*t**2*x - 3*a0*(5*a0 + 14*a1 + 9*a2))*y
        + 24*x*(x + (4*a0 + 7*a1 + 4*a2)*t)
        - 12*t*z**2*w**4 - 12*(z - 2*(a0 + a2)*t)*z*w**3
        + 3*(8*t**2*z**2 - (a0 + 6*a1 - 3*a2)*z - 4*(a0 + a2)**2*t)*w**2
        + (12*t*z**2 - 8*(7*a0 + 8*a1 + 7*a2)*t**2*z + 3*(5 - 6*a1 - 8*a1**2 - 4*a2))*w
        - 3*((4*t**3 + 1)*z + (19*a0 + 10*a1 + 7*a2)*t)*z
        - 12*x*(-4*t*x*w*y**3 + (4*x*w + 4*t*x*w**2 - 2*t*z*w**2 + z*w + 2*t**2*z)*y**2
                + (-2*x*w**2 - 7*t*z - 4*t**2*z*w + z*w**2 + 4*t*z*w**3)*y + (8*t*w + 5)*z)
        + 24*a0**2*t*y*w
        + 12*a1*x*w*(2*w - 7*y) + 6*a2*x*y*w*(4*t*(2*w - y) - 3)
        + 6*a0*y*(4*t*(2*x - z)*w**2 + (x - 12*t*x*y + 2*z)*w + 4*t**2*z) + 24*a0*a2*t*y*w
    ) / ((4*t + 3)*(16*t**2 - 12*t + 9))""",
    "G2_1": """
        -3*(5*a0 + 18*a1 + 27*a2)*t*x*y**3 - x*y/(2*t) + 6*a1*(a0 + 6*a1 + 9*a2)*t*y**2
        - 12*t**2*z**2*w**2 - (24*(a1 + a2)*t**2 - 3/(2*t))*z*w
        + 12*t**2*y**3*z*w**2 - 24*t*x*y**3*z*w + 12*x**2*y**3*z + 24*t*x*z**2*w
        - 12*x**2*z**2 - 12*a0*t**2*y**3*w
        + 12*(2*a0 + 4*a1 + 9*a2)*x*y**2*z + 3*(19*a0 + 38*a1 + 45*a2)*t*y**2*z*w
        - 6*a1*(a0 + 4*a1 + 9*a2)*y*z - 4*(a0 - 4*a1 - 3*a2)*t*x*z""",
}

_PREFACTOR = {
    "A7_2": "t*(t-1)",
    "C3_1": "t**2",
    "A5_2": "t**2",
    "D4_3": "(4*t+3)*(16*t**2-12*t+9)",
    "G2_1": "1",
}

_TYPE_NAME = {
    "A7_2": "A7^(2)", "C3_1": "C3^(1)", "A5_2": "A5^(2)", "D4_3": "D4^(3)", "G2_1": "G2^(1)",
}

# constraint: sum(coeffs[k] * a_k) = rhs
_CONSTRAINT = {
    "A7_2": ((1, 1, 2, 2, 1), 1),
    "C3_1": ((1, 2, 2, 1), 1),
    "A5_2": ((1, 1, 2, 1), 1),
    "D4_3": ((1, 2, 1), 1),
    "G2_1": ((1, 2, 3), 0),
}

_DIVISORS = {
    "A7_2": ((0, "y-1"), (1, "y"), (2, "x"), (3, "y+w**2-t"), (4, "z")),
    "C3_1": ((1, "x"), (2, "y+w**2-t"), (3, "z")),
    "A5_2": ((0, "x-1"), (1, "x"), (2, "y*w**2-t*y+1"), (3, "z")),
    "D4_3": ((0, "x"), (1, "y*w**2-t*y+1"), (2, "x+z")),
    "G2_1": ((0, "z"), (1, "x-t*w"), (2, "z-y**3")),
}

# the divisor paired with a generator for the reflection series; C3 S0 has
# none in the table, and y is the natural candidate for its negative control
_SERIES_DIVISOR = {("C3_1", 0): "y"}
SERIES_CONTROLS = frozenset(_SERIES_DIVISOR)

_GENERATORS = {
    "A7_2": {
        "s0": {"x": "x+a0/(y-1)", "a0": "-a0", "a2": "a2+a0"},
        "s1": {"x": "x+a1/y", "a1": "-a1", "a2": "a2+a1"},
        "s2": {"y": "y-a2/x", "a0": "a0+a2", "a1": "a1+a2", "a2": "-a2", "a3": "a3+a2"},
        "s3": {"x": "x+a3/(y+w**2-t)", "z": "z+2*a3*w/(y+w**2-t)",
               "a2": "a2+a3", "a3": "-a3", "a4": "a4+2*a3"},
        "s4": {"w": "w-a4/z", "a3": "a3+a4", "a4": "-a4"},
    },
    "C3_1": {
        "s0": {"x": "-(x+a0/y+1/y**2)", "y": "-y", "z": "I*z", "w": "w/I", "t": "-t",
               "a0": "-a0", "a1": "a1+a0"},
        "s1": {"y": "y-a1/x", "a0": "a0+2*a1", "a1": "-a1", "a2": "a2+a1"},
        "s2": {"x": "x+a2/(y+w**2-t)", "z": "z+2*a2*w/(y+w**2-t)",
               "a1": "a1+a2", "a2": "-a2", "a3": "a3+2*a2"},
        "s3": {"w": "w-a3/z", "a2": "a2+a3", "a3": "-a3"},
    },
    "A5_2": {
        "s0": {"y": "y-a0/(x-1)", "a0": "-a0", "a2": "a2+a0"},
        "s1": {"y": "y-a1/x", "a1": "-a1", "a2": "a2+a1"},
        "s2": {"x": "x+a2*(w**2-t)/(y*w**2-t*y+1)", "z": "z+2*a2*y*w/(y*w**2-t*y+1)",
               "a0": "a0+a2", "a1": "a1+a2", "a2": "-a2", "a3": "a3+2*a2"},
        "s3": {"w": "w-a3/z", "a2": "a2+a3", "a3": "-a3"},
    },
    "D4_3": {
        "s0": {"y": "y-a0/x", "a0": "-a0", "a1": "a1+a0"},
        "s1": {"x": "x+a1*(w**2-t)/(y*w**2-t*y+1)", "z": "z+2*a1*y*w/(y*w**2-t*y+1)",
               "a0": "a0+a1", "a1": "-a1", "a2": "a2+3*a1"},
        "s2": {"y": "y-a2/(x+z)", "w": "w-a2/(x+z)", "a1": "a1+a2", "a2": "-a2"},
    },
    "G2_1": {
        "s0": {"w": "w-a0/z", "a0": "-a0", "a1": "a1+a0"},
        "s1": {"y": "y-a1/(x-t*w)", "z": "z-a1*t/(x-t*w)", "a0": "a0+a1", "a1": "-a1",
               "a2": "a2+a1"},
        "s2": {"x": "x-3*a2*y**2/(z-y**3)", "w": "w-a2/(z-y**3)", "a1": "a1+3*a2",
               "a2": "-a2"},
    },
}

# (rules, candidate inverse)
_AUTOMORPHISM = {
    "A7_2": ({"x": "-x", "y": "1-y", "z": "I*z", "w": "w/I", "t": "1-t", "a0": "a1", "a1": "a0"},
             {"x": "-x", "y": "1-y", "z": "-I*z", "w": "I*w", "t": "1-t", "a0": "a1",
              "a1": "a0"}),
    "A5_2": ({"x": "1-x", "y": "-y", "z": "I*z", "w": "w/I", "t": "-t", "a0": "a1", "a1": "a0"},
             {"x": "1-x", "y": "-y", "z": "-I*z", "w": "I*w", "t": "-t", "a0": "a1",
              "a1": "a0"}),
}

# candidate inverse of the C3 S0, which is not an involution on (z, w)
_GENERATOR_INVERSE = {
    ("C3_1", "s0"): {"x": "-(x+a0/y+1/y**2)", "y": "-y", "z": "-I*z", "w": "I*w", "t": "-t",
                     "a0": "-a0", "a1": "a1+a0"},
}

_COXETER = {
    "A7_2": (5, {(0, 2): 3, (1, 2): 3, (2, 3): 3, (3, 4): 4}),
    "C3_1": (4, {(0, 1): 4, (1, 2): 3, (2, 3): 4}),
    "A5_2": (4, {(0, 2): 3, (1, 2): 3, (2, 3): 4}),
    "D4_3": (3, {(0, 1): 3, (1, 2): 6}),
    "G2_1": (3, {(0, 1): 3, (1, 2): 6}),
}


def _twist_inverse(a: str) -> dict:
    """Inverse of x' = 1/x, y' = -((y+w^2-t)x+a)x, z' = z-2xw."""
    return {"x": "1/x", "y": f"-{a}*x-y*x**2-w**2+t", "z": "z+2*w/x"}


def _twist(a: str) -> dict:
    return {"x": "1/x", "y": f"-((y+w**2-t)*x+{a})*x", "z": "z-2*x*w"}


# chart label -> (forward rules, candidate inverse rules)
_CHARTS = {
    "A7_2": {
        "r0": ({"x": "1/x", "y": "-((y-1)*x+a0)*x"}, {"x": "1/x", "y": "1-a0*x-y*x**2"}),
        "r1": ({"x": "1/x", "y": "-(y*x+a1)*x"}, {"x": "1/x", "y": "-a1*x-y*x**2"}),
        "r2": ({"x": "-(x*y-a2)*y", "y": "1/y"}, {"y": "1/y", "x": "(a2-x*y)*y"}),
        "r3": (_twist("a3"), _twist_inverse("a3")),
        "r4": ({"z": "-(z*w-a4)*w", "w": "1/w"}, {"w": "1/w", "z": "(a4-z*w)*w"}),
    },
    "C3_1": {
        "r0": ({"x": "x+a0/y+1/y**2"}, {"x": "x-a0/y-1/y**2"}),
        "r1": ({"x": "-(x*y-a1)*y", "y": "1/y"}, {"y": "1/y", "x": "(a1-x*y)*y"}),
        "r2": (_twist("a2"), _twist_inverse("a2")),
        "r3": ({"z": "-(z*w-a3)*w", "w": "1/w"}, {"w": "1/w", "z": "(a3-z*w)*w"}),
    },
    "A5_2": {
        "r0": ({"x": "-((x-1)*y-a0)*y", "y": "1/y"}, {"y": "1/y", "x": "1+(a0-x*y)*y"}),
        "r1": ({"x": "-(x*y-a1)*y", "y": "1/y"}, {"y": "1/y", "x": "(a1-x*y)*y"}),
        "r2": (_twist("a2"), _twist_inverse("a2")),
        "r3": ({"z": "-(z*w-a3)*w", "w": "1/w"}, {"w": "1/w", "z": "(a3-z*w)*w"}),
    },
    "D4_3": {
        "r0": ({"x": "-(x*y-a0)*y", "y": "1/y"}, {"y": "1/y", "x": "(a0-x*y)*y"}),
        "r1": (_twist("a1"), _twist_inverse("a1")),
        "r2": ({"y": "y-w", "z": "-((z+x)*w-a2)*w", "w": "1/w"},
               {"w": "1/w", "y": "y+1/w", "z": "(a2-z*w)*w-x"}),
    },
    "G2_1": {
        "r0": ({"z": "-(z*w-a0)*w", "w": "1/w"}, {"w": "1/w", "z": "(a0-z*w)*w"}),
        "r1": ({"x": "-((x-t*w)*y-a1)*y", "y": "1/y", "z": "z-t*y"},
               {"y": "1/y", "z": "z+t/y", "x": "t*w+(a1-x*y)*y"}),
        "r2": ({"x": "x-3*y**2*w", "z": "-((z-y**3)*w-a2)*w", "w": "1/w"},
               {"w": "1/w", "x": "x+3*y**2/w", "z": "y**3+(a2-z*w)*w"}),
    },
}

# condition label -> list of (chart, addend added before moving into the chart)
_CONDITIONS = {
    "A7_2": {"r0": [("r0", None)], "r1": [("r1", None)], "r2": [("r2", None)],
             "r3": [("r3", "x")], "r4": [("r4", None)]},
    "C3_1": {"r0": [("r0", None)], "r1": [("r1", None)], "r2": [("r2", "x")],
             "r3": [("r3", None)]},
    "A5_2": {"r0": [("r0", None)], "r1": [("r1", None)], "r3": [("r3", None)],
             "r1.r2": [("r1", None), ("r2", "x")]},
    "D4_3": {"r0": [("r0", None)], "r2": [("r2", None)],
             "r0.r2": [("r0", None), ("r2", "x")],
             "r0.r1": [("r0", None), ("r1", "x")]},
    "G2_1": {"r0": [("r0", None)], "r1": [("r1", "-y*w")], "r2": [("r2", None)]},
}

# negative selector controls: the same chart with the correction term dropped
_SELECTOR_CONTROLS = {
    "A7_2": {"r3.bare": [("r3", None)]},
    "C3_1": {"r2.bare": [("r2", None)]},
    "A5_2": {"r1.r2.bare": [("r1", None), ("r2", None)]},
    "G2_1": {"r1.bare": [("r1", None)]},
}

# translation words with the shifts they are stated to produce
_TRANSLATIONS = {
    "A7_2": {
        "T1": (["pi", "s0", "s2", "s3", "s4", "s3", "s2", "s0"], (-1, 1, 0, 0, 0)),
        "T2": (["s0", "T1", "s0"], (1, 1, -1, 0, 0)),
        "T3": (["s2", "T2", "s2"], (0, 0, 1, -1, 0)),
        "T4": (["s4", "s3", "T3", "s3", "s4"], (0, 0, 0, -1, 2)),
    },
    "A5_2": {
        "T1": (["pi", "s0", "s2", "s3", "s2", "s0"], (-1, 1, 0, 0)),
        "T2": (["pi", "s0", "s1", "s2", "s3", "s2"], (1, 1, -1, 0)),
        "T3": (["s2", "T2", "s2"], (0, 0, 1, -2)),
    },
}

# name -> (parameter specialisation, invariant function, variable solved, its value on the set)
_PARTICULAR = {
    "A7_2": {
        "alpha1.y0": ({"a1": "0"}, "y", "y", "0"),
        "alpha3.y3": ({"a3": "0"}, "y+w**2-t", "y", "t-w**2"),
    },
    "A5_2": {
        "alpha3.z0": ({"a3": "0"}, "z", "z", "0"),
    },
}

# singular values of t for the numeric flows
_SINGULAR_T = {
    "A7_2": (0, 1),
    "C3_1": (0,),
    "A5_2": (0,),
    "D4_3": (-0.75, complex(0.375, 0.6495190528383290), complex(0.375, -0.6495190528383290)),
    "G2_1": (0,),
}


# -- record types ---------------------------------------------------------------

@dataclass(frozen=True)
class LinearConstraint:
    """sum(coeffs[k] * params[k]) = rhs."""

    params: tuple
    coeffs: tuple
    rhs: Fraction

    def lhs(self) -> RationalFunction:
        out = RationalFunction.coerce(0)
        for p, c in zip(self.params, self.coeffs):
            out = out + var(p) * c
        return out

    def residual(self) -> RationalFunction:
        return self.lhs() - self.rhs

    def solve_for(self, sym: Symbol) -> RationalFunction:
        """The value of ``sym`` on the hyperplane in terms of the others."""
        k = self.params.index(sym)
        out = RationalFunction.coerce(self.rhs)
        for p, c in zip(self.params, self.coeffs):
            if p is not sym:
                out = out - var(p) * c
        return out / self.coeffs[k]

    def elimination(self, avoid=()) -> dict:
        """Rule eliminating the highest-index parameter not in ``avoid``."""
        for p in reversed(self.params):
            if p not in avoid:
                return {p: self.solve_for(p)}
        raise ValueError("nothing left to eliminate")

    def holds(self, values: dict, tol) -> bool:
        total = sum(c * values[p] for p, c in zip(self.params, self.coeffs))
        return abs(total - self.rhs) <= tol

    def __str__(self):
        terms = []
        for p, c in zip(self.params, self.coeffs):
            terms.append(p.name if c == 1 else f"{c}*{p.name}")
        return " + ".join(terms) + f" = {self.rhs}"


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric orders m_ij; m_ii = 1."""

    orders: tuple

    @classmethod
    def from_edges(cls, n: int, edges: dict) -> "CoxeterMatrix":
        rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (i, j), m in edges.items():
            rows[i][j] = rows[j][i] = m
        return cls(tuple(tuple(r) for r in rows))

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.orders[i][j]

    @property
    def size(self) -> int:
        return len(self.orders)

    def pairs(self):
        n = self.size
        return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class Chart:
    label: str
    forward: BirationalMap
    inverse_candidate: BirationalMap


@dataclass(frozen=True)
class ChartCondition:
    """Apply the listed charts in turn, adding each addend before the move.

    The condition holds when the last expression has no phase variable in its
    denominator.
    """

    system: str
    label: str
    steps: tuple  # of (chart label, addend RationalFunction or None)
    control: bool = False

    def describe(self) -> str:
        expr = "K"
        for chart, addend in self.steps:
            if addend is not None:
                expr = f"{expr}+({dumps(addend)})"
            expr = f"{chart}({expr})"
        return expr


@dataclass(frozen=True)
class ParticularSolution:
    name: str
    specialization: dict
    function: RationalFunction
    solved: Symbol
    value: RationalFunction


@dataclass
class HamiltonianSystem:
    id: str
    type_name: str
    H: RationalFunction
    H_text: str
    prefactor: RationalFunction
    params: tuple
    constraint: LinearConstraint
    divisors: list
    coxeter: CoxeterMatrix
    generators: list
    automorphism: BirationalMap | None
    charts: dict
    conditions: list
    translations: dict
    particular: dict
    singular_t: tuple
    poisson: PoissonStructure = field(default=CANONICAL)
    series_divisors: dict = field(default_factory=dict)

    def generator(self, label: str) -> BirationalMap:
        for g in self.generators:
            if g.label == label:
                return g
        if label == "pi" and self.automorphism is not None:
            return self.automorphism
        raise KeyError(f"{self.id} has no generator {label!r}")

    @property
    def generator_labels(self) -> list[str]:
        out = [g.label for g in self.generators]
        if self.automorphism is not None:
            out.append("pi")
        return out

    def divisor(self, i: int) -> RationalFunction:
        for k, f in self.divisors:
            if k == i:
                return f
        raise KeyError(f"{self.id} has no divisor f{i}")

    def vector_field(self) -> dict:
        return vector_field(self)

    def to_text(self) -> str:
        """Canonical definition file."""
        lines = [f"# system {self.id} ({self.type_name})",
                 f"params = {' '.join(p.name for p in self.params)}",
                 f"constraint = {self.constraint}",
                 f"prefactor = {dumps(self.prefactor)}",
                 f"prefactor_times_H = {dumps(self.H * self.prefactor)}",
                 f"H = {dumps(self.H)}"]
        for i, f in self.divisors:
            lines.append(f"divisor f{i} = {dumps(f)}")
        for row in self.coxeter.orders:
            lines.append("coxeter " + " ".join(str(m) for m in row))
        for g in self.generator_labels:
            m = self.generator(g)
            for s in sorted(m.rules):
                lines.append(f"generator {g}: {s.name} -> {dumps(m.rules[s])}")
        for label, chart in self.charts.items():
            for s in sorted(chart.forward.rules):
                lines.append(f"chart {label}: {s.name} -> {dumps(chart.forward.rules[s])}")
        for cond in self.conditions:
            lines.append(f"condition {cond.label}: {cond.describe()}")
        return "\n".join(lines) + "\n"


def _build_system(sid: str) -> HamiltonianSystem:
    params = _params_of(sid)
    coeffs, rhs = _CONSTRAINT[sid]
    constraint = LinearConstraint(params, tuple(Fraction(c) for c in coeffs), Fraction(rhs))
    H = parse(_H_TEXT[sid])
    divisors = [(i, parse(f)) for i, f in _DIVISORS[sid]]
    series = {i: f for i, f in divisors}
    for (s2, i), f in _SERIES_DIVISOR.items():
        if s2 == sid:
            series[i] = parse(f)
    generators = []
    for label, rules in _GENERATORS[sid].items():
        g = BirationalMap.from_text(rules, label)
        inv = _GENERATOR_INVERSE.get((sid, label))
        g.inverse = BirationalMap.from_text(inv, label + "^-1") if inv else g
        generators.append(g)
    auto = None
    if sid in _AUTOMORPHISM:
        fwd, inv = _AUTOMORPHISM[sid]
        auto = BirationalMap.from_text(fwd, "pi")
        auto.inverse = BirationalMap.from_text(inv, "pi^-1")
    charts = {}
    for label, (fwd, inv) in _CHARTS[sid].items():
        charts[label] = Chart(label, BirationalMap.from_text(fwd, label),
                              BirationalMap.from_text(inv, label + "^-1"))
    conditions = []
    for table, control in ((_CONDITIONS, False), (_SELECTOR_CONTROLS, True)):
        for label, steps in table.get(sid, {}).items():
            conditions.append(ChartCondition(
                sid, label, tuple((c, parse(a) if a else None) for c, a in steps), control))
    particular = {}
    for name, (spec, f, solved, value) in _PARTICULAR.get(sid, {}).items():
        particular[name] = ParticularSolution(
            name, {symbol(k): parse(v) for k, v in spec.items()}, parse(f), symbol(solved),
            parse(value))
    n, edges = _COXETER[sid]
    return HamiltonianSystem(
        id=sid, type_name=_TYPE_NAME[sid], H=H, H_text=_H_TEXT[sid].strip(),
        prefactor=parse(_PREFACTOR[sid]), params=params, constraint=constraint,
        divisors=divisors, coxeter=CoxeterMatrix.from_edges(n, edges),
        generators=generators, automorphism=auto, charts=charts, conditions=conditions,
        translations=dict(_TRANSLATIONS.get(sid, {})), particular=particular,
        singular_t=_SINGULAR_T[sid], series_divisors=series)


def _params_of(sid: str) -> tuple:
    return PARAMS[:len(_CONSTRAINT[sid][0])]


def get_system(sid: str) -> HamiltonianSystem:
    """The catalogued record for ``sid`` (ids or CLI spellings such as a7-2)."""
    key = CLI_NAMES.get(sid, sid)
    if key not in _H_TEXT:
        raise UnknownSystem(sid)
    return _cached_system(key)


@lru_cache(maxsize=None)
def _cached_system(key: str) -> HamiltonianSystem:
    return _build_system(key)


def all_systems() -> list[HamiltonianSystem]:
    return [get_system(s) for s in SYSTEM_IDS]


def vector_field(sys: HamiltonianSystem) -> dict:
    """(dx/dt, dy/dt, dz/dt, dw/dt) keyed by phase symbol."""
    return sys.poisson.hamiltonian_field(sys.H)


def divergence(sys: HamiltonianSystem) -> RationalFunction:
    field_ = vector_field(sys)
    out = RationalFunction.coerce(0)
    for s in PHASE:
        out = out + field_[s].diff(s)
    return out


def principal_part(sys: HamiltonianSystem, keep: str) -> RationalFunction:
    """H restricted to one canonical pair: keep='xy' sets z=w=0, 'zw' sets x=y=0."""
    zero = {"xy": ("z", "w"), "zw": ("x", "y")}[keep]
    return H_restricted(sys.H, {symbol(s): 0 for s in zero})


def H_restricted(H, rules) -> RationalFunction:
    from .algebra import substitute
    return substitute(H, rules)


# -- canonical targets ---------------------------------------------------------

@dataclass(frozen=True)
class CanonicalTarget:
    """A classical Hamiltonian in (x, y, t) with parameters ``params``."""

    id: str
    H_text: str
    params: tuple
    constraint: LinearConstraint | None = None

    @property
    def H(self) -> RationalFunction:
        return parse(self.H_text)

    def instantiate(self, q, p, time, values) -> RationalFunction:
        """The Hamiltonian at phase (q, p), time ``time`` and parameter values."""
        from .algebra import substitute
        rules = {symbol("x"): q, symbol("y"): p, TIME: time}
        rules.update({s: v for s, v in zip(self.params, values)})
        return substitute(self.H, {k: RationalFunction.coerce(v) for k, v in rules.items()})


_B = tuple(symbol(f"b{k}") for k in range(5))

TARGETS = {
    "PVI": CanonicalTarget(
        "PVI",
        "(y**2*(x-t)*(x-1)*x - ((b0-1)*(x-1)*x + b3*(x-t)*x + b4*(x-t)*(x-1))*y"
        " + b2*(b1+b2)*x)/(t*(t-1))",
        _B,
        LinearConstraint(_B, tuple(Fraction(c) for c in (1, 1, 2, 1, 1)), Fraction(1))),
    "PV": CanonicalTarget(
        "PV",
        "-(-t*y + x**3*y**2 - x**2*y**2 + (b1+2*b2)*x**2*y + (t-1+2*b3)*x*y"
        " + b2*(b1+b2)*x)/t",
        _B[1:4]),
    "PIII": CanonicalTarget(
        "PIII",
        "(x**2*y**2 - (x**2 - (b0+b1)*x - t)*y - b0*x)/t",
        _B[:2]),
}


def get_target(tid: str) -> CanonicalTarget:
    try:
        return TARGETS[tid]
    except KeyError:
        raise UnknownSystem(tid) from None


__all__ = [
    "SYSTEM_IDS", "CLI_NAMES", "HamiltonianSystem", "CoxeterMatrix", "LinearConstraint",
    "Chart", "ChartCondition", "ParticularSolution", "CanonicalTarget", "TARGETS",
    "get_system", "all_systems", "get_target", "vector_field", "divergence",
    "principal_part", "poisson_bracket", "flow_derivative", "PoissonStructure",
]
