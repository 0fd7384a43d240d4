"""Exact sparse polynomial and rational-function arithmetic over Q(i)."""
from .coeff import GaussianRational, I_UNIT
from .poly import Polynomial
from .rational import (
    ONE, ZERO, RationalFunction, const, differentiate, normalize, substitute, var,
)
from .symbols import PARAMS, PHASE, TIME, EPS_SQRT, Symbol, register, symbol, symbols
from .text import dumps, loads, parse
from .gcd import gcd

__all__ = [
    "GaussianRational", "I_UNIT", "Polynomial", "RationalFunction", "ONE", "ZERO",
    "const", "differentiate", "normalize", "substitute", "var", "PARAMS", "PHASE",
    "TIME", "EPS_SQRT", "Symbol", "register", "symbol", "symbols", "dumps", "loads",
    "parse", "gcd",
]
