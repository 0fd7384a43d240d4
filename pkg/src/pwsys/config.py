"""Process-wide configuration knobs.

Values are read from the environment once at import; tests and the benchmark
may reassign the module attributes directly.
"""
from __future__ import annotations

import os

GCD_STRATEGY = os.environ.get("PWSYS_GCD", "flint")
"""``flint`` (FLINT over Q), ``modular`` (certificate + specialisation) or
``prs`` (reference PRS)."""

DEGREE_BUDGET = int(os.environ.get("PWSYS_DEGREE_BUDGET", "64"))
"""Largest numerator degree tolerated in Coxeter power computations."""

DIGITS = 60
"""Default working precision (decimal digits) for numeric checks."""

ENABLE_RECOVERY = os.environ.get("PWSYS_ENABLE_RECOVERY", "") in ("1", "true", "yes")
"""Feature flag for the optional Hamiltonian recovery solver."""


def set_gcd_strategy(name: str) -> None:
    global GCD_STRATEGY
    if name not in ("flint", "modular", "prs"):
        raise ValueError(f"unknown gcd strategy {name!r}")
    GCD_STRATEGY = name
