"""Shared fixtures: a sympy oracle, cached suite runs and the acceptance summary."""
from __future__ import annotations

from functools import lru_cache

import pytest
import sympy

from pwsys.algebra import dumps
from pwsys.algebra.symbols import table


def to_sympy(f):
    """Independent reading of a RationalFunction through its canonical text."""
    names = {s.name: sympy.Symbol(s.name) for s in table()}
    names["I"] = sympy.I
    return sympy.parse_expr(dumps(f), local_dict=names)


def sympy_equal(a, b) -> bool:
    return sympy.cancel(sympy.together(a - b)) == 0


@lru_cache(maxsize=None)
def suite_reports(suite: str, systems: tuple | None = None):
    """Reports of one suite with default options, computed once per session."""
    from pwsys.suites import run_suites
    return tuple(run_suites([suite], list(systems) if systems else None))


def by_id(reports) -> dict:
    return {r.check_id: r for r in reports}


# -- acceptance lines ------------------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, text: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {text}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def recovery_enabled(monkeypatch):
    from pwsys import config
    monkeypatch.setattr(config, "ENABLE_RECOVERY", True)
