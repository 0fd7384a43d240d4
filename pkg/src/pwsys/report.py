"""Structured outcome of a named check."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from . import __version__

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
RESOURCE_LIMITED = "resource-limited"
STATUSES = (PASS, FAIL, INCONCLUSIVE, RESOURCE_LIMITED)


@dataclass
class VerificationReport:
    """Result of one check.

    ``control`` marks negative controls: their expected status is ``fail``.
    ``residual`` is the canonical text of a symbolic residual ("0" on an exact
    pass) or a decimal string for numeric checks.
    """

    check_id: str
    status: str
    residual: str = "0"
    witnesses: dict = field(default_factory=dict)
    wall_time: float = 0.0
    seed: int | None = None
    engine_version: str = __version__
    control: bool = False
    message: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def as_expected(self) -> bool:
        """True when a regular check passed or a control failed."""
        if self.control:
            return self.status == FAIL
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "id": self.check_id,
            "status": self.status,
            "control": self.control,
            "expected": FAIL if self.control else PASS,
            "as_expected": self.as_expected,
            "residual": self.residual,
            "witnesses": _jsonable(self.witnesses),
            "message": self.message,
            "seed": self.seed,
            "engine_version": self.engine_version,
            "wall_time": round(self.wall_time, 6),
        }


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in sorted(v.items(), key=lambda kv: str(kv[0]))}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


def status_of(ok: bool) -> str:
    return PASS if ok else FAIL


@contextmanager
def timed(report_holder: list):
    """Stamp the wall time of the block onto the report appended to the list."""
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    for rep in report_holder:
        rep.wall_time = elapsed


def make(check_id: str, ok: bool, residual="0", control=False, **kw) -> VerificationReport:
    return VerificationReport(check_id, status_of(ok), str(residual), control=control, **kw)
