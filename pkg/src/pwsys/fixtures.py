"""Canonical text exports of the catalog under ``pwsys/data``.

The files are generated from the in-code catalog and checked by golden
tests, so a change to any definition shows up as a diff.  Regenerate with
``python -m pwsys.fixtures``.
"""
from __future__ import annotations

from pathlib import Path

from .catalog import SYSTEM_IDS, get_system
from .reductions import EQUIVALENCE_MAPS, PIPELINES

DATA = Path(__file__).parent / "data"


def _maps(sid: str) -> str:
    sys = get_system(sid)
    return "".join(sys.generator(label).to_text() for label in sys.generator_labels)


def _charts(sid: str) -> str:
    sys = get_system(sid)
    out = []
    for label, chart in sys.charts.items():
        out.append(chart.forward.to_text())
    for cond in sys.conditions:
        out.append(f"# condition {cond.label}{' (control)' if cond.control else ''}\n"
                   f"{cond.describe()}\n")
    return "".join(out)


def _equivalence() -> str:
    lines = []
    for name, rules in EQUIVALENCE_MAPS.items():
        lines.append(f"# equivalence {name}")
        lines += [f"{k} = {v}" for k, v in rules.items()]
    return "\n".join(lines) + "\n"


def render() -> dict[str, str]:
    """Relative path -> file content for every fixture."""
    files = {}
    for sid in SYSTEM_IDS:
        files[f"systems/{sid}.txt"] = get_system(sid).to_text()
        files[f"maps/{sid}.txt"] = _maps(sid)
        files[f"charts/{sid}.txt"] = _charts(sid)
    for pid, p in PIPELINES.items():
        files[f"reductions/{pid}.txt"] = p.to_text()
    files["reductions/equivalence.txt"] = _equivalence()
    return files


def write(root: Path = DATA) -> list[Path]:
    out = []
    for rel, text in render().items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        out.append(path)
    return out


if __name__ == "__main__":
    for p in write():
        print(p)
