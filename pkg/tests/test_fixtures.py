"""Golden fixtures: shipped text files equal a fresh rendering of the catalogue."""
from __future__ import annotations

import pytest

from pwsys import fixtures
from pwsys.algebra import parse
from pwsys.catalog import SYSTEM_IDS, get_system
from pwsys.maps import BirationalMap
from pwsys.reductions import EQUIVALENCE_MAPS, PIPELINES, ReductionPipeline

RENDERED = fixtures.render()


@pytest.mark.parametrize("rel", sorted(RENDERED))
def test_golden_file(rel):
    path = fixtures.DATA / rel
    assert path.exists(), f"missing fixture {rel}; regenerate with python -m pwsys.fixtures"
    assert path.read_text() == RENDERED[rel]


def test_no_stray_fixture_files():
    shipped = {str(p.relative_to(fixtures.DATA)) for p in fixtures.DATA.rglob("*.txt")}
    assert shipped == set(RENDERED)


@pytest.mark.parametrize("pid", sorted(PIPELINES))
def test_pipeline_file_reads_back(pid):
    text = (fixtures.DATA / f"reductions/{pid}.txt").read_text()
    assert ReductionPipeline.from_text(text) == PIPELINES[pid]


@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_system_file_hamiltonian(sid):
    text = (fixtures.DATA / f"systems/{sid}.txt").read_text()
    line = next(ln for ln in text.splitlines() if ln.startswith("H = "))
    assert parse(line[4:]) == get_system(sid).H


@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_maps_file_reads_back(sid):
    s = get_system(sid)
    blocks: dict = {}
    label = None
    for ln in (fixtures.DATA / f"maps/{sid}.txt").read_text().splitlines():
        if ln.startswith("# "):
            label = ln[2:]
            blocks[label] = {}
        else:
            k, v = ln.split(" = ", 1)
            blocks[label][k] = v
    assert list(blocks) == s.generator_labels
    for label, rules in blocks.items():
        assert BirationalMap.from_text(rules, label).same_as(s.generator(label))


def test_equivalence_file():
    text = (fixtures.DATA / "reductions/equivalence.txt").read_text()
    for name, rules in EQUIVALENCE_MAPS.items():
        assert f"# equivalence {name}" in text
        for k, v in rules.items():
            assert f"{k} = {v}" in text
