"""Catalogue records, vector fields and maps."""
from __future__ import annotations

from fractions import Fraction

import pytest

from pwsys.algebra import parse, var
from pwsys.algebra.symbols import PHASE, TIME
from pwsys.catalog import (
    CLI_NAMES, SYSTEM_IDS, all_systems, divergence, get_system, get_target, principal_part,
    vector_field,
)
from pwsys.errors import ConfigurationError, UnknownSystem
from pwsys.maps import BirationalMap, compose, compose_word, inverse_of, is_symplectic, power, verify_inverse
from pwsys.poisson import flow_derivative, poisson_bracket

CONSTRAINTS = {
    "A7_2": "a0 + a1 + 2*a2 + 2*a3 + a4 = 1",
    "C3_1": "a0 + 2*a1 + 2*a2 + a3 = 1",
    "A5_2": "a0 + a1 + 2*a2 + a3 = 1",
    "D4_3": "a0 + 2*a1 + a2 = 1",
    "G2_1": "a0 + 2*a1 + 3*a2 = 0",
}

COXETER = {
    "A7_2": {(0, 1): 2, (0, 2): 3, (1, 2): 3, (2, 3): 3, (3, 4): 4},
    "A5_2": {(0, 1): 2, (0, 2): 3, (1, 2): 3, (2, 3): 4},
    "C3_1": {(0, 1): 4, (1, 2): 3, (2, 3): 4},
    "D4_3": {(0, 1): 3, (1, 2): 6},
    "G2_1": {(0, 1): 3, (1, 2): 6},
}

# numerator degrees of (dx, dy, dz, dw)/dt in the phase variables, computed once
FIELD_DEGREES = {
    "A7_2": [4, 4, 5, 5],
    "C3_1": [4, 4, 5, 5],
    "A5_2": [3, 3, 5, 5],
    "D4_3": [5, 5, 5, 5],
    "G2_1": [5, 5, 5, 5],
}


@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_constraint(sid):
    assert str(get_system(sid).constraint) == CONSTRAINTS[sid]


@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_hamiltonian_denominator_depends_on_time_only(sid):
    s = get_system(sid)
    assert s.H.den.symbols() in ([], [TIME])
    assert s.H.num.degree_in(PHASE) <= 6


@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_vector_field_shape(sid):
    s = get_system(sid)
    F = vector_field(s)
    assert [F[v].num.degree_in(PHASE) for v in PHASE] == FIELD_DEGREES[sid]
    assert divergence(s) == 0
    x, y, z, w = PHASE
    assert F[x] == s.H.diff(y) and F[y] == -s.H.diff(x)
    assert F[z] == s.H.diff(w) and F[w] == -s.H.diff(z)


def test_d4_prefactor_factors():
    s = get_system("D4_3")
    t = var("t")
    assert s.prefactor == (4 * t + 3) * (16 * t ** 2 - 12 * t + 9)


@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_coxeter_matrix(sid):
    m = get_system(sid).coxeter
    n = len(m.orders)
    for i in range(n):
        assert m[i, i] == 1
        for j in range(i + 1, n):
            want = COXETER[sid].get((i, j), 2)
            assert m[i, j] == m[j, i] == want


def test_divisor_count():
    assert sum(len(s.divisors) for s in all_systems()) == 18
    assert [len(get_system(s).divisors) for s in SYSTEM_IDS] == [5, 3, 4, 3, 3]


def test_generator_labels():
    labels = {s.id: s.generator_labels for s in all_systems()}
    assert labels == {
        "A7_2": ["s0", "s1", "s2", "s3", "s4", "pi"],
        "C3_1": ["s0", "s1", "s2", "s3"],
        "A5_2": ["s0", "s1", "s2", "s3", "pi"],
        "D4_3": ["s0", "s1", "s2"],
        "G2_1": ["s0", "s1", "s2"],
    }


def test_lookup_by_cli_name_and_unknown():
    for cli, sid in CLI_NAMES.items():
        assert get_system(cli) is get_system(sid)
    with pytest.raises(UnknownSystem):
        get_system("B2_1")
    with pytest.raises(UnknownSystem):
        get_target("PII")


def test_bracket_convention():
    x, y, z, w = (var(s) for s in PHASE)
    assert poisson_bracket(y, x) == 1 and poisson_bracket(w, z) == 1
    assert poisson_bracket(x, y) == -1 and poisson_bracket(x, z) == 0
    H = get_system("A7_2").H
    # flow derivative of a coordinate is the field component
    assert flow_derivative(H, x) == H.diff(PHASE[1])


def test_principal_parts():
    s = get_system("A7_2")
    assert not principal_part(s, "xy").has(PHASE[2])
    assert not principal_part(s, "zw").has(PHASE[0])


def test_constraint_helpers():
    c = get_system("A7_2").constraint
    elim = c.elimination()
    (p, value), = elim.items()
    assert p.name == "a4"
    assert value == parse("1 - a0 - a1 - 2*a2 - 2*a3")
    assert c.solve_for(c.params[0]) == parse("1 - a1 - 2*a2 - 2*a3 - a4")


# -- maps -----------------------------------------------------------------------------

def test_map_composition_semantics():
    f = BirationalMap.from_text({"x": "x+y"}, "f")
    g = BirationalMap.from_text({"y": "2*y"}, "g")
    # apply(compose(f, g), h) = apply(f, apply(g, h))
    fg = compose(f, g)
    assert fg.image(PHASE[0]) == parse("x+y")
    assert fg.image(PHASE[1]) == parse("2*y")
    h = parse("x*y + 1/x")
    assert fg(h) == f(g(h))
    assert compose_word([f, g]).same_as(fg)


def test_generator_inverses_and_powers():
    s = get_system("A7_2")
    for g in s.generators:
        assert compose(g, g).is_identity()
        assert verify_inverse(g, g, PHASE).passed
        assert power(g, 2).is_identity()
    pi = s.automorphism
    assert compose(pi, inverse_of(pi)).is_identity()


def test_param_action_is_a_reflection():
    s = get_system("A7_2")
    matrix, offset = s.generator("s0").param_action(s.params)
    assert matrix[0][0] == -1 and matrix[2][0] == 1 and matrix[2][2] == 1
    assert offset == [Fraction(0)] * 5


def test_non_affine_param_action_rejected():
    m = BirationalMap.from_text({"a0": "a0**2"}, "bad")
    with pytest.raises(ConfigurationError):
        m.param_action()


@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_generators_symplectic(sid):
    s = get_system(sid)
    for label in s.generator_labels:
        assert is_symplectic(s.generator(label)).passed, label


def test_non_symplectic_map_detected():
    m = BirationalMap.from_text({"x": "2*x"}, "scale")
    assert not is_symplectic(m).passed


def test_map_text_round_trip():
    g = get_system("G2_1").generator("s2")
    lines = [ln for ln in g.to_text().splitlines() if not ln.startswith("#")]
    rules = dict(ln.split(" = ", 1) for ln in lines)
    assert BirationalMap.from_text(rules, "s2").same_as(g)
