"""The arbitrary-precision integrator and the numeric cross-checks."""
from __future__ import annotations

import csv
import json
from fractions import Fraction

import gmpy2
import pytest

from pwsys import flow
from pwsys.algebra import RationalFunction, substitute
from pwsys.algebra.symbols import PHASE, TIME
from pwsys.catalog import SYSTEM_IDS, get_system, vector_field
from pwsys.errors import ConfigurationError, PoleEncountered
from pwsys.report import FAIL, PASS

from .conftest import by_id, suite_reports

TAB = flow.RKF78


def _matrix():
    n = len(TAB.c)
    return [list(r) + [Fraction(0)] * (n - len(r)) for r in TAB.a]


def test_tableau_row_sums():
    A = _matrix()
    assert all(sum(A[i]) == TAB.c[i] for i in range(len(TAB.c)))
    assert all(A[i][j] == 0 for i in range(len(A)) for j in range(i, len(A)))


@pytest.mark.parametrize("k", range(1, 9))
def test_quadrature_order_conditions(k):
    assert sum(b * c ** (k - 1) for b, c in zip(TAB.b, TAB.c)) == Fraction(1, k)


def test_tree_order_conditions():
    A, b, c = _matrix(), TAB.b, TAB.c
    n = len(c)
    Ac = [sum(A[i][j] * c[j] for j in range(n)) for i in range(n)]
    Ac2 = [sum(A[i][j] * c[j] ** 2 for j in range(n)) for i in range(n)]
    AAc = [sum(A[i][j] * Ac[j] for j in range(n)) for i in range(n)]
    assert sum(b[i] * Ac[i] for i in range(n)) == Fraction(1, 6)
    assert sum(b[i] * c[i] * Ac[i] for i in range(n)) == Fraction(1, 8)
    assert sum(b[i] * Ac2[i] for i in range(n)) == Fraction(1, 12)
    assert sum(b[i] * AAc[i] for i in range(n)) == Fraction(1, 24)
    assert sum(b[i] * c[i] ** 2 * AAc[i] for i in range(n)) == Fraction(1, 36)


def test_embedded_pair_differs():
    assert TAB.b != TAB.b_hat and sum(TAB.b_hat) == 1


def test_observed_order():
    params, ic, _ = flow.default_setup("A5_2", 0)
    orders = flow.observed_order("A5_2", params, ic, "2", "5/2", steps=(2, 4, 8), digits=60)
    assert min(orders) >= 4.5, orders


@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_compiled_field_matches_exact_field(sid):
    s = get_system(sid)
    params, ic, path = flow.default_setup(s, 1)
    point = {v: RationalFunction.coerce(Fraction(c)) for v, c in zip(PHASE, ic)}
    point[TIME] = RationalFunction.coerce(Fraction(5, 2))
    point.update({p: RationalFunction.coerce(params[p.name]) for p in s.params})
    F = vector_field(s)
    field_ = flow._field_for(s)
    with gmpy2.context(gmpy2.get_context(), precision=300):
        args = [flow.to_mpc(str(point[v].constant_value())) for v in PHASE]
        got = field_(*args, flow.to_mpc("5/2"), *(flow.to_mpc(params[p.name]) for p in s.params))
        for v, g in zip(PHASE, got):
            c = substitute(F[v], point).constant_value()
            exact = flow.to_mpc(f"{c.numerator}/{c.denominator}")
            assert abs(g - exact) < 1e-80


def test_finite_difference_against_field():
    s = get_system("C3_1")
    params, ic, _ = flow.default_setup(s, 0)
    h = "1/1000"
    fwd = flow.integrate(s, params, ic, ("2", "2001/1000"), 1e-20, 60)
    bwd = flow.integrate(s, params, ic, ("2", "1999/1000"), 1e-20, 60)
    field_ = flow._field_for(s)
    with gmpy2.context(gmpy2.get_context(), precision=300):
        y0 = [flow.to_mpc(v) for v in ic]
        f0 = field_(*y0, flow.to_mpc(2), *(flow.to_mpc(params[p.name]) for p in s.params))
        for k in range(4):
            fd = (fwd.end[k] - bwd.end[k]) / (2 * flow.to_mpc(h))
            assert abs(fd - f0[k]) < 1e-4 * (1 + abs(f0[k]))


def test_zero_length_path():
    params, ic, _ = flow.default_setup("A7_2", 0)
    traj = flow.integrate("A7_2", params, ic, ("2", "2"), 1e-20, 60)
    assert traj.status == "ok" and len(traj.samples) == 1
    assert [complex(v) for v in traj.end] == [complex(float(Fraction(v))) for v in ic]


def test_path_through_singular_value_is_rejected():
    params, ic, _ = flow.default_setup("A5_2", 0)
    with pytest.raises(ConfigurationError, match="singular"):
        flow.integrate("A5_2", params, ic, ("-1", "1"), 1e-20, 60)


def test_precision_contract():
    params, ic, path = flow.default_setup("A5_2", 0)
    with pytest.raises(ConfigurationError):
        flow.integrate("A5_2", params, ic, path, 1e-25, 60)
    with pytest.raises(ConfigurationError):
        flow.integrate("A5_2", params, ic, path, 1e-20, 30)
    with pytest.raises(ConfigurationError):
        flow.integrate("A5_2", {"a0": 1}, ic, path, 1e-20, 60)


def test_pole_is_recorded():
    params, ic, _ = flow.default_setup("G2_1", 0)
    traj = flow.integrate("G2_1", params, ic, ("1", "3"), 1e-12, 30)
    assert traj.status == "pole"
    assert 1.5 < traj.where.real < 2.5
    with pytest.raises(PoleEncountered):
        traj.raise_for_status()


def test_to_mpc_parsing():
    assert complex(flow.to_mpc("1/4")) == 0.25
    assert complex(flow.to_mpc("1/2+1/4j")) == complex(0.5, 0.25)
    assert complex(flow.to_mpc("-1/2-3/4j")) == complex(-0.5, -0.75)
    assert complex(flow.to_mpc("3/4j")) == complex(0, 0.75)


def test_default_setup_satisfies_constraint():
    for sid in SYSTEM_IDS:
        s = get_system(sid)
        params, _, _ = flow.default_setup(s, 7)
        c = s.constraint
        assert sum(k * params[p.name] for p, k in zip(c.params, c.coeffs)) == c.rhs


def test_export(tmp_path):
    params, ic, _ = flow.default_setup("A5_2", 0)
    traj = flow.integrate("A5_2", params, ic, ("2", "21/10"), 1e-20, 60, seed=4)
    csv_path, json_path = flow.write_trajectory(traj, tmp_path / "run")
    rows = list(csv.reader(csv_path.open()))
    assert rows[0] == ["t_re", "t_im", "x_re", "x_im", "y_re", "y_im", "z_re", "z_im",
                       "w_re", "w_im"]
    assert len(rows) == len(traj.samples) + 1
    assert float(rows[-1][0]) == pytest.approx(2.1)
    meta = json.loads(json_path.read_text())
    assert meta["system"] == "A5_2" and meta["status"] == "ok" and meta["seed"] == 4
    assert meta["samples"] == len(traj.samples) and meta["digits"] == 60


# -- numeric checks -----------------------------------------------------------------------

@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_backlund_transport(sid):
    rep = by_id(suite_reports("numeric"))[f"numeric.{sid}.backlund.{flow.BACKLUND_DEFAULTS[sid]}"]
    assert rep.status == PASS and float(rep.residual) <= 1e3 * 1e-20


def test_backlund_control_fails():
    rep = by_id(suite_reports("numeric"))["numeric.A7_2.backlund.s4.corrupted.control"]
    assert rep.control and rep.status == FAIL


@pytest.mark.parametrize("name", ["A7_2.particular.alpha1.y0", "A7_2.particular.alpha3.y3",
                                  "A5_2.particular.alpha3.z0"])
def test_particular_numeric(name):
    reps = by_id(suite_reports("numeric"))
    assert reps[f"numeric.{name}"].status == PASS
    control = reps[f"numeric.{name}.control"]
    assert control.control and control.status == FAIL


@pytest.mark.parametrize("sid", SYSTEM_IDS)
def test_nonconservation(sid):
    assert by_id(suite_reports("numeric"))[f"numeric.{sid}.nonconservation.H"].status == PASS


def test_nonconservation_extra_and_control():
    reps = by_id(suite_reports("numeric"))
    assert reps["numeric.G2_1.nonconservation.z-t*y"].status == PASS
    control = reps["numeric.A7_2.nonconservation.1.control"]
    assert control.control and control.status == FAIL


def test_backlund_other_generator():
    rep = flow.check_backlund_numeric("A7_2", "s0", tol=1e-20, digits=60)
    assert rep.status == PASS
