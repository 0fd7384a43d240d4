"""Acceptance criteria, one test and one printed pass/fail line per criterion.

Tolerances are pinned below.  A criterion that does not hold as stated fails
here; the reason is printed with the line.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from pwsys import flow, reductions, weyl
from pwsys.algebra import RationalFunction, const, dumps, parse, substitute, var
from pwsys.algebra.symbols import symbol
from pwsys.catalog import SYSTEM_IDS, get_system
from pwsys.errors import DivisionByZero, SingularSubstitution
from pwsys.report import FAIL, PASS
from pwsys.suites import run_suites

from .conftest import by_id, record_criterion, suite_reports

SYMMETRY_BUDGET_S = 300.0
K2_SAMPLES = 20
K2_DIGITS = 60
K2_THRESHOLD = 1e-40
NUMERIC_TOL = 1e-20
NUMERIC_FACTOR = 1e3
PROPERTY_CASES = 120
MIN_OBSERVED_ORDER = 4.5

EXPECTED_SYMMETRIES = {"A7_2": 6, "C3_1": 4, "A5_2": 5, "D4_3": 3, "G2_1": 3}
EXPECTED_SHIFTS = {
    "A7_2": [(-1, 1, 0, 0, 0), (1, 1, -1, 0, 0), (0, 0, 1, -1, 0), (0, 0, 0, -1, 2)],
    "A5_2": [(-1, 1, 0, 0), (1, 1, -1, 0), (0, 0, 1, -2)],
}
# the D4_3 condition is chained through r0 then r1; the r0, r2 reading is reported only
D4_ALTERNATIVE_READING = "holomorphy.D4_3.r0.r2"


def _fails(reps) -> str:
    return ", ".join(r.check_id for r in reps) or "none"


def test_criterion_01_symmetry():
    start = time.perf_counter()
    reps = by_id(run_suites(["symmetry"]))
    elapsed = time.perf_counter() - start
    checked, bad = 0, []
    for sid in SYSTEM_IDS:
        labels = get_system(sid).generator_labels
        assert len(labels) == EXPECTED_SYMMETRIES[sid]
        for lbl in labels:
            rep = reps[f"weyl.{sid}.symmetry.{lbl}"]
            checked += 1
            if rep.status != PASS or rep.residual != "0":
                bad.append(rep)
    ok = not bad and checked == sum(EXPECTED_SYMMETRIES.values()) and elapsed < SYMMETRY_BUDGET_S
    record_criterion(1, ok, f"{checked} symmetries with zero residual in {elapsed:.1f} s; "
                            f"failing: {_fails(bad)}")
    assert ok


def test_criterion_02_coxeter():
    reps = suite_reports("coxeter")
    cox = by_id(reps)
    bad = [r for r in reps if r.status != PASS]
    headline = [cox["weyl.A7_2.coxeter.3-4"], cox["weyl.C3_1.coxeter.0-1"]]
    headline += [r for r in reps if r.check_id.startswith(("weyl.D4_3.", "weyl.G2_1."))
                 and r.witnesses["expected"] == 6]
    headline_ok = all(r.status == PASS for r in headline) and len(headline) == 4
    detail = "; ".join(f"{r.check_id} expected {r.witnesses['expected']} observed "
                       f"{r.witnesses['observed']}" for r in bad)
    ok = not bad and headline_ok
    record_criterion(2, ok, f"{len(reps)} pairs, headline orders "
                            f"{'hold' if headline_ok else 'fail'}; failing: {detail or 'none'}")
    assert ok


def test_criterion_03_divisors():
    reps = suite_reports("divisors")
    main = [r for r in reps if not r.control and r.witnesses["order"] == "eliminate-first"]
    controls = [r for r in reps if r.control]
    bad = [r for r in main if r.status != PASS] + [r for r in controls if r.status != FAIL]
    ok = len(main) == 18 and len(controls) == 18 and not bad
    record_criterion(3, ok, f"{len(main)} divisors at a_i = 0, {len(controls)} generic controls; "
                            f"unexpected: {_fails(bad)}")
    assert ok


def test_criterion_04_translations():
    reps = by_id(suite_reports("symmetry"))
    bad = []
    for sid, shifts in EXPECTED_SHIFTS.items():
        for k, want in enumerate(shifts, start=1):
            rep = reps[f"weyl.{sid}.translation.T{k}"]
            got = tuple(Fraction(v) for v in rep.witnesses["shift"])
            if rep.status != PASS or got != want or not rep.witnesses["pure_translation"]:
                bad.append(rep)
    ok = not bad
    record_criterion(4, ok, f"{sum(map(len, EXPECTED_SHIFTS.values()))} translations; "
                            f"failing: {_fails(bad)}")
    assert ok


def test_criterion_05_poisson_exponential():
    reps = [r for r in suite_reports("symmetry") if ".series." in r.check_id]
    expected_fail = [r for r in reps if r.check_id.startswith("weyl.C3_1.series.s0.")]
    claims = [r for r in reps if r not in expected_fail]
    covered = {r.check_id.rsplit(".", 1)[0] for r in claims}
    want = {f"weyl.{sid}.series.s{i}" for sid in SYSTEM_IDS
            for i in range(len(get_system(sid).params)) if (sid, i) != ("C3_1", 0)}
    bad = [r for r in claims if r.status != PASS]
    documented = all(r.control and r.status == FAIL for r in expected_fail) and expected_fail
    ok = covered == want and not bad and bool(documented)
    record_criterion(5, ok, f"{len(claims)} series identities over {len(covered)} generators, "
                            f"C3_1 S0 expected-fail {'confirmed' if documented else 'missing'}; "
                            f"failing: {_fails(bad)}")
    assert ok


def test_criterion_06_holomorphy():
    reps = by_id(suite_reports("holomorphy"))
    conds, perturbed = [], []
    for sid in SYSTEM_IDS:
        for c in get_system(sid).conditions:
            cid = f"holomorphy.{sid}.{c.label}"
            if c.control or cid == D4_ALTERNATIVE_READING:
                continue
            conds.append(reps[cid])
            perturbed.append(reps[f"{cid}.perturbed"])
    bad = [r for r in conds if r.status != PASS] + [r for r in perturbed if r.status != FAIL]
    alt = reps[D4_ALTERNATIVE_READING]
    ok = not bad
    record_criterion(6, ok, f"{len(conds)} chart conditions, {len(perturbed)} perturbed controls; "
                            f"unexpected: {_fails(bad)} (info: r2(r0(K)+x0) reading of D4_3 "
                            f"{alt.status})")
    assert ok


def test_criterion_07_confluence():
    reps = by_id(suite_reports("reductions"))
    ham = reps["reductions.confluence.hamiltonian"]
    groups = [reps[f"reductions.confluence.group.S{k}"] for k in range(4)]
    bad = [r for r in [ham, *groups] if r.status != PASS]
    ok = not bad and ham.residual == "0"
    record_criterion(7, ok, f"delta^0 Hamiltonian and S0..S3 limits; failing: {_fails(bad)}")
    assert ok


def test_criterion_08_equivalence():
    printed = reductions.check_equivalence_c31_a52("printed")
    corrected = reductions.check_equivalence_c31_a52("corrected")
    ok = printed.status == PASS and printed.witnesses["time_term"] != ""
    record_criterion(8, ok, f"printed C3_1 -> A5_2 substitution {printed.status}"
                            f"{'' if ok else ', residual ' + printed.residual[:60]}"
                            f" (info: x/y-exchanged map {corrected.status}, "
                            f"time term {corrected.witnesses['time_term']!r})")
    assert ok


def test_criterion_09_reductions():
    lines, ok = [], True
    for pid in ("K1", "K3", "K4"):
        rep = reductions.check_reduction(pid)
        term = rep.witnesses.get("time_term", "")
        exact = rep.status == PASS and not any(v in term for v in "xyzw")
        ok &= exact
        lines.append(f"{pid} {rep.status}")
    k2 = reductions.check_reduction("K2", samples=K2_SAMPLES, digits=K2_DIGITS, seed=0)
    k2_ok = (k2.status == PASS and k2.witnesses["samples"] >= K2_SAMPLES
             and float(k2.residual) < K2_THRESHOLD)
    ok &= k2_ok
    lines.append(f"K2 (-1/2) {k2.status} max residual {k2.residual}")
    info = [f"{pid} {reductions.check_reduction(pid, samples=K2_SAMPLES, digits=K2_DIGITS).status}"
            for pid in ("K2.corrected", "K3.corrected", "K4.corrected")]
    record_criterion(9, ok, f"{'; '.join(lines)} (info: {', '.join(info)})")
    assert ok


def test_criterion_10_numeric():
    reps = by_id(suite_reports("numeric"))
    bound = NUMERIC_FACTOR * NUMERIC_TOL
    backlund = [reps[f"numeric.{sid}.backlund.{flow.BACKLUND_DEFAULTS[sid]}"] for sid in SYSTEM_IDS]
    particular = [reps["numeric.A7_2.particular.alpha1.y0"],
                  reps["numeric.A5_2.particular.alpha3.z0"]]
    drift = [reps[f"numeric.{sid}.nonconservation.H"] for sid in SYSTEM_IDS]
    drift.append(reps["numeric.G2_1.nonconservation.z-t*y"])
    bad = [r for r in backlund + particular if r.status != PASS or float(r.residual) > bound]
    bad += [r for r in drift if r.status != PASS]
    worst = max(float(r.residual) for r in backlund + particular)
    ok = not bad
    record_criterion(10, ok, f"Backlund x{len(backlund)}, particular x{len(particular)} worst "
                             f"{worst:.2e} <= {bound:.0e}; non-conservation x{len(drift)}; "
                             f"failing: {_fails(bad)}")
    assert ok


def _random_poly(rng: random.Random, syms) -> RationalFunction:
    out = RationalFunction.coerce(0)
    for _ in range(rng.randint(1, 4)):
        term = const(Fraction(rng.randint(-9, 9), rng.randint(1, 7)))
        for s in syms:
            e = rng.randint(0, 2)
            if e:
                term = term * var(s) ** e
        out = out + term
    return out


def _random_rf(rng, syms) -> RationalFunction:
    den = _random_poly(rng, syms)
    while den.is_zero():
        den = _random_poly(rng, syms)
    return _random_poly(rng, syms) / den


def test_criterion_11_kernel_properties():
    rng = random.Random(20261016)
    syms = [symbol(n) for n in ("x", "y", "t", "a0")]
    passed = 0
    for _ in range(PROPERTY_CASES):
        f, g = _random_rf(rng, syms), _random_rf(rng, syms)
        s = rng.choice(syms)
        rules = {rng.choice(syms): _random_rf(rng, syms)}
        try:
            hom = (substitute(f + g, rules) == substitute(f, rules) + substitute(g, rules)
                   and substitute(f * g, rules) == substitute(f, rules) * substitute(g, rules))
        except (SingularSubstitution, DivisionByZero):
            hom = True
        leibniz = (f * g).diff(s) == f.diff(s) * g + f * g.diff(s)
        r = _random_poly(rng, syms)
        if r.is_zero():
            r = RationalFunction.coerce(1)
        normal = (f * r / r) == f and parse(dumps(f)) == f and dumps(f * r / r) == dumps(f)
        passed += hom and leibniz and normal
    params, ic, _ = flow.default_setup("A5_2", 0)
    orders = flow.observed_order("A5_2", params, ic, "2", "5/2", steps=(2, 4, 8), digits=60)
    ok = passed == PROPERTY_CASES and min(orders) >= MIN_OBSERVED_ORDER
    record_criterion(11, ok, f"{passed}/{PROPERTY_CASES} homomorphism/Leibniz/normalization cases; "
                             f"observed order {min(orders):.2f} >= {MIN_OBSERVED_ORDER}")
    assert ok
