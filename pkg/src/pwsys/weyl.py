"""Checks of the affine Weyl group structure of each catalogued system."""
from __future__ import annotations

import math
import time
from fractions import Fraction

from . import config
from .algebra import RationalFunction, ZERO, dumps, substitute, var
from .algebra.symbols import PHASE, TIME
from .catalog import SERIES_CONTROLS, CoxeterMatrix, HamiltonianSystem, get_system, vector_field
from .errors import SingularSubstitution
from .maps import BirationalMap, apply, compose, compose_word, is_symplectic
from .poisson import flow_derivative, poisson_bracket
from .report import FAIL, INCONCLUSIVE, PASS, RESOURCE_LIMITED, VerificationReport, make

__all__ = [
    "CoxeterMatrix", "check_symmetry", "symmetry_residuals", "check_coxeter",
    "check_involution", "check_trivial_at_zero", "check_automorphism", "check_translation",
    "check_poisson_exponential", "check_invariant_divisor", "check_particular_solution",
    "check_generator_symplectic", "expand_word", "corrupted_generator", "map_order",
]


def _cid(sys: HamiltonianSystem, kind: str, idx: str) -> str:
    return f"weyl.{sys.id}.{kind}.{idx}"


def _on_constraint(sys: HamiltonianSystem, f: RationalFunction, avoid=()) -> RationalFunction:
    return substitute(f, sys.constraint.elimination(avoid))


# -- symmetry ---------------------------------------------------------------------

def symmetry_residuals(sys: HamiltonianSystem, m: BirationalMap) -> dict:
    """Componentwise  d/dt Phi + J(Phi) F - tau' F(Phi, tau, alpha')."""
    F = vector_field(sys)
    F_mapped = {v: apply(m, F[v]) for v in PHASE}
    tau_prime = m.time_jacobian
    out = {}
    for v in PHASE:
        phi = m.image(v)
        lhs = phi.diff(TIME)
        for u in PHASE:
            d = phi.diff(u)
            if d:
                lhs = lhs + d * F[u]
        out[v] = lhs - F_mapped[v] * tau_prime
    return out


def check_symmetry(sys: HamiltonianSystem, m: BirationalMap, control: bool = False,
                   check_id: str | None = None) -> VerificationReport:
    """The map sends solutions to solutions: exact identity of vector fields.

    The identity is tried with free parameters first and, when that leaves a
    residual, again with the highest-index parameter eliminated by the
    constraint.  The witness ``mode`` records which one closed.
    """
    start = time.perf_counter()
    cid = check_id or _cid(sys, "symmetry", m.label)
    try:
        res = symmetry_residuals(sys, m)
    except SingularSubstitution as exc:
        return VerificationReport(cid, INCONCLUSIVE, str(exc), control=control,
                                  wall_time=time.perf_counter() - start)
    mode = "free"
    if any(r for r in res.values()):
        mode = "constraint"
        res = {v: _on_constraint(sys, r) for v, r in res.items()}
    bad = {v.name: dumps(r) for v, r in res.items() if r}
    ok = not bad
    return make(cid, ok, "0" if ok else next(iter(bad.values())), control=control,
                witnesses={"mode": mode if ok else "none", "tau_prime": dumps(m.time_jacobian),
                           **bad},
                wall_time=time.perf_counter() - start)


def corrupted_generator(m: BirationalMap, param) -> BirationalMap:
    """Copy of ``m`` with ``param`` replaced by ``param + 1`` inside the phase rules."""
    shift = {param: var(param) + 1}
    rules = dict(m.rules)
    for v in PHASE:
        if v in rules:
            rules[v] = substitute(rules[v], shift)
    return BirationalMap(rules, m.label + "~corrupt")


# -- group relations -------------------------------------------------------------------

def _identity_on(m: BirationalMap, symbols) -> bool:
    return all(s not in m.rules for s in symbols)


def _all_symbols(sys):
    return tuple(PHASE) + (TIME,) + tuple(sys.params)


def map_order(factors, symbols, limit: int, budget: int | None = None):
    """Smallest k <= limit with (factors[0] factors[1] ...)**k the identity on
    ``symbols``; None if there is none.

    Powers grow by prepending one factor at a time, which substitutes the
    small generator rules into the accumulated images and keeps the common
    denominators short.  Returns ("budget", k) when the numerator degree of
    the k-th power exceeds ``budget``.
    """
    if isinstance(factors, BirationalMap):
        factors = [factors]
    budget = config.DEGREE_BUDGET if budget is None else budget
    p = BirationalMap.identity()
    for k in range(1, limit + 1):
        for g in reversed(factors):
            p = compose(g, p)
        if _identity_on(p, symbols):
            return k
        if p.max_degree() > budget:
            return ("budget", k)
    return None


def check_coxeter(sys: HamiltonianSystem, i: int, j: int,
                  budget: int | None = None) -> VerificationReport:
    """(s_i s_j) has exact order m_ij on phase variables, parameters and t."""
    start = time.perf_counter()
    m_ij = sys.coxeter[i, j]
    cid = _cid(sys, "coxeter", f"{i}-{j}")
    factors = [sys.generator(f"s{i}"), sys.generator(f"s{j}")]
    order = map_order(factors, _all_symbols(sys), m_ij, budget)
    elapsed = time.perf_counter() - start
    if isinstance(order, tuple):
        return VerificationReport(cid, RESOURCE_LIMITED, f"degree budget exceeded at power {order[1]}",
                                  witnesses={"expected": m_ij}, wall_time=elapsed)
    ok = order == m_ij
    return make(cid, ok, "0" if ok else f"order {order}",
                witnesses={"expected": m_ij, "observed": order if order else f">{m_ij}"},
                wall_time=elapsed)


def check_involution(sys: HamiltonianSystem, label: str) -> VerificationReport:
    start = time.perf_counter()
    g = sys.generator(label)
    sq = compose(g, g)
    bad = {s.name: dumps(r) for s, r in sq.rules.items()}
    params_ok = all(s not in sq.rules for s in sys.params)
    return make(_cid(sys, "involution", label), not bad, next(iter(bad.values()), "0"),
                witnesses={"parameters_involutive": params_ok, **bad},
                wall_time=time.perf_counter() - start)


def check_trivial_at_zero(sys: HamiltonianSystem, label: str) -> VerificationReport:
    """With its own parameter set to 0 the generator fixes the phase variables."""
    start = time.perf_counter()
    g = sys.generator(label)
    k = int(label[1:])
    zero = {sys.params[k]: ZERO}
    bad = {}
    for v in PHASE:
        img = substitute(g.image(v), zero)
        if img != var(v):
            bad[v.name] = dumps(img)
    return make(_cid(sys, "trivial_at_zero", label), not bad, next(iter(bad.values()), "0"),
                witnesses=bad, wall_time=time.perf_counter() - start)


def check_generator_symplectic(sys: HamiltonianSystem, label: str) -> VerificationReport:
    rep = is_symplectic(sys.generator(label))
    rep.check_id = _cid(sys, "symplectic", label)
    return rep


def check_automorphism(sys: HamiltonianSystem) -> VerificationReport:
    """Symmetry of pi, conjugation s0 <-> s1, parameter involution; order reported."""
    start = time.perf_counter()
    pi = sys.automorphism
    cid = _cid(sys, "automorphism", "pi")
    if pi is None:
        return VerificationReport(cid, INCONCLUSIVE, "no automorphism catalogued")
    sym = check_symmetry(sys, pi)
    pinv = pi.inverse
    inverse_ok = compose(pi, pinv).is_identity() and compose(pinv, pi).is_identity()
    conj = {}
    swap = {"s0": "s1", "s1": "s0"}
    for g in sys.generators:
        target = sys.generator(swap.get(g.label, g.label))
        c = compose_word([pi, g, pinv])
        conj[g.label] = c.same_as(target)
    params_only = pi.restricted(sys.params)
    param_involution = compose(params_only, params_only).is_identity()
    order = map_order(pi, _all_symbols(sys), 12)
    phase_order = map_order(pi.restricted(PHASE), PHASE, 12)
    ok = sym.passed and inverse_ok and all(conj.values()) and param_involution
    return make(cid, ok, sym.residual,
                witnesses={"symmetry": sym.status, "inverse": inverse_ok,
                           "conjugation": {k: v for k, v in conj.items()},
                           "parameter_involution": param_involution,
                           "order_full": order, "order_phase": phase_order},
                wall_time=time.perf_counter() - start)


def expand_word(sys: HamiltonianSystem, word: list[str]) -> list[str]:
    out = []
    for label in word:
        if label in sys.translations:
            out += expand_word(sys, sys.translations[label][0])
        else:
            out.append(label)
    return out


def check_translation(sys: HamiltonianSystem, name: str, word=None,
                      expected=None) -> VerificationReport:
    """The word acts on the parameters as a pure translation by ``expected``."""
    start = time.perf_counter()
    if word is None:
        word, expected = sys.translations[name]
    labels = expand_word(sys, list(word))
    maps = [sys.generator(lbl).restricted(sys.params) for lbl in labels]
    T = compose_word(maps, name)
    elim = sys.constraint.elimination()
    # the shift is only constant on the constraint hyperplane
    shift, pure = [], True
    for p in sys.params:
        d = substitute(T.image(p) - var(p), elim)
        if d.is_constant():
            c = d.constant_value()
            shift.append(Fraction(int(c.numerator), int(c.denominator)))
        else:
            pure = False
            shift.append(None)
    want = [Fraction(v) for v in expected]
    ok = pure and shift == want
    return make(_cid(sys, "translation", name), ok,
                "0" if ok else str([str(v) for v in shift]),
                witnesses={"word": " ".join(labels), "shift": [str(v) for v in shift],
                           "expected": [str(v) for v in want], "pure_translation": pure},
                wall_time=time.perf_counter() - start)


# -- Poisson exponential ------------------------------------------------------------

def check_poisson_exponential(sys: HamiltonianSystem, i: int, g="x", max_terms: int = 12,
                              control: bool | None = None) -> VerificationReport:
    """s_i(g) = sum_k (a_i/f_i)^k / k! ad_{f_i}^k(g), terminating.

    ``control`` defaults to True for generators without a table divisor.
    """
    start = time.perf_counter()
    if control is None:
        control = (sys.id, i) in SERIES_CONTROLS
    g = RationalFunction.coerce(g)
    f = sys.series_divisors[i]
    a = var(sys.params[i])
    cid = _cid(sys, "series", f"s{i}.{dumps(g)}")
    term = g
    total = g
    coeff = a / f
    power = RationalFunction.coerce(1)
    terminated_at = None
    for k in range(1, max_terms + 1):
        term = poisson_bracket(f, term)
        if term.is_zero():
            terminated_at = k
            break
        power = power * coeff
        total = total + power * term / math.factorial(k)
    target = apply(sys.generator(f"s{i}"), g)
    diff = total - target
    ok = terminated_at is not None and diff.is_zero()
    return make(cid, ok, dumps(diff) if terminated_at else "series did not terminate",
                control=control,
                witnesses={"terms": terminated_at, "series": dumps(total),
                           "generator": dumps(target), "divisor": dumps(f)},
                wall_time=time.perf_counter() - start)


# -- invariant divisors and particular solutions ------------------------------------

def check_invariant_divisor(sys: HamiltonianSystem, i: int, value=0,
                            order: str = "eliminate-first",
                            control: bool | None = None) -> VerificationReport:
    """{H, f_i} + df_i/dt lies in the ideal (f_i) on the constraint with a_i = value.

    ``order`` selects whether the constraint is used before or after setting
    a_i; both give the same hyperplane and are run as a cross-check.
    """
    start = time.perf_counter()
    f = sys.divisor(i)
    ai = sys.params[i]
    control = (value != 0) if control is None else control
    dot = flow_derivative(sys.H, f)
    spec = {ai: RationalFunction.coerce(value)}
    if order == "eliminate-first":
        dot = substitute(substitute(dot, sys.constraint.elimination(avoid=(ai,))), spec)
    else:
        dot = substitute(dot, spec)
        elim = sys.constraint.elimination(avoid=(ai,))
        (p, r), = elim.items()
        dot = substitute(dot, {p: substitute(r, spec)})
    quotient = dot.num.exact_div(f.num) if not dot.is_zero() else dot.num
    ok = quotient is not None
    suffix = f"{i}" + ("" if order == "eliminate-first" else ".alt") + \
        (f".control" if control else "")
    residual = "0" if ok else dumps(dot)
    return make(_cid(sys, "divisor", suffix), ok, residual, control=control,
                witnesses={"f": dumps(f), "value": str(value), "order": order,
                           "cofactor": dumps(RationalFunction(quotient, dot.den)) if ok else None},
                wall_time=time.perf_counter() - start)


def check_particular_solution(sys: HamiltonianSystem, name: str,
                              generic: bool = False) -> VerificationReport:
    """The set f = 0 is invariant under the flow at the stated parameters."""
    start = time.perf_counter()
    ps = sys.particular[name]
    dot = flow_derivative(sys.H, ps.function)
    if not generic:
        dot = substitute(dot, ps.specialization)
    on_set = substitute(dot, {ps.solved: ps.value})
    if not on_set.is_zero():
        on_set = substitute(on_set, sys.constraint.elimination(avoid=ps.specialization))
        if not generic:
            on_set = substitute(on_set, ps.specialization)
    ok = on_set.is_zero()
    return make(_cid(sys, "particular", name + (".control" if generic else "")), ok,
                dumps(on_set), control=generic,
                witnesses={"function": dumps(ps.function),
                           "specialization": {k.name: dumps(v)
                                              for k, v in ps.specialization.items()}},
                wall_time=time.perf_counter() - start)
