"""Polynomiality of each system in its catalogued coordinate charts.

A chart condition lists charts to enter in turn, each optionally preceded by
an additive correction (``r3(K + x)``, ``r2(r1(K) + x)``).  Entering a chart
substitutes its verified inverse; the condition holds when the final
denominator is free of phase variables, so powers of t and other
parameter-only factors are allowed.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations_with_replacement

from flint import fmpq, fmpq_mat

from . import config
from .algebra import ONE, Polynomial, RationalFunction, dumps, gcd, substitute, symbol, var
from .algebra.gcd import _flint_ctx, _from_flint, _to_flint
from .algebra.symbols import PHASE, TIME, by_index, exponent, unpack
from .catalog import ChartCondition, HamiltonianSystem, get_system
from .errors import ConfigurationError, SingularSubstitution
from .maps import BirationalMap, is_symplectic, verify_inverse
from .report import INCONCLUSIVE, RESOURCE_LIMITED, VerificationReport, make

__all__ = [
    "check_chart", "check_chart_symplectic", "chart_inverse", "chart_expression",
    "perturbation_control", "holomorphy_reports", "recover_hamiltonian", "RecoveryResult",
]

PERTURBATION = symbol("c")
_PHASE_MASK = 0
for _s in PHASE:
    _PHASE_MASK |= 0xFFFF << _s.shift


def _cid(sys: HamiltonianSystem, label: str, suffix: str = "") -> str:
    return f"holomorphy.{sys.id}.{label}{suffix}"


def chart_inverse(sys: HamiltonianSystem, label: str) -> BirationalMap:
    """The chart's inverse after checking it against the forward map."""
    chart = sys.charts[label]
    if chart.forward.inverse is None:
        rep = verify_inverse(chart.forward, chart.inverse_candidate, PHASE)
        if not rep.passed:
            raise ConfigurationError(f"{sys.id} chart {label}: inverse candidate fails "
                                     f"({rep.residual})")
    return chart.forward.inverse


def chart_expression(sys: HamiltonianSystem, cond: ChartCondition, K=None) -> RationalFunction:
    """The selected expression written in the coordinates of the last chart."""
    expr = sys.H if K is None else RationalFunction.coerce(K)
    for label, addend in cond.steps:
        if addend is not None:
            expr = expr + addend
        expr = substitute(expr, chart_inverse(sys, label).rules)
    return expr


def _phase_in_denominator(f: RationalFunction) -> bool:
    return any(m & _PHASE_MASK for m in f.den.terms)


def check_chart(sys: HamiltonianSystem, cond: ChartCondition, K=None,
                check_id: str | None = None, control: bool | None = None) -> VerificationReport:
    """Pass iff the selected expression is polynomial in the chart phase variables.

    A residual phase denominator is retried with a parameter eliminated by
    the constraint; the ``mode`` witness records which attempt closed.
    """
    start = time.perf_counter()
    control = cond.control if control is None else control
    cid = check_id or _cid(sys, cond.label)
    try:
        expr = chart_expression(sys, cond, K)
    except SingularSubstitution as exc:
        return VerificationReport(cid, INCONCLUSIVE, str(exc), control=control,
                                  wall_time=time.perf_counter() - start)
    mode = "free"
    if _phase_in_denominator(expr):
        mode = "constraint"
        expr = substitute(expr, sys.constraint.elimination())
    ok = not _phase_in_denominator(expr)
    return make(cid, ok, "0" if ok else dumps(expr.den), control=control,
                witnesses={"condition": cond.describe(), "mode": mode if ok else "none",
                           "denominator": dumps(expr.den)},
                wall_time=time.perf_counter() - start)


def check_chart_symplectic(sys: HamiltonianSystem, label: str) -> VerificationReport:
    rep = is_symplectic(sys.charts[label].forward)
    rep.check_id = _cid(sys, label, ".symplectic")
    return rep


def _phase_monomials(degree: int) -> list[RationalFunction]:
    out = []
    for combo in combinations_with_replacement(PHASE, degree):
        m = ONE
        for s in combo:
            m = m * var(s)
        out.append(m)
    return out


def perturbation_control(sys: HamiltonianSystem, cond: ChartCondition,
                         seed: int = 0) -> VerificationReport:
    """The condition on H + c*m for a degree-6 phase monomial m; expected to fail.

    Candidates come from a seeded shuffle; the first one whose image in the
    chart is not polynomial is used, so the control is meaningful for every
    chart.
    """
    rng = random.Random(f"{sys.id}.{cond.label}.{seed}")
    candidates = _phase_monomials(6)
    rng.shuffle(candidates)
    bare = ChartCondition(cond.system, cond.label, tuple((c, None) for c, _ in cond.steps))
    for m in candidates:
        if _phase_in_denominator(chart_expression(sys, bare, m)):
            K = sys.H + var(PERTURBATION) * m
            rep = check_chart(sys, cond, K, _cid(sys, cond.label, ".perturbed"), control=True)
            rep.seed = seed
            rep.witnesses["perturbation"] = dumps(m)
            return rep
    raise ConfigurationError(f"{sys.id} {cond.label}: every degree-6 monomial is polynomial")


def holomorphy_reports(sys: HamiltonianSystem, seed: int = 0) -> list[VerificationReport]:
    """Every condition, its selector controls, perturbed-H controls and chart symplecticity."""
    out = [check_chart_symplectic(sys, label) for label in sys.charts]
    for cond in sys.conditions:
        out.append(check_chart(sys, cond))
        if not cond.control:
            out.append(perturbation_control(sys, cond, seed))
    return out


# -- recovery -------------------------------------------------------------------

class RecoveryResult:
    """Affine solution space {particular + span(basis)} of the chart conditions
    at one exact rational specialisation of t and the parameters."""

    def __init__(self, system: str, point: dict, monomials: list, consistent: bool,
                 particular: list | None, basis: list, contains_H: bool):
        self.system = system
        self.point = point
        self.monomials = monomials
        self.consistent = consistent
        self.particular = particular
        self.basis = basis
        self.contains_H = contains_H

    @property
    def dimension(self) -> int:
        return len(self.basis) if self.consistent else -1

    def contains(self, polys) -> bool:
        """True when every given polynomial lies in span(basis)."""
        vecs = [_coefficients(substitute(RationalFunction.coerce(p), self.point), self.monomials)
                for p in polys]
        if any(v is None for v in vecs):
            return False
        return _rank(self.basis + vecs) == len(self.basis)

    def spans(self, polys) -> bool:
        """True when the basis spans exactly the given polynomials' coefficient vectors."""
        vecs = [_coefficients(substitute(RationalFunction.coerce(p), self.point), self.monomials)
                for p in polys]
        if any(v is None for v in vecs):
            return False
        both = _rank(self.basis + vecs)
        return both == len(self.basis) == _rank(vecs)


def _coefficients(f: RationalFunction, monomials: list):
    if not f.den.is_constant():
        return None
    d = f.den.constant_value()
    index = {m.num.leading_term()[0]: k for k, m in enumerate(monomials)}
    vec = [Fraction(0)] * len(monomials)
    for m, c in f.num.terms.items():
        if m == 0:
            continue
        if m not in index:
            return None
        q = c / d
        vec[index[m]] = Fraction(int(q.numerator), int(q.denominator))
    return vec


def _rank(rows: list) -> int:
    if not rows:
        return 0
    return fmpq_mat([[fmpq(v.numerator, v.denominator) for v in r] for r in rows]).rank()


def _sample_point(sys: HamiltonianSystem, rng: random.Random, satisfy: bool) -> dict:
    point = {TIME: Fraction(rng.randrange(3, 40), rng.randrange(41, 97))}
    for p in sys.params:
        point[p] = Fraction(rng.randrange(-50, 50), rng.randrange(1, 30))
    elim = sys.constraint.elimination()
    (p_last, value), = elim.items()
    exact = substitute(value, {k: RationalFunction.coerce(v) for k, v in point.items()})
    c = exact.constant_value()
    point[p_last] = Fraction(int(c.numerator), int(c.denominator)) + (0 if satisfy else Fraction(1, 7))
    return point


def recover_hamiltonian(sys: HamiltonianSystem | str, seed: int = 0, satisfy: bool = True,
                        degree: int = 6, conditions=None) -> RecoveryResult:
    """Solve the chart conditions for a general polynomial ansatz of ``degree``.

    The unknowns are the coefficients of every nonconstant phase monomial of
    degree at most ``degree`` (the constant is a function of t alone and is
    invisible to the flow).  Everything is specialised at an exact rational
    point, where polynomiality becomes a linear system over Q (see
    ``_obstructions``).  ``conditions`` restricts the chart conditions used.

    Feature-flagged by ``config.ENABLE_RECOVERY``.
    """
    if not config.ENABLE_RECOVERY:
        raise ConfigurationError("Hamiltonian recovery is disabled; set PWSYS_ENABLE_RECOVERY=1")
    if isinstance(sys, str):
        sys = get_system(sys)
    rng = random.Random(seed)
    point = _sample_point(sys, rng, satisfy)
    at = {k: RationalFunction.coerce(v) for k, v in point.items()}
    monomials = [m for d in range(1, degree + 1) for m in _phase_monomials(d)]
    rows: dict = {}

    def add(key, k, value):
        rows.setdefault(key, {})[k] = rows.get(key, {}).get(k, Fraction(0)) + value

    n = len(monomials)
    for cond in sys.conditions:
        if cond.control or (conditions is not None and cond.label not in conditions):
            continue
        steps = []
        for label, addend in cond.steps:
            inv = {s: substitute(r, at) for s, r in chart_inverse(sys, label).rules.items()}
            steps.append((inv, substitute(addend, at) if addend is not None else None))
        images = []
        for m in monomials:
            f = m
            for inv, _ in steps:
                f = substitute(f, inv)
            images.append(f)
        shift = RationalFunction.coerce(0)
        for inv, addend in steps:
            if addend is not None:
                shift = shift + addend
            shift = substitute(shift, inv)
        parts = [(k, f) for k, f in enumerate(images)] + [(n, -shift)]
        for key, k, value in _obstructions(parts):
            add((cond.label,) + key, k, value)
    system = [[r.get(k, Fraction(0)) for k in range(n + 1)] for r in rows.values()]
    consistent, particular, basis = _solve_affine(system, n)
    H_vec = _coefficients(substitute(sys.H, at), monomials) if consistent else None
    contains = False
    if H_vec is not None and consistent:
        contains = all(sum(r[k] * H_vec[k] for k in range(n)) == r[n] for r in system)
    return RecoveryResult(sys.id, point, monomials, consistent, particular, basis, contains)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _obstructions(parts):
    """Linear conditions for sum_k c_k f_k to be a polynomial.

    ``parts`` pairs an unknown index with a rational function over Q in the
    phase variables.  Over the common denominator L the numerator must be
    divisible by every prime power P**e of L.  For a variable P this kills
    the numerator terms of low degree in it; for P linear in some variable v
    it asks the first e Taylor coefficients at the root of P to vanish.
    Yields (key, unknown index, coefficient) triples.
    """
    parts = [(k, f) for k, f in parts if not f.is_zero()]
    L = ONE.num
    for _, f in parts:
        L = L * f.den.exact_div(gcd(L, f.den))
    if L.is_constant():
        return
    nums = [(k, f.num * L.exact_div(f.den)) for k, f in parts]
    for idx, (P, e) in enumerate(_factor(L)):
        if len(P.terms) == 1:
            (mono, _), = P.terms.items()
            (slot, _), = unpack(mono).items()
            v = by_index(slot)
            for k, N in nums:
                for m, c in N.terms.items():
                    if exponent(m, v) < e:
                        yield (idx, m), k, _frac(c)
            continue
        v = next((u for u in PHASE if P.degree(u) == 1), None)
        if v is None:
            raise ConfigurationError(f"denominator factor {P} is not linear in any phase variable")
        split = P.collect(v)
        a, b = split[1], split.get(0, Polynomial())
        derivs = list(nums)
        for j in range(e):
            d = max(N.degree(v) for _, N in derivs)
            for k, N in derivs:
                R = Polynomial()
                for i, coeff in N.collect(v).items():
                    R = R + coeff * (-b) ** i * a ** (d - i)
                for m, c in R.terms.items():
                    yield (idx, j, m), k, _frac(c)
            derivs = [(k, N.diff(v)) for k, N in derivs]


def _factor(p: Polynomial) -> list:
    slots = tuple(sorted(p.slots()))
    ctx = _flint_ctx(slots)
    _, factors = _to_flint(p, slots, ctx).factor()
    return [(_from_flint(f, slots), int(e)) for f, e in factors]


def _solve_affine(rows: list, n: int):
    """Solve A c = b for the augmented rows [A | b] over Q."""
    if not rows:
        return True, [Fraction(0)] * n, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    M = fmpq_mat([[fmpq(v.numerator, v.denominator) for v in r] for r in rows])
    R, rank = M.rref()
    pivots = []
    for i in range(rank):
        j = next(j for j in range(n + 1) if R[i, j] != 0)
        if j == n:
            return False, None, []
        pivots.append(j)
    free = [j for j in range(n) if j not in pivots]
    def frac(v):
        return Fraction(int(v.p), int(v.q))

    particular = [Fraction(0)] * n
    for i, j in enumerate(pivots):
        particular[j] = frac(R[i, n])
    basis = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for i, j in enumerate(pivots):
            vec[j] = -frac(R[i, f])
        basis.append(vec)
    return True, particular, basis
