"""Maps between systems: the confluence A7_2 -> C3_1, the equivalence
C3_1 -> A5_2 and the reductions of principal parts to Painleve VI, V, III.

Reductions act on one canonical pair (q, p) with {p, q} = 1.  A pipeline is
a list of symplectic steps whose coefficients depend on a base parameter s;
the source time is t(s) and the target time T(s).  Writing the steps as
(q, p) -> (Q, P), the new Hamiltonian is

    K_new = (dt/ds * K(q(Q, P), p(Q, P), t(s)) + R) / (dT/ds),

where R generates the explicit s-dependence of the steps:
dR/dP = dQ/ds and dR/dQ = -dP/ds at fixed (q, p).  R is found by polynomial
integration in P and then in Q.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import config
from .algebra import (
    EPS_SQRT, I_UNIT, ONE, ZERO, Polynomial, RationalFunction, const, dumps, parse, register,
    substitute, symbol, var,
)
from .algebra.numeric import eval_numeric
from .algebra.radicals import EMPTY, RadicalContext
from .algebra.series import laurent_leading, laurent_with_radicals
from .algebra.symbols import PARAMS, PHASE, TIME, Symbol
from .catalog import HamiltonianSystem, LinearConstraint, get_system, get_target, principal_part
from .errors import ConfigurationError, NearSingularEvaluation
from .maps import BirationalMap, apply, compose, is_symplectic
from .report import INCONCLUSIVE, VerificationReport, make

__all__ = [
    "ReductionStep", "ReductionPipeline", "PIPELINES", "get_pipeline", "transformed_hamiltonian",
    "check_reduction", "check_step_symplectic", "check_beta_constraint",
    "check_confluence_hamiltonian", "check_confluence_group", "confluence_group_reports",
    "check_equivalence_c31_a52", "reduction_reports",
]

_PAIRS = {"xy": (symbol("x"), symbol("y")), "zw": (symbol("z"), symbol("w"))}


# -- pipelines ------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionStep:
    """(q, p) -> (Q, P) with its inverse, written in the pair's own names."""

    forward: tuple   # (Q text, P text) in q, p
    inverse: tuple   # (q text, p text) in Q, P


@dataclass(frozen=True)
class ReductionPipeline:
    """A principal part, a chain of steps and the canonical target it should reach.

    ``radicals`` lists (auxiliary, square) pairs for the numeric tower; in
    exact mode every quantity is rational in ``base``.  ``aliases`` names
    intermediate quantities substituted into the step texts.
    """

    id: str
    system: str
    pair: str
    steps: tuple
    base: str
    source_time: str
    target_time: str
    target: str
    beta: tuple
    scale: Fraction
    mode: str = "exact"
    radicals: tuple = ()
    aliases: tuple = ()
    printed: bool = True
    note: str = ""

    @property
    def qp(self) -> tuple[Symbol, Symbol]:
        return _PAIRS[self.pair]

    def context(self) -> RadicalContext:
        ctx = EMPTY
        for name, square in self.radicals:
            ctx = ctx.extend(register(name), self._parse(square, ctx))
        return ctx

    def _parse(self, text: str, ctx: RadicalContext = EMPTY) -> RationalFunction:
        local = {}
        for name, value in self.aliases:
            local[name] = _parse_with(value, local, ctx)
        return _parse_with(text, local, ctx)

    def to_text(self) -> str:
        """Canonical pipeline file; :meth:`from_text` reads it back."""
        lines = [f"# pipeline {self.id}", f"id = {self.id}"]
        for key in ("system", "pair", "base", "source_time", "target_time", "target"):
            lines.append(f"{key} = {getattr(self, key)}")
        lines += [f"beta = {'; '.join(self.beta)}", f"scale = {self.scale}",
                  f"mode = {self.mode}", f"printed = {str(self.printed).lower()}"]
        if self.note:
            lines.append(f"note = {self.note}")
        lines += [f"radical {name} = {square}" for name, square in self.radicals]
        lines += [f"alias {name} = {value}" for name, value in self.aliases]
        lines += ["step " + " ; ".join(st.forward + st.inverse) for st in self.steps]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ReductionPipeline":
        fields, radicals, aliases, steps = {}, [], [], []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("step "):
                parts = tuple(x.strip() for x in line[5:].split(";"))
                if len(parts) != 4:
                    raise ConfigurationError(f"step needs four expressions: {line!r}")
                steps.append(ReductionStep(parts[:2], parts[2:]))
                continue
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key.startswith("radical "):
                radicals.append((key[8:].strip(), value))
            elif key.startswith("alias "):
                aliases.append((key[6:].strip(), value))
            else:
                fields[key] = value
        return cls(
            fields["id"], fields["system"], fields["pair"], tuple(steps),
            base=fields["base"], source_time=fields["source_time"],
            target_time=fields["target_time"], target=fields["target"],
            beta=tuple(b.strip() for b in fields["beta"].split(";")),
            scale=Fraction(fields["scale"]), mode=fields.get("mode", "exact"),
            radicals=tuple(radicals), aliases=tuple(aliases),
            printed=fields.get("printed", "true") == "true", note=fields.get("note", ""))

    def describe(self) -> str:
        tgt = get_target(self.target)
        betas = ", ".join(self.beta)
        return (f"{self.id}: {self.system}|{self.pair} -> {self.scale}*{tgt.id}"
                f"({betas}) at T = {self.target_time} [{self.mode}]")


def _parse_with(text: str, local: dict, ctx: RadicalContext) -> RationalFunction:
    f = parse(text, local)
    return ctx.reduce(f) if ctx else f


def _step_texts_k2(a: str, b: str) -> tuple:
    """The five K2 steps with sqrt(t-1) = a and sqrt(t(t-1)) = b."""
    c = f"(2*t-1+2*({b}))"
    d = f"(2*(1-t-({b})))"
    return (
        ReductionStep((f"2*({a})*z", f"w/(2*({a}))+1/2"), (f"z/(2*({a}))", f"2*({a})*(w-1/2)")),
        ReductionStep(("-(z*w-a4)*w", "1/w"), ("(a4-z*w)*w", "1/w")),
        ReductionStep((f"z/{c}", f"{c}*w+{d}"), (f"{c}*z", f"(w-{d})/{c}")),
        ReductionStep(("-(z*w-a4)*w", "1/w"), ("(a4-z*w)*w", "1/w")),
        ReductionStep(("w", "-z"), ("-w", "z")),
    )


_K4_STEPS = (
    ReductionStep(("z/(2*r)", "2*r*w+2"), ("2*r*z", "(w-2)/(2*r)")),
    ReductionStep(("-(z*w-a3)*w", "1/w"), ("(a3-z*w)*w", "1/w")),
    ReductionStep(("-z/r**2+1", "-r**2*w"), ("-(z-1)*r**2", "-w/r**2")),
    ReductionStep(("w+r**2/4", "-z"), ("-w", "z-r**2/4")),
    ReductionStep(("z", "w+1"), ("z", "w-1")),
)

_K2_BETA = ("a1+a3-1", "a1+a3", "a4", "a0+2*a2+a3", "a0+2*a2+a3")
# t as an element of the tower over T: the root of 4T(T-1) t^2 - 4T(T-1) t - 1
_K2_TIME = "(2*T*(T-1) - (2*T-1)*rT)/(4*T*(T-1))"

PIPELINES: dict[str, ReductionPipeline] = {p.id: p for p in (
    ReductionPipeline(
        "K1", "A7_2", "xy", (ReductionStep(("y", "-x"), ("-y", "x")),),
        base="t", source_time="t", target_time="t", target="PVI",
        beta=("a3", "a3+a4", "a2", "a0", "a1"), scale=Fraction(1)),
    ReductionPipeline(
        "K2", "A7_2", "zw", _step_texts_k2("rt1", "rT/(4*T*(T-1))"),
        base="T", source_time=_K2_TIME, target_time="T", target="PVI",
        beta=_K2_BETA, scale=Fraction(-1, 2), mode="numeric",
        radicals=(("rT", "T*(T-1)"), ("rt1", _K2_TIME + " - 1")),
        aliases=(("t", _K2_TIME),),
        note="printed scale -1/2"),
    ReductionPipeline(
        "K2.corrected", "A7_2", "zw", _step_texts_k2("rt1", "rT/(4*T*(T-1))"),
        base="T", source_time=_K2_TIME, target_time="T", target="PVI",
        beta=_K2_BETA, scale=Fraction(1, 2), mode="numeric",
        radicals=(("rT", "T*(T-1)"), ("rt1", _K2_TIME + " - 1")),
        aliases=(("t", _K2_TIME),), printed=False,
        note="scale +1/2 with K2 = H at x = y = 0"),
    ReductionPipeline(
        "K2.rational", "A7_2", "zw",
        _step_texts_k2("(1-n**2)/(2*n)", "-(1-n**4)/(4*n**2)"),
        base="n", source_time="((1+n**2)/(2*n))**2", target_time="1/(1-n**4)", target="PVI",
        beta=_K2_BETA, scale=Fraction(1, 2), aliases=(("t", "((1+n**2)/(2*n))**2"),),
        printed=False,
        note="exact check on the rational curve t = ((1+n^2)/(2n))^2, T = 1/(1-n^4)"),
    ReductionPipeline(
        "K3", "A5_2", "xy", (ReductionStep(("y/t", "-t*x"), ("-y/t", "t*x")),),
        base="t", source_time="t", target_time="-1/t", target="PV",
        beta=("a2+a3", "a1", "a0/2"), scale=Fraction(1)),
    ReductionPipeline(
        "K3.corrected", "C3_1", "xy", (ReductionStep(("y/t", "-t*x"), ("-y/t", "t*x")),),
        base="t", source_time="t", target_time="-1/t", target="PV",
        beta=("a2+a3", "a1", "a0/2"), scale=Fraction(1), printed=False,
        note="principal part taken in the C3_1 coordinates before the equivalence map"),
    ReductionPipeline(
        "K4", "A5_2", "zw", _K4_STEPS,
        base="r", source_time="1/r**2", target_time="r**4/16", target="PIII",
        beta=("0", "a3+1"), scale=Fraction(1, 2)),
    ReductionPipeline(
        "K4.corrected", "A5_2", "zw", _K4_STEPS,
        base="r", source_time="1/r**2", target_time="r**4/16", target="PIII",
        beta=("a3", "1"), scale=Fraction(1, 2), printed=False,
        note="parameters (a3, 1) in place of (0, a3+1)"),
)}


def get_pipeline(pid: str) -> ReductionPipeline:
    try:
        return PIPELINES[pid]
    except KeyError:
        raise ConfigurationError(f"unknown pipeline {pid!r}") from None


# -- the transformation -------------------------------------------------------------

def _integrate(f: RationalFunction, v: Symbol) -> RationalFunction:
    """Antiderivative in ``v`` of a function whose denominator is free of ``v``."""
    if f.den.has(v):
        raise ConfigurationError(f"cannot integrate {dumps(f)} in {v.name}")
    terms = {}
    for m, c in f.num.terms.items():
        e = (m >> v.shift) & 0xFFFF
        terms[m + v.monomial] = c / (e + 1)
    return RationalFunction(Polynomial.from_terms(terms), f.den)


def _compose_steps(p: ReductionPipeline, ctx: RadicalContext):
    q, pp = p.qp
    fwd = {q: var(q), pp: var(pp)}
    inv = {q: var(q), pp: var(pp)}
    maps = []
    for step in p.steps:
        f = {q: p._parse(step.forward[0], ctx), pp: p._parse(step.forward[1], ctx)}
        g = {q: p._parse(step.inverse[0], ctx), pp: p._parse(step.inverse[1], ctx)}
        maps.append((f, g))
        fwd = {v: substitute(f[v], fwd, ctx or None) for v in (q, pp)}
        inv = {v: substitute(inv[v], g, ctx or None) for v in (q, pp)}
    return fwd, inv, maps


def transformed_hamiltonian(p: ReductionPipeline, K: RationalFunction | None = None,
                            ctx: RadicalContext | None = None) -> RationalFunction:
    """The principal part carried through every step of ``p``."""
    ctx = p.context() if ctx is None else ctx
    q, pp = p.qp
    s = register(p.base)
    if K is None:
        K = principal_part(get_system(p.system), p.pair)
    fwd, inv, _ = _compose_steps(p, ctx)
    tsrc = p._parse(p.source_time, ctx)
    Ttgt = p._parse(p.target_time, ctx)
    sub = dict(inv)
    if s is not TIME:
        sub[TIME] = tsrc
    Kh = substitute(K, sub, ctx or None)
    dq = substitute(_d(ctx, fwd[q], s), inv, ctx or None)
    dp = substitute(_d(ctx, fwd[pp], s), inv, ctx or None)
    R1 = _integrate(dq, pp)
    rest = _reduce(ctx, -dp - R1.diff(q))
    if rest.has(pp):
        raise ConfigurationError(f"{p.id}: steps are not symplectic in the base parameter")
    R = R1 + _integrate(rest, q)
    return _reduce(ctx, (_d(ctx, tsrc, s) * Kh + R) / _d(ctx, Ttgt, s))


def _d(ctx: RadicalContext, f: RationalFunction, s: Symbol) -> RationalFunction:
    return ctx.diff(f, s) if ctx else f.diff(s)


def _reduce(ctx: RadicalContext, f: RationalFunction) -> RationalFunction:
    return ctx.reduce(f) if ctx else f


def _target(p: ReductionPipeline, ctx: RadicalContext) -> RationalFunction:
    q, pp = p.qp
    tgt = get_target(p.target)
    values = [p._parse(b, ctx) for b in p.beta]
    return tgt.instantiate(var(q), var(pp), p._parse(p.target_time, ctx), values) * p.scale


def _phase_free(f: RationalFunction) -> bool:
    return not any(f.has(v) for v in PHASE)


def check_reduction(p: ReductionPipeline | str, samples: int | None = None,
                    digits: int | None = None, seed: int = 0) -> VerificationReport:
    """The transformed principal part equals scale * target up to a function of time."""
    if isinstance(p, str):
        p = get_pipeline(p)
    if p.mode == "numeric":
        return _check_numeric(p, samples or 20, digits or config.DIGITS, seed)
    start = time.perf_counter()
    sys = get_system(p.system)
    diff = transformed_hamiltonian(p) - _target(p, EMPTY)
    mode = "free"
    if not _phase_free(diff):
        mode = "constraint"
        diff = substitute(diff, sys.constraint.elimination())
    ok = _phase_free(diff)
    return make(_cid(p), ok, "0" if ok else dumps(diff), control=False,
                witnesses={"pipeline": p.describe(), "mode": mode if ok else "none",
                           "time_term": dumps(diff) if ok else "", "printed": p.printed,
                           "note": p.note},
                wall_time=time.perf_counter() - start)


def _cid(p: ReductionPipeline, suffix: str = "") -> str:
    return f"reductions.{p.id}{suffix}"


def _sample_T(rng: random.Random) -> mpmath.mpc:
    while True:
        mod = mpmath.mpf(rng.uniform(0.2, 5.0))
        arg = mpmath.mpf(rng.uniform(0, 2 * float(mpmath.pi)))
        T = mpmath.mpc(mod * mpmath.cos(arg), mod * mpmath.sin(arg))
        if abs(T) >= 0.1 and abs(T - 1) >= 0.1:
            return T


def _rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randrange(-40, 41), rng.randrange(1, 17))


def _check_numeric(p: ReductionPipeline, samples: int, digits: int,
                   seed: int) -> VerificationReport:
    """Differences of (K_new - scale*target) between phase points at sampled T.

    The additive time term cancels in each difference, so every difference
    must vanish to working precision.
    """
    start = time.perf_counter()
    sys = get_system(p.system)
    ctx = p.context()
    diff = _reduce(ctx, transformed_hamiltonian(p, ctx=ctx) - _target(p, ctx))
    diff = _reduce(ctx, substitute(diff, sys.constraint.elimination(), ctx))
    q, pp = p.qp
    s = register(p.base)
    rng = random.Random(seed)
    worst = mpmath.mpf(0)
    rows = []
    free = sorted(set(sys.params) - set(sys.constraint.elimination()), key=lambda a: a.index)
    with mpmath.workdps(digits + 10):
        for k in range(samples):
            T = _sample_T(rng)
            point = {s: T}
            for a in free:
                point[a] = _as_mpf(_rational(rng))
            branch = {}
            for k, (name, _) in enumerate(p.radicals):
                aux = symbol(name)
                head = RadicalContext(ctx.defs[:k])
                val = eval_numeric(ctx.definition(aux), point, head, branch, digits)
                branch[aux] = rng.choice((1, -1)) * mpmath.sqrt(val)
            values = []
            for _ in range(3):
                pt = dict(point)
                pt[q] = mpmath.mpc(_as_mpf(_rational(rng)), _as_mpf(_rational(rng)))
                pt[pp] = mpmath.mpc(_as_mpf(_rational(rng)), _as_mpf(_rational(rng)))
                try:
                    values.append(eval_numeric(diff, pt, ctx, branch, digits))
                except NearSingularEvaluation:
                    continue
            if len(values) < 2:
                continue
            err = max(abs(v - values[0]) for v in values[1:])
            worst = max(worst, err)
            rows.append({"T": mpmath.nstr(T, 12), "residual": mpmath.nstr(err, 5)})
    threshold = mpmath.mpf(10) ** -40
    ok = len(rows) >= samples and worst < threshold
    rep = make(_cid(p), ok, mpmath.nstr(worst, 5), control=False, seed=seed,
               witnesses={"pipeline": p.describe(), "samples": len(rows), "digits": digits,
                          "threshold": "1e-40", "points": rows, "printed": p.printed,
                          "note": p.note},
               wall_time=time.perf_counter() - start)
    if len(rows) < samples:
        rep.status = INCONCLUSIVE
        rep.message = f"only {len(rows)} of {samples} sample points were usable"
    return rep


def _as_mpf(f: Fraction) -> mpmath.mpf:
    return mpmath.mpf(f.numerator) / f.denominator


def check_step_symplectic(p: ReductionPipeline | str) -> VerificationReport:
    """Every step preserves the bracket of its pair, coefficients frozen."""
    if isinstance(p, str):
        p = get_pipeline(p)
    start = time.perf_counter()
    ctx = p.context()
    q, pp = p.qp
    _, _, maps = _compose_steps(p, ctx)
    bad = {}
    for k, (f, _) in enumerate(maps, 1):
        rep = is_symplectic(BirationalMap(f, f"{p.id}.step{k}", ctx), pairs=(p.pair,))
        if not rep.passed:
            bad[f"step{k}"] = rep.residual
    return make(_cid(p, ".symplectic"), not bad, next(iter(bad.values()), "0"),
                witnesses={"steps": len(maps), **bad}, wall_time=time.perf_counter() - start)


def check_beta_constraint(p: ReductionPipeline | str) -> VerificationReport:
    """The target constraint follows from the source constraint under ``beta``."""
    if isinstance(p, str):
        p = get_pipeline(p)
    start = time.perf_counter()
    tgt = get_target(p.target)
    sys = get_system(p.system)
    if tgt.constraint is None:
        return make(_cid(p, ".beta"), True, witnesses={"target_constraint": "none"})
    betas = {b: parse(v) for b, v in zip(tgt.params, p.beta)}
    lhs = substitute(tgt.constraint.lhs(), betas)
    residual = substitute(lhs - tgt.constraint.rhs, sys.constraint.elimination())
    ok = residual.is_zero()
    return make(_cid(p, ".beta"), ok, dumps(residual),
                witnesses={"beta_sum": dumps(lhs), "source_constraint": str(sys.constraint),
                           "target_constraint": str(tgt.constraint)},
                wall_time=time.perf_counter() - start)


# -- confluence A7_2 -> C3_1 ------------------------------------------------------

_DELTA = EPS_SQRT
_RHO = register("rho")


def _confluence_rules() -> dict:
    """Old symbols of A7_2 in terms of the C3_1 ones, with eps = delta**2."""
    d = var(_DELTA)
    e = d * d
    a = [var(s) for s in PARAMS]
    x, y, z, w = (var(s) for s in PHASE)
    return {
        PARAMS[0]: e.inverse() + a[0], PARAMS[1]: -e.inverse(), PARAMS[2]: a[1],
        PARAMS[3]: a[2], PARAMS[4]: a[3], TIME: var(TIME) / e,
        PHASE[0]: e * x, PHASE[1]: y / e, PHASE[2]: d * z, PHASE[3]: w / d,
    }


def _confluence_inverse(delta: RationalFunction) -> dict:
    """New symbols in terms of the old ones for a given value of delta."""
    e = delta * delta
    a = [var(s) for s in PARAMS]
    x, y, z, w = (var(s) for s in PHASE)
    return {
        PHASE[0]: x / e, PHASE[1]: e * y, PHASE[2]: z / delta, PHASE[3]: delta * w,
        TIME: e * var(TIME), PARAMS[0]: a[0] + a[1], PARAMS[1]: a[2], PARAMS[2]: a[3],
        PARAMS[3]: a[4],
    }


def _drop_phase_free(f: RationalFunction) -> RationalFunction:
    if any(f.den.has(v) for v in PHASE):
        raise ConfigurationError("denominator depends on phase variables")
    keep = {m: c for m, c in f.num.terms.items() if any((m >> v.shift) & 0xFFFF for v in PHASE)}
    return RationalFunction(Polynomial.from_terms(keep), f.den)


def check_confluence_hamiltonian() -> VerificationReport:
    """delta**-2 H_A7(M) has a regular delta-expansion with constant term H_C3."""
    start = time.perf_counter()
    src = get_system("A7_2")
    tgt = get_system("C3_1")
    K = substitute(src.H, _confluence_rules()) / (var(_DELTA) ** 2)
    K = _drop_phase_free(K)
    order, coeffs = laurent_leading(K, _DELTA, 0)
    lead = coeffs[0] if order == 0 else ZERO
    diff = _drop_phase_free(lead - tgt.H)
    ok = order >= 0 and diff.is_zero()
    lhs = substitute(src.constraint.lhs(), _confluence_rules())
    return make("reductions.confluence.hamiltonian", ok, dumps(diff),
                witnesses={"lowest_order": order, "constraint_image": dumps(lhs),
                           "target_constraint": str(tgt.constraint),
                           "constraint_ok": (lhs - tgt.constraint.lhs()).is_zero()},
                wall_time=time.perf_counter() - start)


# generator word of A7_2, its C3_1 limit, and delta' as (rational part, uses rho)
_CONFLUENCE_GROUP = {
    "S0": (("s0", "s1"), "s0"),
    "S1": (("s2",), "s1"),
    "S2": (("s3",), "s2"),
    "S3": (("s4",), "s3"),
}


def _delta_image(word: tuple) -> tuple[RationalFunction, RadicalContext, dict]:
    """delta' with a1' = -1/delta'**2 after the word, in the new names."""
    d = var(_DELTA)
    src = get_system("A7_2")
    g = _word_map(src, word)
    a1_new = substitute(g.image(PARAMS[1]), _confluence_rules())
    ratio = _reduce(EMPTY, (-(d * d) * a1_new).inverse())   # (delta'/delta)**2
    if (ratio - 1).is_zero():
        return d, EMPTY, {}
    if (ratio + 1).is_zero():
        return -const(I_UNIT) * d, EMPTY, {}
    ctx = RadicalContext(((_RHO, ratio),))
    return d * var(_RHO), ctx, {_RHO: ONE}


def _word_map(sys: HamiltonianSystem, word: tuple) -> BirationalMap:
    out = sys.generator(word[-1])
    for label in reversed(word[:-1]):
        out = compose(sys.generator(label), out)
    return out


def check_confluence_group(label: str, k: int = 2) -> VerificationReport:
    """The A7_2 word for ``label`` tends to the C3_1 generator as delta -> 0."""
    start = time.perf_counter()
    word, target_label = _CONFLUENCE_GROUP[label]
    src = get_system("A7_2")
    tgt = get_system("C3_1").generator(target_label)
    g = _word_map(src, word)
    delta_new, ctx, leading = _delta_image(word)
    back = _confluence_inverse(delta_new)
    M = _confluence_rules()
    bad = {}
    orders = {}
    for v in tuple(PHASE) + (TIME,) + tuple(PARAMS[:4]):
        expr = substitute(substitute(back[v], g.rules), M)
        diff = expr - tgt.image(v)
        if ctx:
            order, coeffs = laurent_with_radicals(diff, _DELTA, 0, ctx, leading)
        else:
            order, coeffs = laurent_leading(diff, _DELTA, 0)
        if diff.is_zero() or (ctx and ctx.is_zero(diff)):
            orders[v.name] = "exact"
            continue
        orders[v.name] = order
        if order <= 0:
            bad[v.name] = dumps(coeffs[0])
    ok = not bad
    return make(f"reductions.confluence.group.{label}", ok, next(iter(bad.values()), "0"),
                witnesses={"word": ".".join(word), "limit": target_label,
                           "delta_image": dumps(delta_new), "residual_orders": orders, **bad},
                wall_time=time.perf_counter() - start)


def confluence_group_reports() -> list[VerificationReport]:
    return [check_confluence_group(label) for label in _CONFLUENCE_GROUP]


# -- equivalence C3_1 -> A5_2 -----------------------------------------------------

EQUIVALENCE_MAPS = {
    # old C3_1 symbols in terms of the A5_2 ones
    "printed": {"a0": "a0-a1", "x": "1/x", "y": "-(x*y+a1)*x"},
    "corrected": {"a0": "a0-a1", "x": "-(x*y-a1)*y", "y": "1/y"},
}


def check_equivalence_c31_a52(which: str = "corrected") -> VerificationReport:
    """H_C3 under the substitution equals H_A5 up to a function of t alone."""
    start = time.perf_counter()
    src = get_system("C3_1")
    tgt = get_system("A5_2")
    m = BirationalMap.from_text(EQUIVALENCE_MAPS[which], f"equivalence.{which}")
    diff = apply(m, src.H) - tgt.H
    mode = "free"
    if not _phase_free(diff):
        mode = "constraint"
        diff = substitute(diff, tgt.constraint.elimination())
    ok = _phase_free(diff)
    sym = is_symplectic(m)
    lhs = apply(m, src.constraint.lhs())
    return make(f"reductions.equivalence.{which}", ok, "0" if ok else dumps(diff),
                witnesses={"time_term": dumps(diff) if ok else "", "mode": mode if ok else "none",
                           "symplectic": sym.passed, "constraint_image": dumps(lhs),
                           "constraint_ok": (lhs - tgt.constraint.lhs()).is_zero(),
                           "printed": which == "printed"},
                wall_time=time.perf_counter() - start)


# -- suite --------------------------------------------------------------------------

def reduction_reports(samples: int | None = None, digits: int | None = None,
                      seed: int = 0) -> list[VerificationReport]:
    out = [check_confluence_hamiltonian(), *confluence_group_reports()]
    out += [check_equivalence_c31_a52("printed"), check_equivalence_c31_a52("corrected")]
    for p in PIPELINES.values():
        out.append(check_reduction(p, samples, digits, seed))
        out.append(check_step_symplectic(p))
        if p.target == "PVI":
            out.append(check_beta_constraint(p))
    return out
