"""Command line: ``pwsys verify``, ``pwsys integrate`` and ``pwsys list``.

Exit codes: 0 every check behaved as expected, 1 mathematical failure,
2 usage error, 3 input-contract violation, 4 resource limit.
"""
from __future__ import annotations

import json
import sys as _sys
from pathlib import Path

import click

from . import __version__, config
from .catalog import CLI_NAMES, SYSTEM_IDS, get_system
from .errors import ConfigurationError, ParseError
from .report import FAIL, PASS

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONTRACT, EXIT_RESOURCE = 0, 1, 2, 3, 4

SYSTEM_CHOICES = list(CLI_NAMES) + ["all"]
SUITE_CHOICES = ["symmetry", "coxeter", "divisors", "holomorphy", "reductions", "numeric", "all"]


def _systems(name: str) -> list[str]:
    return list(SYSTEM_IDS) if name == "all" else [CLI_NAMES[name]]


def build_document(reports, options: dict) -> dict:
    """The JSON report document; key order and content depend only on inputs."""
    counts = {"total": len(reports), "passed": 0, "failed": 0, "other": 0,
              "unexpected": 0, "controls": 0}
    for r in reports:
        counts["passed" if r.status == PASS else "failed" if r.status == FAIL else "other"] += 1
        counts["controls"] += r.control
        counts["unexpected"] += not r.as_expected
    return {
        "engine_version": __version__,
        "options": options,
        "summary": counts,
        "reports": [r.to_dict() for r in reports],
    }


def render_markdown(doc: dict) -> str:
    s = doc["summary"]
    lines = [
        f"# pwsys verification ({doc['engine_version']})", "",
        f"{s['total']} checks, {s['passed']} passed, {s['failed']} failed, "
        f"{s['other']} other, {s['unexpected']} unexpected.", "",
        "| check | status | expected | residual | note |",
        "|---|---|---|---|---|",
    ]
    for r in doc["reports"]:
        residual = r["residual"] if len(r["residual"]) <= 40 else r["residual"][:37] + "..."
        mark = "" if r["as_expected"] else " **!**"
        lines.append(f"| `{r['id']}` | {r['status']}{mark} | {r['expected']} | "
                     f"`{residual}` | {r['message']} |")
    return "\n".join(lines) + "\n"


@click.group()
@click.version_option(__version__, prog_name="pwsys")
def main():
    """Verify the coupled Painleve-type systems and their symmetries."""


@main.command()
@click.option("--system", "system", type=click.Choice(SYSTEM_CHOICES), default="all",
              show_default=True)
@click.option("--suite", type=click.Choice(SUITE_CHOICES), default="all", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "md"]), default="json",
              show_default=True)
@click.option("--digits", type=click.IntRange(30, 1000), default=config.DIGITS,
              show_default=True, help="Working precision of numeric checks.")
@click.option("--samples", type=click.IntRange(1, 10000), default=20, show_default=True,
              help="Sample points of numeric reduction checks.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=click.IntRange(1, 256), default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the report here instead of stdout.")
def verify(system, suite, fmt, digits, samples, seed, jobs, out):
    """Run verification suites and print a report."""
    from .suites import SUITES, exit_status, run_suites
    suites = list(SUITES) if suite == "all" else [suite]
    reports = run_suites(suites, _systems(system), jobs=jobs, digits=digits,
                         samples=samples, seed=seed)
    options = {"system": system, "suite": suite, "digits": digits, "samples": samples,
               "seed": seed}
    doc = build_document(reports, options)
    text = (json.dumps(doc, indent=2, sort_keys=False) + "\n") if fmt == "json" \
        else render_markdown(doc)
    if out:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    else:
        click.echo(text, nl=False)
    _sys.exit(exit_status(reports))


def _parse_params(text: str) -> dict:
    out = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in item:
            raise click.UsageError(f"parameter {item!r} is not of the form name=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _constraint_defect(sys, params: dict) -> float:
    from .flow import to_mpc
    import gmpy2
    with gmpy2.context(gmpy2.get_context(), precision=400):
        total = sum(to_mpc(str(c)) * to_mpc(params[p.name])
                    for p, c in zip(sys.constraint.params, sys.constraint.coeffs))
        return float(abs(total - to_mpc(str(sys.constraint.rhs))))


@main.command()
@click.option("--system", "system", type=click.Choice(list(CLI_NAMES)), required=True)
@click.option("--params", "params_text", default=None,
              help="Comma separated name=value pairs, e.g. a0=1/3,a1=1/5+1/2j.")
@click.option("--ic", default=None, help="Initial (x,y,z,w), comma separated.")
@click.option("--path", "path_text", default=None,
              help="Complex time polyline, comma separated, e.g. 2,9/4+1/4j,5/2.")
@click.option("--tol", type=float, default=1e-20, show_default=True)
@click.option("--digits", type=click.IntRange(30, 1000), default=config.DIGITS,
              show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path),
              default=Path("trajectory.csv"), show_default=True)
def integrate(system, params_text, ic, path_text, tol, digits, seed, out):
    """Integrate one flow and write a CSV plus a JSON sidecar."""
    from .flow import default_setup, integrate as run, write_trajectory
    sys = get_system(CLI_NAMES[system])
    params, ic0, path0 = default_setup(sys, seed)
    params = {k: str(v) for k, v in params.items()}
    try:
        if params_text:
            given = _parse_params(params_text)
            unknown = set(given) - {p.name for p in sys.params}
            if unknown:
                raise click.UsageError(f"unknown parameters {sorted(unknown)}")
            params = given if len(given) == len(sys.params) else {**params, **given}
        ic_vals = [v.strip() for v in ic.split(",")] if ic else [str(v) for v in ic0]
        if len(ic_vals) != 4:
            raise click.UsageError("--ic needs four values")
        path = [p.strip() for p in path_text.split(",")] if path_text else list(path0)
        defect = _constraint_defect(sys, params)
        if defect > 1e-30:
            click.echo(f"error: parameters violate {sys.constraint} (defect {defect:.3g})",
                       err=True)
            _sys.exit(EXIT_CONTRACT)
        traj = run(sys, params, ic_vals, path, tol, digits, seed=seed)
    except (ConfigurationError, ParseError, ValueError, ZeroDivisionError) as exc:
        click.echo(f"error: {exc}", err=True)
        _sys.exit(EXIT_CONTRACT)
    csv_path, json_path = write_trajectory(traj, out)
    click.echo(f"{traj.status}: {len(traj.samples)} samples -> {csv_path}, {json_path}")
    _sys.exit(EXIT_OK)


def _rules_line(m) -> str:
    from .algebra import dumps
    return "; ".join(f"{v.name} -> {dumps(r)}" for v, r in sorted(m.rules.items()))


@main.command(name="list")
@click.argument("what", type=click.Choice(["systems", "generators", "charts", "pipelines",
                                           "checks"]))
@click.option("--system", "system", type=click.Choice(SYSTEM_CHOICES), default="all",
              show_default=True)
def list_(what, system):
    """Print catalog contents."""
    ids = _systems(system)
    if what == "systems":
        for sid in ids:
            s = get_system(sid)
            click.echo(f"{sid}  {s.type_name}  params {' '.join(p.name for p in s.params)}"
                       f"  constraint {s.constraint}")
    elif what == "generators":
        for sid in ids:
            s = get_system(sid)
            for label in s.generator_labels:
                click.echo(f"{sid} {label}: {_rules_line(s.generator(label))}")
    elif what == "charts":
        for sid in ids:
            s = get_system(sid)
            for label, chart in s.charts.items():
                click.echo(f"{sid} {label}: {_rules_line(chart.forward)}")
            for cond in s.conditions:
                tag = "  (control)" if cond.control else ""
                click.echo(f"{sid} condition {cond.label}: {cond.describe()}{tag}")
    elif what == "pipelines":
        from .reductions import PIPELINES
        for p in PIPELINES.values():
            click.echo(p.describe() + ("" if p.printed else "  (corrected)"))
        click.echo("confluence: A7_2 -> C3_1, eps = eps_sqrt**2")
        click.echo("equivalence: C3_1 -> A5_2")
    else:
        from .suites import SUITES, _jobs
        for suite in SUITES:
            for job in _jobs(suite, ids):
                kind, sid, arg = job
                click.echo(f"{suite} {kind} {sid or '-'} {'' if arg is None else arg}".rstrip())


def run() -> None:
    """Console entry point with usage errors mapped to exit code 2."""
    try:
        main.main(standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        _sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        _sys.exit(EXIT_USAGE)


if __name__ == "__main__":
    run()
