"""Command-line entry point: ``quadchroma exact-box | exact-grid | mc | sweep``.

Exit codes: 0 success, 2 usage error, 3 resource guard refusal, 4 internal
invariant violation.
"""
from __future__ import annotations

import csv
import io
import json
import math
import shlex
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import click

from . import _backend, analytic
from .geometry import CHI_SLOPE, ColorRule, RuleSyntaxError, parse_endpoint, parse_rule
from .lattice import (
    MAX_POINTS,
    GridBox,
    InvariantViolation,
    ResourceGuardError,
    count_box,
    count_box_ie,
    count_grid,
    estimate_quadruples,
)
from .montecarlo import RngSpec, estimate_graph_crossings, estimate_quad_probs, sweep_intervals

EXIT_USAGE, EXIT_GUARD, EXIT_INVARIANT = 2, 3, 4
CONFIRM_THRESHOLD = 10 ** 10


@dataclass
class RunReport:
    command: str
    parameters: Dict[str, Any]
    results: Dict[str, Any]
    references: Dict[str, Any] = field(default_factory=dict)
    wall_time_s: float = 0.0
    workers: int = 1
    backend: str = _backend.BACKEND

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


def _exact(v) -> str:
    """Exact integers and rationals travel as strings."""
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


class RuleParam(click.ParamType):
    name = "rule"

    def convert(self, value, param, ctx):
        if isinstance(value, ColorRule):
            return value
        try:
            return parse_rule(value)
        except RuleSyntaxError as exc:
            self.fail(str(exc), param, ctx)


RULE = RuleParam()


def _echo_command(ctx: click.Context) -> str:
    parts = ctx.command_path.split()
    for name, value in ctx.params.items():
        flag = "--" + name.replace("_", "-")
        if value is None or value is False or value == ():
            continue
        if value is True:
            parts.append(flag)
        elif isinstance(value, (list, tuple)):
            for v in value:
                parts += [flag, str(v)]
        else:
            parts += [flag, str(value)]
    return shlex.join(parts)


def _params(ctx: click.Context) -> Dict[str, Any]:
    out = {}
    for name, value in ctx.params.items():
        if isinstance(value, ColorRule):
            value = str(value)
        elif isinstance(value, (list, tuple)):
            value = [str(v) for v in value]
        elif isinstance(value, Path):
            value = str(value)
        out[name] = value
    return out


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _confirm_cost(tests: int, yes: bool) -> None:
    click.echo(f"estimated quadruple tests: {tests:.3e}", err=True)
    if tests > CONFIRM_THRESHOLD and not yes:
        _fail(f"run needs {tests:.3e} quadruple tests (> {CONFIRM_THRESHOLD:.0e}); pass --yes to proceed", EXIT_GUARD)


def _run(ctx: click.Context, body) -> RunReport:
    threads = _backend.resolve_threads(ctx.params.get("threads"))
    t0 = time.perf_counter()
    try:
        results, references = body(threads)
    except ResourceGuardError as exc:
        _fail(str(exc), EXIT_GUARD)
    except InvariantViolation as exc:
        _fail(f"invariant violated: {exc}", EXIT_INVARIANT)
    return RunReport(
        command=_echo_command(ctx),
        parameters=_params(ctx),
        results=results,
        references=references,
        wall_time_s=round(time.perf_counter() - t0, 6),
        workers=threads,
    )


threads_option = click.option("--threads", type=click.IntRange(min=1), default=None,
                              help="Worker threads (default: $QUADCHROMA_THREADS or all cores).")
rule_option = click.option("--rule", type=RULE, default=str(CHI_SLOPE), show_default=True,
                           help="Edge coloring, e.g. 'blue=(-1,1) vertical=blue'.")
yes_option = click.option("--yes", is_flag=True, help="Allow runs above the cost threshold.")


@click.group()
def main():
    """Exact and Monte Carlo census of same-colored crossings among four points."""


@main.command("exact-box")
@click.option("--w", type=click.IntRange(min=1), required=True)
@click.option("--h", type=click.IntRange(min=1), required=True)
@click.option("--breakdown", is_flag=True, help="Report the corner-class breakdown.")
@click.option("--method", type=click.Choice(["direct", "ie"]), default="direct", show_default=True)
@rule_option
@threads_option
@yes_option
@click.pass_context
def exact_box(ctx, w, h, breakdown, method, rule, threads, yes):
    """Count 4-subsets whose bounding box is exactly [0,w] x [0,h]."""
    box = GridBox(w, h)
    if box.n_points > MAX_POINTS:
        _fail(f"{box.n_points} grid points exceeds the guard of {MAX_POINTS}", EXIT_GUARD)
    tests = math.comb(box.n_points, 4) * (1 if method == "direct" else 9)
    _confirm_cost(tests, yes)

    def body(nthreads):
        results: Dict[str, Any] = {}
        if method == "ie":
            a_total = count_box_ie(box, rule, threads=nthreads)
            if breakdown:
                bc = count_box(box, rule, threads=nthreads)
                if bc.a_total != a_total:
                    raise InvariantViolation(f"inclusion-exclusion {a_total} != direct {bc.a_total}")
        else:
            bc = count_box(box, rule, threads=nthreads)
            a_total = bc.a_total
        results["a_total"] = _exact(a_total)
        if method == "direct" or breakdown:
            results["convex_total"] = _exact(bc.convex_total)
        if breakdown:
            results["a_by_corners"] = [_exact(v) for v in bc.a_by_corners]
            for name in ("c2", "d2", "c2_anti", "d2_anti", "s2"):
                results[name] = _exact(getattr(bc, name))
        results["a_total_over_w2h2"] = a_total / (w * w * h * h)
        return results, {"asymptotic": analytic.asymptotic_box(w, h)}

    click.echo(_run(ctx, body).to_json())


@main.command("exact-grid")
@click.option("--m", type=click.IntRange(min=1), required=True)
@click.option("--method", type=click.Choice(["direct", "per-box"]), default="direct", show_default=True)
@rule_option
@threads_option
@yes_option
@click.pass_context
def exact_grid(ctx, m, method, rule, threads, yes):
    """Count convex and same-colored crossing 4-subsets of the (m+1) x (m+1) grid."""
    if (m + 1) ** 2 > MAX_POINTS:
        _fail(f"{(m + 1) ** 2} grid points exceeds the guard of {MAX_POINTS}", EXIT_GUARD)
    _confirm_cost(estimate_quadruples(m, method), yes)

    def body(nthreads):
        g = count_grid(m, rule, method, threads=nthreads)
        mono = Fraction(g.mono, g.total_quadruples)
        convex = Fraction(g.convex, g.total_quadruples)
        results = {
            "total_quadruples": _exact(g.total_quadruples),
            "convex": _exact(g.convex),
            "mono": _exact(g.mono),
            "mono_ratio": _exact(mono),
            "mono_ratio_decimal": float(mono),
            "convex_ratio": _exact(convex),
            "convex_ratio_decimal": float(convex),
        }
        references = {
            "p_mono": _exact(Fraction(1, 4)),
            "p_convex": _exact(analytic.valtr_probability(4)),
            "mono_asymptotic": analytic.asymptotic_grid(m),
        }
        return results, references

    click.echo(_run(ctx, body).to_json())


@main.command("mc")
@click.option("--samples", type=click.IntRange(min=1), default=1_000_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--stream", type=int, default=0, show_default=True)
@rule_option
@click.option("--n-points", type=click.IntRange(min=4), default=None,
              help="Also estimate crossing counts of complete graphs on this many points.")
@click.option("--trials", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--oracle", is_flag=True, help="Recount every graph trial edge pair by edge pair.")
@threads_option
@click.pass_context
def mc(ctx, samples, seed, stream, rule, n_points, trials, oracle, threads):
    """Estimate convex and same-colored crossing probabilities for four random points."""

    def body(nthreads):
        rng = RngSpec(seed, stream)
        r = estimate_quad_probs(samples, rng, rule, threads=nthreads)
        p_convex = float(analytic.valtr_probability(4))
        results: Dict[str, Any] = {
            "p_convex": {**asdict(r.p_convex), "z": r.p_convex.z(p_convex)},
            "p_mono": {**asdict(r.p_mono), "z": r.p_mono.z(0.25)},
            "degenerate": _exact(r.degenerate),
        }
        references: Dict[str, Any] = {"p_convex": "25/36", "p_mono_chi_slope": "1/4"}
        if n_points is not None:
            g = estimate_graph_crossings(n_points, trials, rng, rule, oracle=oracle, threads=nthreads)
            subsets = math.comb(n_points, 4)
            results["graph"] = asdict(g)
            references["mean_cr"] = p_convex * subsets
            references["mean_cr_chi_slope"] = subsets / 4
        return results, references

    click.echo(_run(ctx, body).to_json())


def _read_rules_file(path: Path) -> List[ColorRule]:
    rules, errors = [], []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            rules.append(parse_rule(text))
        except RuleSyntaxError as exc:
            errors.append(f"{path}:{lineno}: {exc}")
    if errors:
        raise click.UsageError("malformed rules file\n" + "\n".join(errors))
    return rules


def _grid_rules(text: str) -> List[ColorRule]:
    """``lo:hi:steps`` -> blue=[-inf, t] for ``steps`` evenly spaced exact t."""
    try:
        lo_s, hi_s, steps_s = text.split(":")
        lo, hi = parse_endpoint(lo_s), parse_endpoint(hi_s)
        steps = int(steps_s)
    except (ValueError, RuleSyntaxError):
        raise click.BadParameter(f"expected lo:hi:steps with rational endpoints, got {text!r}") from None
    if steps < 1 or not all(isinstance(v, Fraction) for v in (lo, hi)):
        raise click.BadParameter(f"need finite endpoints and steps >= 1, got {text!r}")
    ts = [lo] if steps == 1 else [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]
    return [ColorRule(-math.inf, t, lo_open=False, hi_open=False) for t in ts]


SWEEP_COLUMNS = ["rule", "p_mono", "se", "delta_vs_baseline", "paired_se", "z", "boundary_hits"]


@main.command("sweep")
@click.option("--samples", type=click.IntRange(min=1), default=1_000_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--stream", type=int, default=0, show_default=True)
@click.option("--rules-file", type=click.Path(exists=True, dir_okay=False, path_type=Path), default=None,
              help="One rule per line; the first is the baseline.")
@click.option("--grid", "grid_spec", default=None, help="lo:hi:steps sweep of upper endpoints t in blue=[-inf,t].")
@click.option("--rule", "extra_rules", type=RULE, multiple=True, help="Rule to compare (repeatable).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@threads_option
@click.pass_context
def sweep(ctx, samples, seed, stream, rules_file, grid_spec, extra_rules, fmt, out, threads):
    """Compare colorings on common random quadruples against the first (baseline) rule."""
    if rules_file is not None:
        rules = _read_rules_file(rules_file)
    else:
        rules = [CHI_SLOPE]
        if grid_spec is not None:
            rules += _grid_rules(grid_spec)
    rules += list(extra_rules)
    if not rules:
        raise click.UsageError("no rules given")

    def body(nthreads):
        rows = sweep_intervals(rules, samples, RngSpec(seed, stream), threads=nthreads)
        table = [
            {
                "rule": str(r.rule),
                "p_mono": r.p_mono_hat,
                "se": r.se,
                "delta_vs_baseline": r.paired_delta_vs_baseline,
                "paired_se": r.paired_se,
                "z": r.z,
                "boundary_hits": r.boundary_hits,
            }
            for r in rows
        ]
        return {"rows": table}, {"p_mono_chi_slope": "1/4"}

    report = _run(ctx, body)
    if fmt == "json":
        text = report.to_json() + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(report.results["rows"])
        text = buf.getvalue()
    if out is not None:
        out.write_text(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main(prog_name="quadchroma")
