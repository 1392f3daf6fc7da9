"""Command-line front end.

Subcommands: ``threshold`` (critical value of the independence test),
``dcov`` (distance covariance and test decision for one sample pair),
``fit`` (run the full elimination on CSV or generated data), ``simulate``
(replicated runs against ground truth). Exit codes: 0 success, 1 input
error, 2 solver failure.
"""

import functools
import json
import sys
from dataclasses import replace

import click

from .dcov import empirical_dcov, rejection_threshold, statistic_from_stats
from .engine import disca
from .errors import (
    DegenerateSampleError,
    DiscaError,
    NumericalFailureError,
    SolverFailureError,
)
from .montecarlo import monte_carlo
from .report import emit_report
from .scenarios import SCENARIO_NAMES, ScenarioSpec, generate
from .solver import SolverConfig
from .subspace import varimax


def _exit_on_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (SolverFailureError, NumericalFailureError) as exc:
            click.echo(f"solver failure: {exc}", err=True)
            sys.exit(2)
        except DiscaError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _comma_names(_ctx, _param, value):
    if value is None:
        return ()
    return tuple(name.strip() for name in value.split(",") if name.strip())


def _input_options(fn):
    fn = click.option("--csv", "csv_path", type=click.Path(), default=None,
                      help="CSV file with a header row.")(fn)
    fn = click.option("--x-cols", callback=_comma_names, default=None,
                      help="Comma-separated X column names (csv input).")(fn)
    fn = click.option("--y-cols", callback=_comma_names, default=None,
                      help="Comma-separated Y column names (csv input).")(fn)
    fn = click.option("--weekly", is_flag=True,
                      help="Average consecutive 7-row blocks (csv input).")(fn)
    fn = click.option("--scenario", type=click.Choice([n for n in SCENARIO_NAMES
                                                       if n != "csv"]),
                      default=None, help="Generate data instead of reading CSV.")(fn)
    fn = click.option("--n", "n_samples", type=int, default=200,
                      help="Sample count for generated data.")(fn)
    fn = click.option("--noise-scale", type=float, default=0.01,
                      help="Noise coefficient of the generators.")(fn)
    return fn


def _load_pair(csv_path, x_cols, y_cols, weekly, scenario, n_samples,
               noise_scale, seed):
    if (csv_path is None) == (scenario is None):
        raise click.UsageError("provide exactly one of --csv or --scenario")
    if csv_path is not None:
        spec = ScenarioSpec(name="csv", seed=seed, csv_path=csv_path,
                            x_cols=x_cols, y_cols=y_cols, weekly=weekly)
        label = "csv"
    else:
        spec = ScenarioSpec(name=scenario, n=n_samples, seed=seed,
                            noise_scale=noise_scale)
        label = scenario
    x, y, _, _ = generate(spec)
    return x, y, label


@click.group()
def main():
    """Minimal dependent linear subspaces via distance-covariance screening."""


@main.command()
@click.option("--alpha", type=float, default=0.05, show_default=True,
              help="Significance level, in (0, 0.215].")
@_exit_on_errors
def threshold(alpha):
    """Print the test's critical value (Phi^-1(1 - alpha/2))^2."""
    click.echo(f"{rejection_threshold(alpha):.6f}")


@main.command()
@_input_options
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
@_exit_on_errors
def dcov(csv_path, x_cols, y_cols, weekly, scenario, n_samples, noise_scale,
         alpha, seed, fmt):
    """Print V2, the normalized statistic, and the test decision."""
    x, y, _ = _load_pair(csv_path, x_cols, y_cols, weekly, scenario,
                         n_samples, noise_scale, seed)
    stats = empirical_dcov(x, y)
    thr = rejection_threshold(alpha)
    try:
        statistic = statistic_from_stats(stats)
        degenerate = False
    except DegenerateSampleError:
        statistic = 0.0
        degenerate = True
    reject = statistic > thr
    if fmt == "json":
        click.echo(json.dumps({
            "n": stats.n, "s1": stats.s1, "s2": stats.s2, "s3": stats.s3,
            "v2n": stats.v2n, "statistic": statistic, "threshold": thr,
            "alpha": alpha, "reject_independence": reject,
            "degenerate": degenerate,
        }, indent=2, sort_keys=True))
    else:
        click.echo(f"n          = {stats.n}")
        click.echo(f"v2n        = {stats.v2n!r}")
        click.echo(f"statistic  = {statistic!r}" +
                   ("  (degenerate sample, independent by convention)"
                    if degenerate else ""))
        click.echo(f"threshold  = {thr!r}  (alpha = {alpha})")
        click.echo("decision   = " +
                   ("reject independence" if reject else "independence not rejected"))


def _solver_config(alpha, seed, restarts):
    cfg = SolverConfig(alpha=alpha, seed=seed)
    if restarts is not None:
        cfg = replace(cfg, n_restarts=restarts)
    return cfg


@main.command()
@_input_options
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--restarts", type=int, default=None,
              help="Solver multistart count (default from SolverConfig).")
@click.option("--varimax", "rotate", is_flag=True,
              help="Varimax-rotate the recovered bases in the report.")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
              default="text", show_default=True)
@_exit_on_errors
def fit(csv_path, x_cols, y_cols, weekly, scenario, n_samples, noise_scale,
        alpha, seed, restarts, rotate, fmt):
    """Run the full backward elimination and report both bases."""
    x, y, label = _load_pair(csv_path, x_cols, y_cols, weekly, scenario,
                             n_samples, noise_scale, seed)
    out = disca(x, y, _solver_config(alpha, seed, restarts))
    out = replace(out, scenario=label)
    if rotate:
        out = replace(
            out,
            basis_x=varimax(out.basis_x) if out.basis_x.rank else out.basis_x,
            basis_y=varimax(out.basis_y) if out.basis_y.rank else out.basis_y,
        )
    x_names = x_cols if csv_path is not None else None
    y_names = y_cols if csv_path is not None else None
    click.echo(emit_report(out, fmt, x_names=x_names, y_names=y_names), nl=False)


@main.command()
@click.option("--scenario", type=click.Choice([n for n in SCENARIO_NAMES
                                               if n != "csv"]),
              required=True)
@click.option("--runs", type=int, default=500, show_default=True)
@click.option("--ns", default="50,100,150,200", show_default=True,
              help="Comma-separated sample sizes.")
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--restarts", type=int, default=None)
@click.option("--noise-scale", type=float, default=0.01, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True,
              help="Process-pool size for replicates.")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
              default="text", show_default=True)
@_exit_on_errors
def simulate(scenario, runs, ns, alpha, seed, restarts, noise_scale, workers,
             fmt):
    """Monte-Carlo replication against the scenario's ground truth."""
    try:
        sizes = [int(tok) for tok in ns.split(",") if tok.strip()]
    except ValueError:
        raise click.UsageError(f"could not parse --ns {ns!r}")
    spec = ScenarioSpec(name=scenario, seed=seed, noise_scale=noise_scale)
    summary = monte_carlo(spec, runs, sizes,
                          _solver_config(alpha, seed, restarts),
                          workers=workers)
    click.echo(emit_report(summary, fmt), nl=False)


if __name__ == "__main__":
    main()
