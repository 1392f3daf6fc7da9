"""Replicated runs of the elimination procedure against generator ground truth."""

import concurrent.futures
from dataclasses import dataclass, replace

import numpy as np

from .engine import disca
from .errors import DiscaError, InvalidParameterError
from .scenarios import ScenarioSpec, generate
from .solver import SolverConfig
from .subspace import subspace_distance


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one replicate.

    Distances are recorded only when the recovered rank matches the truth
    (the subspace distance is defined for equal-dimensional subspaces);
    otherwise NaN. ``error`` is the failure message for runs that raised.
    """

    n: int
    run_index: int
    seed: int
    rank_x: int
    rank_y: int
    dist_x: float
    dist_y: float
    error: str | None = None


@dataclass(frozen=True)
class NSummary:
    """Aggregates for one sample size.

    Histogram counts cover completed runs, so sum(hist) + failures == runs.
    Quantile tuples are (min, q1, median, q3, max) over the equal-rank runs,
    or None when no run qualified.
    """

    n: int
    hist_x: dict
    hist_y: dict
    dist_x_quantiles: tuple | None
    dist_y_quantiles: tuple | None
    failures: int
    records: list


@dataclass(frozen=True)
class MonteCarloSummary:
    scenario: str
    runs: int
    ns: tuple
    config: SolverConfig
    master_seed: int
    per_n: list


def run_seed(master_seed, n, run_index):
    """Per-replicate seed: a stable hash of (master seed, N, run index)."""
    return int(np.random.SeedSequence([master_seed, n, run_index]).generate_state(1)[0])


def _run_one(args):
    spec, cfg, n, run_index = args
    seed = run_seed(spec.seed, n, run_index)
    run_spec = replace(spec, n=n, seed=seed)
    x, y, truth_x, truth_y = generate(run_spec)
    run_cfg = replace(cfg, seed=seed)
    try:
        out = disca(x, y, run_cfg)
    except DiscaError as exc:
        return RunRecord(n=n, run_index=run_index, seed=seed, rank_x=-1,
                         rank_y=-1, dist_x=np.nan, dist_y=np.nan,
                         error=str(exc))
    dist_x = dist_y = np.nan
    if truth_x is not None and out.basis_x.rank == truth_x.rank:
        dist_x = subspace_distance(out.basis_x, truth_x)
    if truth_y is not None and out.basis_y.rank == truth_y.rank:
        dist_y = subspace_distance(out.basis_y, truth_y)
    return RunRecord(n=n, run_index=run_index, seed=seed,
                     rank_x=out.basis_x.rank, rank_y=out.basis_y.rank,
                     dist_x=dist_x, dist_y=dist_y)


def _quantiles(values):
    vals = [v for v in values if np.isfinite(v)]
    if not vals:
        return None
    q = np.quantile(np.asarray(vals), [0.0, 0.25, 0.5, 0.75, 1.0])
    return tuple(float(v) for v in q)


def _summarize(n, records):
    hist_x = {}
    hist_y = {}
    failures = 0
    for rec in records:
        if rec.error is not None:
            failures += 1
            continue
        hist_x[rec.rank_x] = hist_x.get(rec.rank_x, 0) + 1
        hist_y[rec.rank_y] = hist_y.get(rec.rank_y, 0) + 1
    return NSummary(
        n=n,
        hist_x=dict(sorted(hist_x.items())),
        hist_y=dict(sorted(hist_y.items())),
        dist_x_quantiles=_quantiles([r.dist_x for r in records]),
        dist_y_quantiles=_quantiles([r.dist_y for r in records]),
        failures=failures,
        records=records,
    )


def monte_carlo(spec, runs, ns, cfg=None, workers=1):
    """Replicate the full procedure ``runs`` times per sample size.

    Each replicate draws its own seed from (spec.seed, N, run index), so the
    summary is independent of scheduling; ``workers > 1`` fans replicates out
    to a process pool. Individual run failures are recorded, not fatal.
    """
    if runs < 1:
        raise InvalidParameterError(f"runs must be >= 1, got {runs}")
    if not ns:
        raise InvalidParameterError("ns must be a nonempty list of sample sizes")
    if cfg is None:
        cfg = SolverConfig()
    if isinstance(spec, str):
        spec = ScenarioSpec(name=spec)
    jobs = [(spec, cfg, n, r) for n in ns for r in range(runs)]
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=4))
    else:
        results = [_run_one(job) for job in jobs]
    per_n = []
    for i, n in enumerate(ns):
        per_n.append(_summarize(n, results[i * runs:(i + 1) * runs]))
    return MonteCarloSummary(
        scenario=spec.name, runs=runs, ns=tuple(ns), config=cfg,
        master_seed=spec.seed, per_n=per_n,
    )
