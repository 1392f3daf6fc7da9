"""Backward elimination of independent directions for both vectors.

One side at a time: repeatedly project the working vector onto the complement
of the directions eliminated so far, find the unit direction whose projection
is least dependent on the companion vector (distance-covariance minimization),
and test that projection for independence. A failed rejection eliminates the
direction; a rejection stops the loop, and the answer is the orthonormal
complement of everything eliminated. The second side runs the same loop with
the roles swapped and the first side's samples already reduced.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dcov import as_samples, rejection_threshold
from .errors import DimensionMismatchError, SolverFailureError
from .reduction import SignedDiffProblem
from .solver import SolverConfig, solve_min_direction
from .subspace import Basis, complement, identity_basis


@dataclass(frozen=True)
class EliminationRecord:
    """One iteration of the elimination loop.

    ``direction`` is the chosen unit vector mapped back to the original
    coordinates. ``decision`` is "eliminate" or "stop".
    """

    working_dim: int
    direction: np.ndarray
    v2n: float
    statistic: float
    threshold: float
    decision: str


@dataclass(frozen=True)
class EliminationTrace:
    """All records of one side's elimination plus the resulting basis."""

    records: list
    basis: Basis


@dataclass(frozen=True)
class DiscaOutput:
    """Estimated bases for both sides with their elimination traces."""

    basis_x: Basis
    basis_y: Basis
    trace_x: EliminationTrace
    trace_y: EliminationTrace
    config: SolverConfig
    seed: int
    scenario: str | None = None


def _solve_seed(seed, side, step):
    """Deterministic per-solve seed stream."""
    return int(np.random.SeedSequence([seed, side, step]).generate_state(1)[0])


def estimate_subspace(x, y, cfg, _side=1):
    """Eliminate directions of ``x`` independent of ``y``; return the trace.

    The loop runs at most p times. Per iteration: project x onto the current
    working basis, minimize the projected distance covariance against y, test
    the minimizing projection. A degenerate (constant) projection or companion
    counts as independent. The final basis is the complement, in original
    coordinates, of the span of all eliminated directions: the full space if
    the very first test rejects, the trivial space if nothing ever rejects.
    """
    x = as_samples(x, "x")
    y = as_samples(y, "y", min_cols=0)
    if x.shape[0] != y.shape[0]:
        raise DimensionMismatchError(
            f"x has {x.shape[0]} rows but y has {y.shape[0]}"
        )
    p = x.shape[1]
    dy = _kernels.pairwise_distances(y)
    g = _kernels.g_matrix(dy)
    thr = rejection_threshold(cfg.alpha)
    working = identity_basis(p)
    records = []
    for step in range(p):
        u_cols = working.columns
        xw = np.ascontiguousarray(x @ u_cols)
        m_plus, m_minus = _kernels.signed_diff_rows(xw, g)
        problem = SignedDiffProblem(m_plus=m_plus, m_minus=m_minus,
                                    p=working.rank)
        try:
            result = solve_min_direction(
                problem, cfg, seed=_solve_seed(cfg.seed, _side, step),
                samples=(xw, y),
            )
        except SolverFailureError as exc:
            exc.details.append({
                "side": _side, "step": step,
                "partial_trace": EliminationTrace(records, working),
            })
            raise
        direction = u_cols @ result.u
        record = EliminationRecord(
            working_dim=working.rank,
            direction=direction,
            v2n=result.v2n,
            statistic=result.statistic,
            threshold=thr,
            decision="stop" if result.statistic > thr else "eliminate",
        )
        records.append(record)
        if record.decision == "stop":
            break
        # Shrink the working space by the eliminated direction, staying in
        # the previous working coordinates for numerical stability.
        inner = complement(Basis(result.u[:, None]))
        working = Basis(u_cols @ inner.columns)
    return EliminationTrace(records=records, basis=working)


def disca(x, y, cfg=None):
    """Estimate both minimal dependent subspaces.

    Runs the elimination for x against y, then for y against x projected onto
    the estimated x-subspace (reduced coordinates; distances are rotation
    invariant). Fully deterministic given inputs and ``cfg.seed``.
    """
    if cfg is None:
        cfg = SolverConfig()
    x = as_samples(x, "x")
    y = as_samples(y, "y")
    if x.shape[0] != y.shape[0]:
        raise DimensionMismatchError(
            f"x has {x.shape[0]} rows but y has {y.shape[0]}"
        )
    trace_x = estimate_subspace(x, y, cfg, _side=1)
    x_reduced = np.ascontiguousarray(x @ trace_x.basis.columns)
    trace_y = estimate_subspace(y, x_reduced, cfg, _side=2)
    return DiscaOutput(
        basis_x=trace_x.basis,
        basis_y=trace_y.basis,
        trace_x=trace_x,
        trace_y=trace_y,
        config=cfg,
        seed=cfg.seed,
    )
