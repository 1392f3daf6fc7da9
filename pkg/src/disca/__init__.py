"""Distance-covariance independence screening for canonical analysis.

Finds the minimal linear subspaces of two paired random vectors that carry
all of their mutual dependence, by backward elimination: repeatedly remove
the direction whose projection is least dependent on the other vector (a
sphere-constrained distance-covariance minimization solved as a difference
of convex functions with an ADMM inner solver) until the independence test
rejects.
"""

from . import errors
from ._kernels import HAVE_COMPILED
from .dcov import (
    DistanceStats,
    empirical_dcov,
    normal_quantile,
    pairwise_distances,
    reject_independence,
    rejection_threshold,
    test_statistic,
)
from .engine import (
    DiscaOutput,
    EliminationRecord,
    EliminationTrace,
    disca,
    estimate_subspace,
)
from .dataio import load_csv
from .montecarlo import MonteCarloSummary, NSummary, RunRecord, monte_carlo
from .reduction import (
    SignedDiffProblem,
    build_problem,
    build_signed_diffs,
    g_coefficients,
    objective,
)
from .report import emit_report
from .scenarios import SCENARIO_NAMES, ScenarioSpec, generate
from .solver import (
    DirectionResult,
    SolverConfig,
    admm_subproblem,
    dca_solve,
    soft_threshold,
    solve_min_direction,
    stationarity_residual,
    subgradient_h,
)
from .subspace import (
    Basis,
    complement,
    orthonormalize,
    project_samples,
    subspace_distance,
    varimax,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "DirectionResult",
    "DiscaOutput",
    "DistanceStats",
    "EliminationRecord",
    "EliminationTrace",
    "HAVE_COMPILED",
    "MonteCarloSummary",
    "NSummary",
    "RunRecord",
    "SCENARIO_NAMES",
    "ScenarioSpec",
    "SignedDiffProblem",
    "SolverConfig",
    "admm_subproblem",
    "build_problem",
    "build_signed_diffs",
    "complement",
    "dca_solve",
    "disca",
    "emit_report",
    "empirical_dcov",
    "errors",
    "estimate_subspace",
    "g_coefficients",
    "generate",
    "load_csv",
    "monte_carlo",
    "normal_quantile",
    "objective",
    "orthonormalize",
    "pairwise_distances",
    "project_samples",
    "reject_independence",
    "rejection_threshold",
    "soft_threshold",
    "solve_min_direction",
    "stationarity_residual",
    "subgradient_h",
    "subspace_distance",
    "test_statistic",
    "varimax",
]
