"""The l1-difference reformulation of projected distance covariance.

For a fixed sample pair (X, Y), V2(Xu, Y) as a function of the direction u
equals (2/N^2) (||M+ u||_1 - ||M- u||_1), where M+ stacks the rows
g_ij (X_i - X_j)^T over pairs i < j with positive doubly-centered Y-distance
coefficient g_ij, and M- the rows with negative coefficient (weighted by
-g_ij). Minimizing V2(Xu, Y) over the unit sphere is therefore the
difference-of-l1-norms problem handled by ``disca.solver``.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dcov import as_samples
from .errors import DimensionMismatchError

__all__ = [
    "SignedDiffProblem",
    "g_coefficients",
    "build_signed_diffs",
    "build_problem",
    "objective",
]


@dataclass(frozen=True)
class SignedDiffProblem:
    """Sign-split stacked difference matrices of one sample pair.

    ``m_plus`` is n+ x p, ``m_minus`` n- x p; zero-coefficient pairs appear in
    neither, so n+ + n- <= N(N-1)/2.
    """

    m_plus: np.ndarray
    m_minus: np.ndarray
    p: int

    @property
    def n_plus(self):
        return self.m_plus.shape[0]

    @property
    def n_minus(self):
        return self.m_minus.shape[0]


def g_coefficients(y):
    """Doubly-centered pairwise-distance coefficients of a sample.

    g_ij = |Y_i - Y_j| - rowmean_i - rowmean_j + grandmean of the Euclidean
    distance matrix. Symmetric; total sum zero up to rounding.
    """
    ay = as_samples(y, "y", min_cols=0)
    return _kernels.g_matrix(_kernels.pairwise_distances(ay))


def build_signed_diffs(x, g):
    """Assemble the sign-split difference matrices for samples ``x`` and
    coefficients ``g``.

    Pairs are enumerated over the upper triangle j > i; the sign test on g_ij
    is exact (ties at 0 are dropped from both matrices). Rows with X_i = X_j
    are kept; they contribute nothing to any l1 norm.
    """
    ax = as_samples(x, "x", min_cols=0)
    g = np.ascontiguousarray(np.asarray(g, dtype=np.float64))
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DimensionMismatchError(f"g must be square, got shape {g.shape}")
    if ax.shape[0] != g.shape[0]:
        raise DimensionMismatchError(
            f"x has {ax.shape[0]} rows but g is {g.shape[0]}x{g.shape[1]}"
        )
    m_plus, m_minus = _kernels.signed_diff_rows(ax, g)
    return SignedDiffProblem(m_plus=m_plus, m_minus=m_minus, p=ax.shape[1])


def build_problem(x, y):
    """Convenience constructor: coefficients from ``y``, differences from ``x``."""
    return build_signed_diffs(x, g_coefficients(y))


def objective(problem, u):
    """``||M+ u||_1 - ||M- u||_1``; an empty matrix contributes 0.

    Even and positively homogeneous in ``u``; equals (N^2/2) V2(Xu, Y) for the
    generating samples.
    """
    u = np.ascontiguousarray(np.asarray(u, dtype=np.float64).ravel())
    if u.shape[0] != problem.p:
        raise DimensionMismatchError(
            f"u has length {u.shape[0]}, problem dimension is {problem.p}"
        )
    plus, minus = _kernels.l1_terms(problem.m_plus, problem.m_minus, u)
    return plus - minus
