"""Orthonormal-basis utilities: complements, projections, distances, varimax."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidComparisonError, InvalidInputError

#: Relative singular-value cutoff for numerical rank decisions.
RANK_TOL = 1e-10

#: Orthonormality slack accepted by Basis validation.
ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class Basis:
    """A linear subspace of R^d held as a d x k matrix with orthonormal columns.

    k = 0 encodes the trivial subspace {0}.
    """

    columns: np.ndarray

    def __post_init__(self):
        cols = np.asarray(self.columns, dtype=np.float64)
        if cols.ndim != 2:
            raise InvalidInputError(f"basis columns must be 2-d, got ndim={cols.ndim}")
        if not np.all(np.isfinite(cols)):
            raise InvalidInputError("basis columns contain non-finite entries")
        if cols.shape[1] > cols.shape[0]:
            raise InvalidInputError(
                f"rank {cols.shape[1]} exceeds ambient dimension {cols.shape[0]}"
            )
        if cols.shape[1] > 0:
            gram = cols.T @ cols
            if np.max(np.abs(gram - np.eye(cols.shape[1]))) > 1e3 * ORTHO_TOL:
                raise InvalidInputError("basis columns are not orthonormal")
        object.__setattr__(self, "columns", np.ascontiguousarray(cols))

    @property
    def ambient_dim(self):
        return self.columns.shape[0]

    @property
    def rank(self):
        return self.columns.shape[1]


def identity_basis(d):
    """The full space R^d."""
    return Basis(np.eye(d))


def orthonormalize(vectors, dim=None):
    """Orthonormal basis of the span of the given d-vectors.

    Rank is the numerical rank at a relative cutoff of RANK_TOL. An empty
    collection needs ``dim`` to fix the ambient dimension and yields the
    trivial basis.
    """
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.size == 0:
        if dim is None:
            raise InvalidInputError("empty vector list requires an explicit dim")
        return Basis(np.zeros((dim, 0)))
    if arr.ndim == 1:
        arr = arr[None, :]
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("vectors contain non-finite entries")
    a = arr.T  # d x m, vectors as columns
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return Basis(np.zeros((a.shape[0], 0)))
    rank = int(np.sum(s > RANK_TOL * s[0]))
    return Basis(u[:, :rank])


def complement(basis):
    """Orthonormal basis of the orthogonal complement; ranks sum to d."""
    d, k = basis.columns.shape
    if k == 0:
        return Basis(np.eye(d))
    if k == d:
        return Basis(np.zeros((d, 0)))
    return Basis(scipy.linalg.null_space(basis.columns.T))


def project_samples(x, basis):
    """Coordinates of the rows of ``x`` in the basis: X @ U, an N x k matrix."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != basis.ambient_dim:
        raise InvalidInputError(
            f"samples with {x.shape[1] if x.ndim == 2 else '?'} columns do not "
            f"match ambient dimension {basis.ambient_dim}"
        )
    return np.ascontiguousarray(x @ basis.columns)


def subspace_distance(b1, b2):
    """Spectral-norm distance ||P1 - P2||_2 between equal-rank subspaces.

    Computed from completed orthonormal bases as ||B1^T C2||_2 with C2 a basis
    of the complement of B2 (equivalently ||B2^T C1||_2); this equals the
    sine of the largest principal angle.
    """
    if b1.ambient_dim != b2.ambient_dim:
        raise InvalidComparisonError(
            f"ambient dimensions differ: {b1.ambient_dim} vs {b2.ambient_dim}"
        )
    if b1.rank != b2.rank:
        raise InvalidComparisonError(f"ranks differ: {b1.rank} vs {b2.rank}")
    k, d = b1.rank, b1.ambient_dim
    if k == 0 or k == d:
        return 0.0
    cross = b1.columns.T @ complement(b2).columns
    return float(np.linalg.svd(cross, compute_uv=False)[0])


def varimax_criterion(columns):
    """Kaiser's simplicity score: sum over columns of the variance of squared
    loadings."""
    b2 = np.asarray(columns) ** 2
    return float(np.sum(b2.var(axis=0)))


def _fix_column_signs(b):
    out = b.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        if abs(col.min()) > abs(col.max()):
            out[:, j] = -col
    return out


def varimax(basis, max_iters=100, tol=1e-8):
    """Rotate a basis to maximize the varimax simplicity criterion.

    Returns basis @ R for an orthogonal R, so the span is unchanged. Column
    signs are fixed so each column's largest-magnitude loading is positive.
    Rank-1 bases rotate trivially.
    """
    if basis.rank < 1:
        raise InvalidInputError("varimax requires rank >= 1")
    a = basis.columns
    d, k = a.shape
    if k == 1:
        return Basis(_fix_column_signs(a))
    b = a.copy()
    score_prev = 0.0
    for _ in range(max_iters):
        col_sq = (b**2).sum(axis=0)
        left, sing, right_t = np.linalg.svd(a.T @ (d * b**3 - b * col_sq[None, :]))
        rot = left @ right_t
        b = a @ rot
        score = sing.sum()
        if abs(score - score_prev) < tol * max(score, 1.0):
            break
        score_prev = score
    return Basis(_fix_column_signs(b))
