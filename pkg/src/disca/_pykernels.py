"""NumPy implementations of the numerical kernels.

The compiled extension ``disca._ckernels`` provides the same functions with
identical semantics; ``disca._kernels`` picks one of the two at import time.
Keep both in lockstep -- ``tests/test_kernels.py`` asserts agreement on random
inputs.

All functions expect C-contiguous float64 arrays and perform no validation;
callers (``disca.dcov``, ``disca.reduction``, ``disca.solver``) validate.
"""

import numpy as np
from scipy.spatial.distance import pdist, squareform

IMPL_NAME = "python"


def pairwise_distances(a):
    """Euclidean distance matrix between the rows of ``a``: (N, d) -> (N, N).

    Symmetric with an exactly-zero diagonal. A zero-column input yields the
    all-zero matrix (a width-0 sample is a constant).
    """
    n = a.shape[0]
    if a.shape[1] == 0 or n == 0:
        return np.zeros((n, n))
    return squareform(pdist(a))


def dcov_stats(dx, dy):
    """The three distance-sum statistics of a precomputed distance-matrix pair.

    Returns ``(s1, s2, s3)`` with

        s1 = (1/N^2) sum_ij dx_ij * dy_ij
        s2 = ((1/N^2) sum_ij dx_ij) * ((1/N^2) sum_ij dy_ij)
        s3 = (1/N^3) sum_i (sum_j dx_ij) * (sum_m dy_im)
    """
    n = dx.shape[0]
    s1 = float(np.einsum("ij,ij->", dx, dy)) / (n * n)
    s2 = (float(dx.sum()) / (n * n)) * (float(dy.sum()) / (n * n))
    s3 = float(dx.sum(axis=1) @ dy.sum(axis=1)) / (n * n * n)
    return s1, s2, s3


def g_matrix(dy):
    """Doubly-centered distance coefficients of a distance matrix.

    g_ij = dy_ij - rowmean_i - rowmean_j + grandmean. Symmetric, and the
    total sum is zero up to rounding.
    """
    rm = dy.mean(axis=1, keepdims=True)
    return dy - rm - rm.T + dy.mean()


def signed_diff_rows(x, g):
    """Stack the sign-split weighted row differences of ``x``.

    For every pair i < j with g_ij > 0, m_plus gains the row
    g_ij * (x_i - x_j); pairs with g_ij < 0 go to m_minus with weight -g_ij.
    Pairs with g_ij exactly 0 are omitted from both. Row order is the
    row-major upper triangle (i ascending, j ascending within i).
    """
    n, p = x.shape
    iu, ju = np.triu_indices(n, k=1)
    w = g[iu, ju]
    pos = w > 0.0
    neg = w < 0.0
    diffs = x[iu] - x[ju]
    m_plus = np.ascontiguousarray(w[pos, None] * diffs[pos])
    m_minus = np.ascontiguousarray((-w[neg, None]) * diffs[neg])
    return m_plus.reshape(-1, p), m_minus.reshape(-1, p)


def l1_terms(m_plus, m_minus, u):
    """``(||m_plus @ u||_1, ||m_minus @ u||_1)``; empty matrices give 0."""
    plus = float(np.abs(m_plus @ u).sum()) if m_plus.shape[0] else 0.0
    minus = float(np.abs(m_minus @ u).sum()) if m_minus.shape[0] else 0.0
    return plus, minus


def sign_pullback(m, u):
    """``m.T @ sign(m @ u)`` with sign(0) = 0; the l1-norm subgradient pullback."""
    p = m.shape[1] if m.ndim == 2 else u.shape[0]
    if m.shape[0] == 0:
        return np.zeros(p)
    return m.T @ np.sign(m @ u)


def admm_solve(m, a_inv, rho, y, z, v, eps_abs, eps_rel, max_iters):
    """Splitting iteration for min_u  c/2 u'u + ||m u||_1 - y'u.

    ``a_inv`` is the inverse of (c I + rho m'm) for the quadratic coefficient
    c baked in by the caller. ``z`` and ``v`` are the split variable and the
    scaled-dual state; both are updated in place so callers can warm-start the
    next solve. Residual-based stopping:

        ||r||_2 <= sqrt(n) eps_abs + eps_rel max(||m u||_2, ||z||_2)
        ||s||_2 <= sqrt(p) eps_abs + eps_rel ||m' v||_2

    with r = m u - z and s = rho m'(z - z_prev).

    Returns (u, iters, converged, r_norm, s_norm, eps_pri, eps_dual).
    """
    n, p = m.shape
    sqrt_n = np.sqrt(n)
    sqrt_p = np.sqrt(p)
    inv_rho = 1.0 / rho
    u = np.zeros(p)
    r_norm = s_norm = np.inf
    eps_pri = eps_dual = 0.0
    converged = False
    iters = 0
    for it in range(max_iters):
        u = a_inv @ (y + m.T @ (rho * z - v))
        mu = m @ u
        w = inv_rho * v + mu
        z_new = np.sign(w) * np.maximum(np.abs(w) - inv_rho, 0.0)
        dz = z_new - z
        z[:] = z_new
        r = mu - z
        v += rho * r
        r_norm = float(np.linalg.norm(r))
        s_norm = rho * float(np.linalg.norm(m.T @ dz))
        eps_pri = sqrt_n * eps_abs + eps_rel * max(
            float(np.linalg.norm(mu)), float(np.linalg.norm(z))
        )
        eps_dual = sqrt_p * eps_abs + eps_rel * float(np.linalg.norm(m.T @ v))
        iters = it + 1
        if r_norm <= eps_pri and s_norm <= eps_dual:
            converged = True
            break
    return u, iters, converged, r_norm, s_norm, eps_pri, eps_dual
