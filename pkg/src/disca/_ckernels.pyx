# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled implementations of the numerical kernels.

Semantics mirror ``disca._pykernels`` exactly (same update order, same
stopping rules); only summation order may differ at rounding level.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

IMPL_NAME = "compiled"


def pairwise_distances(double[:, ::1] a):
    """Euclidean distance matrix between the rows of ``a``: (N, d) -> (N, N)."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    out_arr = np.zeros((n, n))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    if d == 0:
        return out_arr
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for k in range(d):
                diff = a[i, k] - a[j, k]
                acc += diff * diff
            acc = sqrt(acc)
            out[i, j] = acc
            out[j, i] = acc
    return out_arr


def dcov_stats(double[:, ::1] dx, double[:, ::1] dy):
    """(s1, s2, s3) distance-sum statistics; see the NumPy twin for formulas."""
    cdef Py_ssize_t n = dx.shape[0]
    cdef Py_ssize_t i, j
    cdef double s1 = 0.0, sx = 0.0, sy = 0.0, s3 = 0.0
    cdef double rx, ry
    for i in range(n):
        rx = 0.0
        ry = 0.0
        for j in range(n):
            s1 += dx[i, j] * dy[i, j]
            rx += dx[i, j]
            ry += dy[i, j]
        sx += rx
        sy += ry
        s3 += rx * ry
    cdef double n2 = <double> n * <double> n
    return s1 / n2, (sx / n2) * (sy / n2), s3 / (n2 * <double> n)


def g_matrix(double[:, ::1] dy):
    """Doubly-centered distance coefficients of a distance matrix."""
    cdef Py_ssize_t n = dy.shape[0]
    cdef Py_ssize_t i, j
    rm_arr = np.zeros(n)
    cdef double[::1] rm = rm_arr
    cdef double total = 0.0, acc
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += dy[i, j]
        rm[i] = acc / <double> n
        total += acc
    cdef double gm = total / (<double> n * <double> n)
    out_arr = np.empty((n, n))
    cdef double[:, ::1] out = out_arr
    for i in range(n):
        for j in range(n):
            out[i, j] = dy[i, j] - rm[i] - rm[j] + gm
    return out_arr


def signed_diff_rows(double[:, ::1] x, double[:, ::1] g):
    """Sign-split weighted row differences; see the NumPy twin for the layout."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t p = x.shape[1]
    cdef Py_ssize_t i, j, k
    cdef Py_ssize_t n_plus = 0, n_minus = 0
    cdef double w
    for i in range(n):
        for j in range(i + 1, n):
            w = g[i, j]
            if w > 0.0:
                n_plus += 1
            elif w < 0.0:
                n_minus += 1
    mp_arr = np.empty((n_plus, p))
    mm_arr = np.empty((n_minus, p))
    cdef double[:, ::1] mp = mp_arr
    cdef double[:, ::1] mm = mm_arr
    cdef Py_ssize_t ip = 0, im = 0
    for i in range(n):
        for j in range(i + 1, n):
            w = g[i, j]
            if w > 0.0:
                for k in range(p):
                    mp[ip, k] = w * (x[i, k] - x[j, k])
                ip += 1
            elif w < 0.0:
                for k in range(p):
                    mm[im, k] = (-w) * (x[i, k] - x[j, k])
                im += 1
    return mp_arr, mm_arr


def l1_terms(double[:, ::1] m_plus, double[:, ::1] m_minus, double[::1] u):
    """``(||m_plus @ u||_1, ||m_minus @ u||_1)``."""
    cdef Py_ssize_t p = u.shape[0]
    cdef Py_ssize_t i, k
    cdef double plus = 0.0, minus = 0.0, acc
    for i in range(m_plus.shape[0]):
        acc = 0.0
        for k in range(p):
            acc += m_plus[i, k] * u[k]
        plus += fabs(acc)
    for i in range(m_minus.shape[0]):
        acc = 0.0
        for k in range(p):
            acc += m_minus[i, k] * u[k]
        minus += fabs(acc)
    return plus, minus


def sign_pullback(double[:, ::1] m, double[::1] u):
    """``m.T @ sign(m @ u)`` with sign(0) = 0."""
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t p = m.shape[1]
    out_arr = np.zeros(p)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double acc, s
    for i in range(n):
        acc = 0.0
        for k in range(p):
            acc += m[i, k] * u[k]
        if acc > 0.0:
            s = 1.0
        elif acc < 0.0:
            s = -1.0
        else:
            continue
        for k in range(p):
            out[k] += m[i, k] * s
    return out_arr


def admm_solve(double[:, ::1] m, double[:, ::1] a_inv, double rho,
               double[::1] y, double[::1] z, double[::1] v,
               double eps_abs, double eps_rel, int max_iters):
    """Splitting iteration; same contract as the NumPy twin.

    ``z`` and ``v`` are updated in place. Two passes over ``m`` per
    iteration: one builds the quadratic right-hand side, one applies the
    shrinkage/dual updates and accumulates every residual norm.
    """
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t p = m.shape[1]
    cdef double sqrt_n = sqrt(<double> n)
    cdef double sqrt_p = sqrt(<double> p)
    cdef double inv_rho = 1.0 / rho

    u_arr = np.zeros(p)
    cdef double[::1] u = u_arr
    rhs_arr = np.empty(p)
    cdef double[::1] rhs = rhs_arr
    sdz_arr = np.empty(p)
    cdef double[::1] sdz = sdz_arr
    mtv_arr = np.empty(p)
    cdef double[::1] mtv = mtv_arr

    cdef double r_norm = np.inf, s_norm = np.inf
    cdef double eps_pri = 0.0, eps_dual = 0.0
    cdef bint converged = False
    cdef int iters = 0, it
    cdef Py_ssize_t i, k, kk
    cdef double t, mu_i, w, z_new, dz, r_i
    cdef double r2, mu2, z2, sdz2, mtv2, az

    for it in range(max_iters):
        for k in range(p):
            rhs[k] = y[k]
        for i in range(n):
            t = rho * z[i] - v[i]
            for k in range(p):
                rhs[k] += m[i, k] * t
        for k in range(p):
            t = 0.0
            for kk in range(p):
                t += a_inv[k, kk] * rhs[kk]
            u[k] = t
        r2 = 0.0
        mu2 = 0.0
        z2 = 0.0
        for k in range(p):
            sdz[k] = 0.0
            mtv[k] = 0.0
        for i in range(n):
            mu_i = 0.0
            for k in range(p):
                mu_i += m[i, k] * u[k]
            w = inv_rho * v[i] + mu_i
            az = fabs(w) - inv_rho
            if az < 0.0:
                az = 0.0
            z_new = az if w > 0.0 else -az
            dz = z_new - z[i]
            z[i] = z_new
            r_i = mu_i - z_new
            v[i] = v[i] + rho * r_i
            r2 += r_i * r_i
            mu2 += mu_i * mu_i
            z2 += z_new * z_new
            for k in range(p):
                sdz[k] += m[i, k] * dz
                mtv[k] += m[i, k] * v[i]
        sdz2 = 0.0
        mtv2 = 0.0
        for k in range(p):
            sdz2 += sdz[k] * sdz[k]
            mtv2 += mtv[k] * mtv[k]
        r_norm = sqrt(r2)
        s_norm = rho * sqrt(sdz2)
        t = sqrt(mu2)
        w = sqrt(z2)
        eps_pri = sqrt_n * eps_abs + eps_rel * (t if t > w else w)
        eps_dual = sqrt_p * eps_abs + eps_rel * sqrt(mtv2)
        iters = it + 1
        if r_norm <= eps_pri and s_norm <= eps_dual:
            converged = True
            break
    return u_arr, iters, converged, r_norm, s_norm, eps_pri, eps_dual
