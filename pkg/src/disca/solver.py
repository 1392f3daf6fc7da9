"""Difference-of-convex solver for the sphere-constrained l1-difference problem.

The target is

    min  ||M+ u||_1 - ||M- u||_1   subject to  ||u||_2 = 1.

The equality constraint is absorbed by an augmented Lagrangian with penalty
xi and multiplier psi,

    L(u) = xi/2 u'u + ||M+ u||_1 - (||M- u||_1 + (xi - psi) ||u||_2)
           + xi/2 - psi,

which for xi > psi is an explicit difference of the convex parts
g(u) = xi/2 u'u + ||M+ u||_1 and h(u) = ||M- u||_1 + (xi - psi) ||u||_2.
DCA alternates a subgradient of h with the convex minimization of
g(u) - y_k'u; the latter is solved by ADMM with a cached p x p factorization
and a soft-threshold z-update. The outer loop updates
psi += xi (||u||_2 - 1) and doubles xi until the unit norm holds.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.optimize

from . import _kernels
from .dcov import statistic_from_stats, empirical_dcov
from .errors import (
    ConvexityViolationError,
    DegenerateSampleError,
    InvalidInputError,
    InvalidParameterError,
    NumericalFailureError,
    SolverFailureError,
)
from .reduction import SignedDiffProblem, objective

#: Outer-loop stopping tolerance on | ||u|| - 1 |.
NORM_TOL = 1e-6

#: Iterates with norm below this are treated as collapsed to the spurious
#: fixed point at the origin and reseeded.
COLLAPSE_TOL = 1e-8

#: A restart whose final norm misses 1 by more than this is discarded.
RESTART_ACCEPT_TOL = 1e-2


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of the outer loop, DCA, ADMM and the independence test.

    Defaults: unit initial penalty doubled each outer iteration up to 1e6,
    zero initial multiplier, unit ADMM penalty with 1e-6/1e-4 stopping
    tolerances, DCA relative-change threshold 1e-6, five random restarts.
    """

    xi0: float = 1.0
    xi_growth: float = 2.0
    xi_max: float = 1e6
    psi0: float = 0.0
    rho: float = 1.0
    eps_abs: float = 1e-6
    eps_rel: float = 1e-4
    dca_tol: float = 1e-6
    max_dca_iters: int = 100
    max_admm_iters: int = 5000
    max_outer_iters: int = 50
    n_restarts: int = 5
    seed: int = 0
    alpha: float = 0.05

    def __post_init__(self):
        for name in ("xi0", "rho", "eps_abs", "eps_rel", "dca_tol", "xi_max"):
            if getattr(self, name) <= 0.0:
                raise InvalidParameterError(f"{name} must be > 0")
        if self.xi_growth <= 1.0:
            raise InvalidParameterError("xi_growth must be > 1")
        for name in ("max_dca_iters", "max_admm_iters", "max_outer_iters",
                     "n_restarts"):
            if getattr(self, name) < 1:
                raise InvalidParameterError(f"{name} must be >= 1")
        if self.seed < 0:
            raise InvalidParameterError("seed must be >= 0")
        if not 0.0 < self.alpha <= 0.215:
            raise InvalidParameterError("alpha must be in (0, 0.215]")


@dataclass(frozen=True)
class AdmmResult:
    """Converged iterate and residual diagnostics of one inner solve."""

    u: np.ndarray
    z: np.ndarray
    v: np.ndarray
    iterations: int
    converged: bool
    r_norm: float
    s_norm: float
    eps_pri: float
    eps_dual: float


@dataclass(frozen=True)
class DcaResult:
    """Final iterate and the Lagrangian trace of one DCA run."""

    u: np.ndarray
    lagrangian_trace: list
    converged: bool
    iterations: int
    admm_all_converged: bool


@dataclass(frozen=True)
class DirectionResult:
    """Best direction over all restarts.

    ``u`` is exactly unit norm with its first nonzero entry positive.
    ``lagrangian_trace`` holds the augmented-Lagrangian values of the winning
    restart's final DCA run (non-increasing up to inner-solve slack). ``v2n``
    and ``statistic`` are filled when the solve was given the generating
    samples, NaN otherwise.
    """

    u: np.ndarray
    objective_value: float
    v2n: float
    statistic: float
    lagrangian_trace: list
    converged: bool
    restarts_used: int
    xi_final: float = math.nan
    psi_final: float = math.nan


def soft_threshold(x, r):
    """Componentwise shrinkage sgn(x_i) * max(|x_i| - r, 0)."""
    if r < 0.0:
        raise InvalidParameterError(f"threshold must be >= 0, got {r}")
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.maximum(np.abs(x) - r, 0.0)


def subgradient_h(u, m_minus, xi, psi):
    """A subgradient of h(u) = ||M- u||_1 + (xi - psi) ||u||_2.

    Sign components of M- u at exactly zero take 0 (the minimal-norm choice).
    At u = 0 the norm term contributes nothing. Requires xi - psi > 0, else
    h is not convex and the caller must grow xi.
    """
    if xi - psi <= 0.0:
        raise ConvexityViolationError(
            f"xi - psi = {xi - psi} is not positive; grow xi before running DCA"
        )
    u = np.ascontiguousarray(np.asarray(u, dtype=np.float64).ravel())
    m_minus = np.ascontiguousarray(np.asarray(m_minus, dtype=np.float64))
    y = _kernels.sign_pullback(m_minus, u)
    nrm = float(np.linalg.norm(u))
    if nrm > 0.0:
        y = y + (xi - psi) * (u / nrm)
    return y


def augmented_lagrangian(problem, u, xi, psi):
    """L(u) including the constant xi/2 - psi term."""
    u = np.ascontiguousarray(np.asarray(u, dtype=np.float64).ravel())
    plus, minus = _kernels.l1_terms(problem.m_plus, problem.m_minus, u)
    nrm = float(np.linalg.norm(u))
    return (0.5 * xi * float(u @ u) + plus - minus - (xi - psi) * nrm
            + 0.5 * xi - psi)


def _factorize(m_plus, xi, rho):
    """Inverse of the SPD system matrix xi I + rho M+' M+ (p x p)."""
    p = m_plus.shape[1]
    a = xi * np.eye(p)
    if m_plus.shape[0]:
        a += rho * (m_plus.T @ m_plus)
    c, low = scipy.linalg.cho_factor(a)
    return np.ascontiguousarray(scipy.linalg.cho_solve((c, low), np.eye(p)))


def admm_subproblem(m_plus, xi, y_k, cfg, z0=None, v0=None, a_inv=None):
    """Approximately minimize (xi/2) u'u + ||M+ u||_1 - y_k'u.

    Warm-start state may be passed via ``z0``/``v0`` (copied, not mutated).
    With an empty M+ the minimizer y_k / xi is exact in one step. When the
    iteration cap is reached the best iterate is returned with
    ``converged=False``.
    """
    if xi <= 0.0:
        raise InvalidParameterError(f"xi must be > 0, got {xi}")
    m_plus = np.ascontiguousarray(np.asarray(m_plus, dtype=np.float64))
    y_k = np.ascontiguousarray(np.asarray(y_k, dtype=np.float64).ravel())
    n_plus, p = m_plus.shape
    if n_plus == 0:
        u = y_k / xi
        return AdmmResult(u=u, z=np.zeros(0), v=np.zeros(0), iterations=1,
                          converged=True, r_norm=0.0, s_norm=0.0,
                          eps_pri=0.0, eps_dual=0.0)
    z = np.zeros(n_plus) if z0 is None else np.array(z0, dtype=np.float64)
    v = np.zeros(n_plus) if v0 is None else np.array(v0, dtype=np.float64)
    if a_inv is None:
        a_inv = _factorize(m_plus, xi, cfg.rho)
    u, iters, converged, r_norm, s_norm, eps_pri, eps_dual = _kernels.admm_solve(
        m_plus, a_inv, cfg.rho, y_k, z, v,
        cfg.eps_abs, cfg.eps_rel, cfg.max_admm_iters,
    )
    return AdmmResult(u=np.asarray(u), z=z, v=v, iterations=iters,
                      converged=converged, r_norm=r_norm, s_norm=s_norm,
                      eps_pri=eps_pri, eps_dual=eps_dual)


def dca_solve(problem, xi, psi, u0, cfg, warm=None):
    """Run DCA on the augmented Lagrangian at fixed (xi, psi).

    Stops when either robust relative-change measure drops below
    ``cfg.dca_tol``: the max coordinate ratio |du_i| / max(|u_i|, 1e-12) or
    the norm ratio ||du|| / max(||u||, 1e-12). ``warm`` carries (z, v) ADMM
    state, mutated in place across the run's inner solves.
    """
    if xi - psi <= 0.0:
        raise ConvexityViolationError(
            f"xi - psi = {xi - psi} is not positive; grow xi before running DCA"
        )
    u = np.ascontiguousarray(np.asarray(u0, dtype=np.float64).ravel())
    if u.shape[0] != problem.p:
        raise InvalidInputError(
            f"u0 has length {u.shape[0]}, problem dimension is {problem.p}"
        )
    if not np.all(np.isfinite(u)):
        raise NumericalFailureError("u0 contains non-finite entries")
    m_plus = problem.m_plus
    m_minus = problem.m_minus
    n_plus = m_plus.shape[0]
    if n_plus:
        a_inv = _factorize(m_plus, xi, cfg.rho)
        if warm is None:
            z = np.zeros(n_plus)
            v = np.zeros(n_plus)
        else:
            z, v = warm
    trace = [augmented_lagrangian(problem, u, xi, psi)]
    converged = False
    admm_all_converged = True
    iters = 0
    stagnant = 0
    for _ in range(cfg.max_dca_iters):
        y_k = subgradient_h(u, m_minus, xi, psi)
        if n_plus == 0:
            u_next = y_k / xi
        else:
            u_next, _, ok, _, _, _, _ = _kernels.admm_solve(
                m_plus, a_inv, cfg.rho, y_k, z, v,
                cfg.eps_abs, cfg.eps_rel, cfg.max_admm_iters,
            )
            u_next = np.asarray(u_next)
            admm_all_converged = admm_all_converged and ok
        if not np.all(np.isfinite(u_next)):
            raise NumericalFailureError("DCA iterate became non-finite")
        trace.append(augmented_lagrangian(problem, u_next, xi, psi))
        du = u_next - u
        coord_ratio = float(np.max(np.abs(du) / np.maximum(np.abs(u), 1e-12)))
        norm_ratio = float(
            np.linalg.norm(du) / max(float(np.linalg.norm(u)), 1e-12)
        )
        u = u_next
        iters += 1
        if coord_ratio < cfg.dca_tol or norm_ratio < cfg.dca_tol:
            converged = True
            break
        if float(np.linalg.norm(u)) < COLLAPSE_TOL:
            # Absorbing fixed point at the origin: relative-change measures
            # cannot settle there, and further iterations cannot leave it.
            converged = True
            break
        # Inexact inner solves leave the iterate wobbling at the ADMM noise
        # level; once the Lagrangian has stopped moving the run is done.
        if abs(trace[-2] - trace[-1]) <= 1e-11 * max(1.0, abs(trace[-2])):
            stagnant += 1
            if stagnant >= 2:
                converged = True
                break
        else:
            stagnant = 0
    return DcaResult(u=u, lagrangian_trace=trace, converged=converged,
                     iterations=iters, admm_all_converged=admm_all_converged)


def _sign_normalize(u, tol=1e-12):
    for val in u:
        if abs(val) > tol:
            return u if val > 0.0 else -u
    return u


def _unit_vector(p, index=0):
    u = np.zeros(p)
    u[index] = 1.0
    return u


def _random_unit(rng, p):
    while True:
        u = rng.standard_normal(p)
        nrm = float(np.linalg.norm(u))
        if nrm > 1e-12:
            return u / nrm


def _problem_scale(problem):
    """Mean row norm over both matrices.

    Dividing by it puts rows at unit scale, which is what the pinned ADMM
    penalty rho = 1 expects (the dual variable moves by rho * |row . u| per
    iteration); the multiplier climb absorbs the remaining objective
    magnitude, which grows like the number of rows.
    """
    total = 0.0
    count = 0
    for m in (problem.m_plus, problem.m_minus):
        if m.shape[0]:
            total += float(np.linalg.norm(m, axis=1).sum())
            count += m.shape[0]
    return total / count if count else 0.0


def _finalize(problem, u, obj, trace, converged, restarts_used, xi, psi, samples):
    v2n = math.nan
    statistic = math.nan
    if samples is not None:
        x, y = samples
        stats = empirical_dcov(x @ u, y)
        v2n = stats.v2n
        try:
            statistic = statistic_from_stats(stats)
        except DegenerateSampleError:
            # A constant sample is independent of everything by convention.
            statistic = 0.0
    return DirectionResult(
        u=u, objective_value=obj, v2n=v2n, statistic=statistic,
        lagrangian_trace=trace, converged=converged,
        restarts_used=restarts_used, xi_final=xi, psi_final=psi,
    )


def solve_min_direction(problem, cfg, seed=None, samples=None):
    """Best unit direction over ``cfg.n_restarts`` independent multistarts.

    Each restart runs the augmented-Lagrangian outer loop from a fresh random
    unit vector (deterministic per-restart seed streams derived from ``seed``,
    default ``cfg.seed``). Candidates are ranked by the original-scale
    objective at the renormalized direction, ties broken by restart index; the
    winner is sign-normalized so its first nonzero entry is positive.

    Internally the problem is rescaled by its total row-norm mass so the
    unit-objective bound matches the pinned xi0 = 1 schedule; reported values
    are on the caller's scale. ``samples=(x, y)`` fills the v2n/statistic
    fields from the projected sample pair.
    """
    p = problem.p
    if p < 1:
        raise InvalidInputError("problem dimension must be >= 1")
    base_seed = cfg.seed if seed is None else seed
    scale = _problem_scale(problem)
    if scale <= 0.0:
        # Flat objective: every unit vector is optimal.
        u = _unit_vector(p)
        return _finalize(problem, u, 0.0, [], True, 0, cfg.xi0, cfg.psi0, samples)
    if p == 1:
        # The unit sphere is {-1, +1} and the objective is even.
        u = np.array([1.0])
        return _finalize(problem, u, objective(problem, u), [], True, 0,
                         cfg.xi0, cfg.psi0, samples)
    scaled = SignedDiffProblem(
        m_plus=problem.m_plus / scale, m_minus=problem.m_minus / scale, p=p
    )
    n_plus = scaled.n_plus
    candidates = []
    failures = []
    for r in range(cfg.n_restarts):
        rng = np.random.default_rng([base_seed, r])
        u = _random_unit(rng, p)
        xi = cfg.xi0
        psi = cfg.psi0
        z = np.zeros(n_plus)
        v = np.zeros(n_plus)
        trace = []
        converged_outer = False
        failed = None
        for _ in range(cfg.max_outer_iters):
            while xi - psi <= 0.0 and xi < cfg.xi_max:
                xi = min(xi * cfg.xi_growth, cfg.xi_max)
            if xi - psi <= 0.0:
                failed = "could not restore convexity within the xi cap"
                break
            try:
                res = dca_solve(scaled, xi, psi, u, cfg, warm=(z, v))
            except NumericalFailureError as exc:
                failed = str(exc)
                break
            u_new = res.u
            trace = res.lagrangian_trace
            nrm = float(np.linalg.norm(u_new))
            psi += xi * (nrm - 1.0)
            if abs(nrm - 1.0) < NORM_TOL:
                u = u_new
                converged_outer = True
                break
            if nrm < COLLAPSE_TOL:
                # The origin is a spurious DCA fixed point; keep the multiplier
                # update and reseed the direction.
                u = _random_unit(rng, p)
                z[:] = 0.0
                v[:] = 0.0
            else:
                u = u_new
            xi = min(xi * cfg.xi_growth, cfg.xi_max)
        if failed is None:
            nrm = float(np.linalg.norm(u))
            if not np.all(np.isfinite(u)) or abs(nrm - 1.0) >= RESTART_ACCEPT_TOL:
                failed = f"final norm {nrm} too far from 1"
        if failed is not None:
            failures.append({"restart": r, "error": failed})
            continue
        unit = _sign_normalize(u / nrm)
        obj = objective(problem, unit)
        candidates.append((obj, r, unit, converged_outer, trace, xi, psi))
    if not candidates:
        raise SolverFailureError(
            f"all {cfg.n_restarts} restarts failed", details=failures
        )
    obj, _, unit, converged, trace, xi, psi = min(
        candidates, key=lambda c: (c[0], c[1])
    )
    return _finalize(problem, unit, obj, trace, converged, len(candidates),
                     xi, psi, samples)


def stationarity_residual(problem, u, xi, psi, zero_tol=1e-7):
    """Minimal first-order residual over admissible l1 subgradient signs.

    Evaluates min over s+ in the subdifferential of ||M+ .||_1 at u (and s-
    for M-) of

        || M+' s+ - M-' s- + xi u - (xi - psi) u / ||u||_2 ||_2.

    Components of M u within ``zero_tol`` (relative) of zero are free in
    [-1, 1]; the bounded least-squares over the free signs is solved by
    scipy. Requires a nonzero u.
    """
    u = np.ascontiguousarray(np.asarray(u, dtype=np.float64).ravel())
    nrm = float(np.linalg.norm(u))
    if nrm == 0.0:
        raise InvalidParameterError("stationarity is defined for nonzero u only")
    c = xi * u - (xi - psi) * u / nrm
    free_cols = []
    for m, sgn in ((problem.m_plus, 1.0), (problem.m_minus, -1.0)):
        if m.shape[0] == 0:
            continue
        t = m @ u
        cut = zero_tol * max(1.0, float(np.max(np.abs(t))))
        free = np.abs(t) <= cut
        fixed = ~free
        if fixed.any():
            c = c + sgn * (m[fixed].T @ np.sign(t[fixed]))
        if free.any():
            free_cols.append(sgn * m[free].T)
    if not free_cols:
        return float(np.linalg.norm(c))
    b = np.hstack(free_cols)
    res = scipy.optimize.lsq_linear(b, -c, bounds=(-1.0, 1.0),
                                    tol=1e-14, max_iter=500)
    return float(np.linalg.norm(b @ res.x + c))
