"""Empirical distance covariance and the asymptotic independence test.

For paired samples X (N x p) and Y (N x q) the squared empirical distance
covariance is

    V2 = S1 + S2 - 2 S3,

with S1 the mean product of pairwise Euclidean distances, S2 the product of
the mean distances and S3 the mean product of row-averaged distances. V2 is
zero (in the limit) exactly when the underlying vectors are independent, and
N * V2 / S2 is asymptotically a nonnegative quadratic form of standard
normals with unit mean under independence, which yields a conservative test:
reject independence when the statistic exceeds the squared normal quantile
(Phi^{-1}(1 - alpha/2))^2, valid for alpha up to 0.215.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    DegenerateSampleError,
    DimensionMismatchError,
    InvalidInputError,
    InvalidParameterError,
)

#: Largest significance level for which the quantile-threshold test is valid.
ALPHA_MAX = 0.215


def as_samples(data, name="samples", min_rows=2, min_cols=1):
    """Validate sample data and return it as a C-contiguous float64 (N, d) array.

    Rows are observations, columns coordinates; 1-d input becomes one column.
    Raises InvalidInputError for wrong shapes, too few rows/columns, or
    non-finite entries.
    """
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise InvalidInputError(f"{name}: expected a 2-d array, got ndim={arr.ndim}")
    if arr.shape[0] < min_rows:
        raise InvalidInputError(
            f"{name}: need at least {min_rows} rows, got {arr.shape[0]}"
        )
    if arr.shape[1] < min_cols:
        raise InvalidInputError(
            f"{name}: need at least {min_cols} column(s), got {arr.shape[1]}"
        )
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name}: non-finite entries")
    return np.ascontiguousarray(arr)


@dataclass(frozen=True)
class DistanceStats:
    """Distance-sum statistics of one sample pair.

    ``v2n_raw`` is exactly s1 + s2 - 2*s3 as computed; the ``v2n`` property
    clamps it at zero (the population quantity is nonnegative, the sample
    value can undershoot by rounding).
    """

    s1: float
    s2: float
    s3: float
    v2n_raw: float
    n: int

    @property
    def v2n(self):
        return self.v2n_raw if self.v2n_raw > 0.0 else 0.0


def pairwise_distances(samples):
    """Euclidean distance matrix between the rows of a sample matrix."""
    arr = as_samples(samples, "samples")
    return _kernels.pairwise_distances(arr)


def dcov_from_distances(dx, dy):
    """DistanceStats from precomputed distance matrices (no validation)."""
    s1, s2, s3 = _kernels.dcov_stats(dx, dy)
    return DistanceStats(s1=s1, s2=s2, s3=s3, v2n_raw=s1 + s2 - 2.0 * s3, n=dx.shape[0])


def empirical_dcov(x, y):
    """Squared empirical distance covariance of a paired sample.

    ``x`` and ``y`` must have the same number of rows. Distance matrices are
    computed once and contracted in O(N^2).
    """
    ax = as_samples(x, "x", min_cols=0)
    ay = as_samples(y, "y", min_cols=0)
    if ax.shape[0] != ay.shape[0]:
        raise DimensionMismatchError(
            f"x has {ax.shape[0]} rows but y has {ay.shape[0]}"
        )
    dx = _kernels.pairwise_distances(ax)
    dy = _kernels.pairwise_distances(ay)
    return dcov_from_distances(dx, dy)


def statistic_from_stats(stats):
    """N * V2 / S2 from precomputed DistanceStats.

    Raises DegenerateSampleError when S2 is zero (a constant sample); callers
    treat that pair as independent.
    """
    if stats.s2 == 0.0:
        raise DegenerateSampleError(
            "S2 is zero (a constant sample); the normalized statistic is undefined"
        )
    return stats.n * stats.v2n / stats.s2


def test_statistic(x, y):
    """The normalized dependence statistic N * V2 / S2 for a sample pair."""
    return statistic_from_stats(empirical_dcov(x, y))


def normal_quantile(p):
    """Standard normal quantile Phi^{-1}(p).

    Rational approximation (Wichura's double-precision algorithm), accurate to
    well below 1e-9 across (0, 1); keeps the rejection threshold bit-stable
    across platforms.
    """
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"quantile argument must be in (0, 1), got {p}")
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
                    + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
                  + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
                + 1.3314166789178437745e2) * r + 3.3871328727963666080e0)
        den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
                    + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
                  + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
                + 4.2313330701600911252e1) * r + 1.0)
        return q * num / den
    r = p if q < 0.0 else 1.0 - p
    r = np.sqrt(-np.log(r))
    if r <= 5.0:
        r -= 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                    + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
                  + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
                + 4.63033784615654529590e0) * r + 1.42343711074968357734e0)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                    + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                  + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
                + 2.05319162663775882187e0) * r + 1.0)
    else:
        r -= 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                    + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                  + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
                + 5.46378491116411436990e0) * r + 6.65790464350110377720e0)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                    + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                  + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
                + 5.99832206555887937690e-1) * r + 1.0)
    val = num / den
    return -val if q < 0.0 else val


def _check_alpha(alpha):
    if not 0.0 < alpha <= ALPHA_MAX:
        raise InvalidParameterError(
            f"alpha must be in (0, {ALPHA_MAX}], got {alpha}"
        )


def rejection_threshold(alpha):
    """(Phi^{-1}(1 - alpha/2))^2, the critical value of the independence test."""
    _check_alpha(alpha)
    q = normal_quantile(1.0 - alpha / 2.0)
    return q * q


def reject_independence(statistic, alpha):
    """True iff the normalized statistic exceeds the alpha critical value."""
    return statistic > rejection_threshold(alpha)
