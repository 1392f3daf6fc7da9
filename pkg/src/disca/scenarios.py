"""Synthetic data generators with known ground-truth subspaces.

Every generator draws from a single seeded stream in a fixed order, so a
(name, N, seed, noise_scale) tuple reproduces samples bit-identically. The
shared dependence structure is a single index s = X1 + ... + Xp feeding the
Y coordinates, so the true reducible X-subspace is always the diagonal
direction; the Y-side truths differ per scenario.
"""

from dataclasses import dataclass, field

import numpy as np

from .dataio import load_csv
from .errors import InvalidParameterError
from .subspace import Basis

SCENARIO_NAMES = ("counterexample", "example1", "example2", "example3", "csv")

_DIAG3 = Basis(np.full((3, 1), 1.0 / np.sqrt(3.0)))


@dataclass(frozen=True)
class ScenarioSpec:
    """What to generate: scenario name, sample count, seed, noise scale.

    For the "csv" scenario the path and disjoint, nonempty column lists select
    the data instead; ``weekly`` averages consecutive 7-row blocks.
    """

    name: str
    n: int = 100
    seed: int = 0
    noise_scale: float = 0.01
    csv_path: str | None = None
    x_cols: tuple = ()
    y_cols: tuple = ()
    weekly: bool = False

    def __post_init__(self):
        if self.name not in SCENARIO_NAMES:
            raise InvalidParameterError(
                f"unknown scenario {self.name!r}; choose from {SCENARIO_NAMES}"
            )
        if self.name != "csv" and self.n < 2:
            raise InvalidParameterError(f"n must be >= 2, got {self.n}")
        if self.seed < 0:
            raise InvalidParameterError("seed must be >= 0")


def _counterexample(rng, n, noise):
    x = rng.standard_normal((n, 3))
    s = x.sum(axis=1)
    y = np.column_stack([
        s + noise * rng.standard_normal(n),
        s**2 + noise * rng.standard_normal(n),
    ])
    return x, y, _DIAG3, Basis(np.eye(2))


def _example1(rng, n, noise):
    sigma = np.full((3, 3), 0.5)
    np.fill_diagonal(sigma, 1.0)
    chol = np.linalg.cholesky(sigma)
    x = rng.standard_normal((n, 3)) @ chol.T
    s = x.sum(axis=1)
    y = np.column_stack([
        s + noise * rng.standard_normal(n),
        s**2 + noise * rng.standard_normal(n),
        rng.standard_normal(n),
    ])
    return x, y, _DIAG3, Basis(np.eye(3)[:, :2])


def _example2(rng, n, noise):
    x = rng.binomial(10, 0.5, size=(n, 3)).astype(np.float64)
    s = x.sum(axis=1)
    y = np.column_stack([
        s**2 + noise * rng.standard_normal(n),
        rng.binomial(10, 0.35, size=n).astype(np.float64),
    ])
    return x, y, _DIAG3, Basis(np.array([[1.0], [0.0]]))


def _example3(rng, n, noise):
    # t(2) via a standard normal over the square root of a chi-square(2)/2.
    z = rng.standard_normal((n, 3))
    w = rng.chisquare(2.0, size=(n, 3))
    x = z / np.sqrt(w / 2.0)
    s = x.sum(axis=1)
    y = np.column_stack([
        np.tanh(s) + noise * rng.standard_normal(n),
        np.tanh(s) + noise * rng.standard_normal(n),
    ])
    return x, y, _DIAG3, Basis(np.full((2, 1), 1.0 / np.sqrt(2.0)))


_GENERATORS = {
    "counterexample": _counterexample,
    "example1": _example1,
    "example2": _example2,
    "example3": _example3,
}


def generate(spec):
    """Return (x, y, true_basis_x, true_basis_y) for a scenario.

    The csv scenario loads user data and has no ground truth (None, None).
    """
    if spec.name == "csv":
        if not spec.csv_path:
            raise InvalidParameterError("csv scenario requires csv_path")
        x, y = load_csv(
            spec.csv_path, list(spec.x_cols), list(spec.y_cols),
            aggregate="weekly" if spec.weekly else "none",
        )
        return x, y, None, None
    rng = np.random.default_rng(spec.seed)
    return _GENERATORS[spec.name](rng, spec.n, spec.noise_scale)
