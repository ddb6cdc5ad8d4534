"""Monte Carlo verification of the classical and quantum Cramer-Rao bounds.

An experiment samples measurement outcomes through the trace rule,
estimates theta by maximum likelihood, and compares the empirical spread
of the estimator across replications against both bounds,

    1 / (n i(theta, M))   and   1 / (n I(theta)),

the second never exceeding the first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import FlatLikelihood
from .measurement import Povm, fisher_info, probs
from .models import QubitModel, drho, rho
from .sld import quantum_information

__all__ = [
    "GRID_POINTS",
    "REFINE_TOL",
    "Experiment",
    "EstimationSummary",
    "mle",
    "run_replicated",
    "sample",
]

#: coarse likelihood grid size used before golden-section refinement
GRID_POINTS = 256
#: golden-section bracket width at termination
REFINE_TOL = 1e-8
#: log-likelihood range at or below this over the grid means a flat likelihood
_FLAT_RANGE_TOL = 1e-12
#: default half-width of the MLE search interval around theta_true
DEFAULT_HALF_WIDTH = math.pi / 4

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Experiment:
    """A sampling configuration: model, true parameter, measurement, size, seed."""

    model: QubitModel
    theta_true: float
    povm: Povm
    n_samples: int
    seed: int

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be positive, got {self.n_samples}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")
        # validates the model and measurement at theta_true
        probs(rho(self.model, self.theta_true), self.povm)


@dataclass(frozen=True)
class EstimationSummary:
    """Replication summary with both Cramer-Rao bounds at theta_true."""

    theta_hat_mean: float
    theta_hat_var: float
    cr_bound: float
    qcr_bound: float
    replications: int


def sample(exp: Experiment) -> dict[str, int]:
    """Multinomial outcome counts per label, deterministic per seed."""
    p = probs(rho(exp.model, exp.theta_true), exp.povm)
    rng = np.random.default_rng(exp.seed)
    counts = rng.multinomial(exp.n_samples, p / p.sum())
    return dict(zip(exp.povm.labels, (int(c) for c in counts)))


def _counts_array(povm: Povm, counts) -> np.ndarray:
    if isinstance(counts, Mapping):
        arr = np.array([counts.get(lab, 0) for lab in povm.labels], dtype=float)
    else:
        arr = np.asarray(counts, dtype=float)
        if arr.shape != (len(povm),):
            raise ValueError(f"expected {len(povm)} counts, got shape {arr.shape}")
    if np.any(arr < 0):
        raise ValueError("counts must be nonnegative")
    if arr.sum() < 1:
        raise ValueError("need at least one observation")
    return arr


def _log_likelihood(model: QubitModel, povm: Povm, counts: np.ndarray):
    def loglik(theta: float) -> float:
        p = probs(rho(model, theta), povm)
        total = 0.0
        for c, pi in zip(counts, p):
            if c == 0:
                continue
            if pi <= 0.0:
                return -math.inf
            total += c * math.log(pi)
        return total

    return loglik


def _golden_max(f, lo: float, hi: float, tol: float = REFINE_TOL) -> float:
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def _maximize(loglik, grid: np.ndarray, grid_scores: np.ndarray) -> float:
    finite = grid_scores[np.isfinite(grid_scores)]
    if finite.size == 0:
        raise FlatLikelihood("likelihood vanishes on the whole grid")
    if finite.size == grid_scores.size and finite.max() - finite.min() <= _FLAT_RANGE_TOL:
        raise FlatLikelihood(
            f"log-likelihood range {finite.max() - finite.min():.3e} over the grid"
        )
    j = int(np.argmax(grid_scores))
    lo = grid[max(j - 1, 0)]
    hi = grid[min(j + 1, grid.size - 1)]
    return _golden_max(loglik, lo, hi)


def mle(model: QubitModel, povm: Povm, counts, interval: tuple[float, float]) -> float:
    """Maximum-likelihood estimate of theta on a caller-supplied interval.

    Scans a GRID_POINTS coarse grid, then refines the best cell by
    golden-section search to a bracket of REFINE_TOL.  Counts may be a
    mapping from labels or a sequence in element order.
    """
    arr = _counts_array(povm, counts)
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValueError(f"empty search interval [{lo}, {hi}]")
    loglik = _log_likelihood(model, povm, arr)
    grid = np.linspace(lo, hi, GRID_POINTS)
    scores = np.array([loglik(t) for t in grid])
    return _maximize(loglik, grid, scores)


def run_replicated(
    exp: Experiment,
    replications: int,
    interval: tuple[float, float] | None = None,
) -> EstimationSummary:
    """Replicate the experiment and summarize the estimator spread.

    Replication i draws from ``default_rng((seed, i))``, so runs are
    reproducible and can be partitioned without overlap.  The default
    search interval is theta_true +/- pi/4.
    """
    if replications < 100:
        raise ValueError(f"need at least 100 replications, got {replications}")
    if interval is None:
        interval = (exp.theta_true - DEFAULT_HALF_WIDTH, exp.theta_true + DEFAULT_HALF_WIDTH)
    lo, hi = float(interval[0]), float(interval[1])

    p = probs(rho(exp.model, exp.theta_true), exp.povm)
    pvals = p / p.sum()
    grid = np.linspace(lo, hi, GRID_POINTS)
    # grid outcome log-probabilities are shared by every replication
    log_p = np.full((GRID_POINTS, len(exp.povm)), -np.inf)
    for i, t in enumerate(grid):
        pg = probs(rho(exp.model, t), exp.povm)
        log_p[i, pg > 0.0] = np.log(pg[pg > 0.0])

    estimates = np.empty(replications)
    for rep in range(replications):
        rng = np.random.default_rng((exp.seed, rep))
        counts = rng.multinomial(exp.n_samples, pvals).astype(float)
        loglik = _log_likelihood(exp.model, exp.povm, counts)
        observed = counts > 0
        scores = log_p[:, observed] @ counts[observed]
        estimates[rep] = _maximize(loglik, grid, scores)

    fisher = fisher_info(drho(exp.model, exp.theta_true), rho(exp.model, exp.theta_true), exp.povm)
    qfi = quantum_information(exp.model, exp.theta_true)
    n = exp.n_samples
    cr = 1.0 / (n * fisher) if fisher > 0 else math.inf
    qcr = 1.0 / (n * qfi) if qfi > 0 else math.inf
    return EstimationSummary(
        theta_hat_mean=float(estimates.mean()),
        theta_hat_var=float(estimates.var(ddof=1)),
        cr_bound=cr,
        qcr_bound=qcr,
        replications=replications,
    )
