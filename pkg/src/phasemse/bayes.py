"""Exact Bayesian inference for the phase-estimation protocols.

The estimation error of the optimal (posterior-mean) strategy is computed
in three steps, none of which involves asymptotic approximations:

1. for a fixed true phase, each simulated trajectory of mu outcomes yields
   a posterior over the phase grid whose variance is that trajectory's
   mean square error;
2. the trajectory average estimates eps(theta') = E[Var posterior | theta'],
   with a Monte Carlo standard error from the sample spread;
3. eps(theta') is integrated against the prior with a deterministic
   Gauss-Legendre rule whose nodes are snapped onto the grid, so the only
   stochastic ingredient is the trajectory sampling.

Randomness is reproducible by construction: trajectory (node k, index t)
always draws from the stream keyed (master_seed, k, t), so worker count
and evaluation order cannot change any result. Using the same keys for
every mu also correlates the curve points, which keeps the numerical
curve monotone well within its error bars.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigurationError,
    InconsistencyError,
    NumericalError,
    ParameterError,
)
from .fock import GeneratorSpec, TwoModeState
from .grid import PhaseGrid, gauss_legendre_nodes, simpson_grid
from .interferometer import (
    LikelihoodTable,
    Outcome,
    likelihood_table,
    sample_outcome_indices,
)
from .streams import RngTree

LOG_SENTINEL = -1e300  # stands in for log(0); keeps 0*log(0) = 0 in matmuls
UNDERFLOW_SHIFT = -1e250  # a shift below this means no node supports the data
VARIANCE_CLAMP = -1e-14
DEFAULT_THETA_NODES = 51
DEFAULT_TRAJECTORIES = 1000
PEAK_TOL = 1e-2
UNIQUE_FRACTION = 0.95


@dataclass(frozen=True)
class Prior:
    """Prior density tabulated on a phase grid; integrates to 1."""

    grid: PhaseGrid
    density: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.density, dtype=float)
        if d.shape != (self.grid.size,):
            raise ParameterError("prior density shape mismatch")
        if np.any(d < 0):
            raise ParameterError("prior density must be non-negative")
        total = self.grid.integrate(d)
        if abs(total - 1.0) > 1e-10:
            raise ParameterError(f"prior integrates to {total}, not 1")
        object.__setattr__(self, "density", d)

    @property
    def width(self) -> float:
        return self.grid.upper - self.grid.lower


@dataclass(frozen=True)
class Posterior:
    """Posterior density on the same grid as the prior."""

    grid: PhaseGrid
    density: np.ndarray


@dataclass(frozen=True)
class IntrinsicWidthReport:
    """Outcome of the intrinsic-width search."""

    width: float | None
    fractions: dict[float, float]
    candidates: tuple[float, ...]
    mu_probe: int
    trials: int
    threshold: float
    peak_tol: float


def flat_prior(width: float, num_nodes: int = 2049) -> Prior:
    """Flat prior on [0, width] over a Simpson grid."""
    if width <= 0:
        raise ParameterError("prior width must be positive")
    grid = simpson_grid(0.0, width, num_nodes)
    return Prior(grid=grid, density=np.full(num_nodes, 1.0 / width))


def prior_variance(prior: Prior) -> float:
    """Variance of the prior by quadrature (exact for the flat prior)."""
    nodes = prior.grid.nodes
    m1 = prior.grid.integrate(nodes * prior.density)
    m2 = prior.grid.integrate(nodes**2 * prior.density)
    return max(m2 - m1 * m1, 0.0)


def periodic_prior_error(width: float) -> float:
    """Prior error of the periodic (Holevo) loss, 2[1 - (2/W) sin(W/2)].

    Defined for widths in (0, 2*pi]; tends to the quadratic prior variance
    W^2/12 as the width shrinks and stays below it everywhere.
    """
    if not 0.0 < width <= 2.0 * np.pi + 1e-12:
        raise ParameterError("periodic prior error defined on (0, 2*pi]")
    return 2.0 * (1.0 - (2.0 / width) * np.sin(width / 2.0))


def _require_same_grid(prior: Prior, table: LikelihoodTable) -> None:
    if prior.grid.size != table.grid.size or not np.array_equal(
        prior.grid.nodes, table.grid.nodes
    ):
        raise ConfigurationError("prior and likelihood table use different grids")


def _log_prior(prior: Prior) -> np.ndarray:
    with np.errstate(divide="ignore"):
        lp = np.log(prior.density)
    return np.where(np.isfinite(lp), lp, LOG_SENTINEL)


def _sentinel_log_probs(table: LikelihoodTable) -> np.ndarray:
    cached = getattr(table, "_sentinel_log_probs", None)
    if cached is None:
        with np.errstate(divide="ignore"):
            cached = np.log(table.probs)
        cached = np.where(np.isfinite(cached), cached, LOG_SENTINEL)
        object.__setattr__(table, "_sentinel_log_probs", cached)
    return cached


# --- single-posterior path ------------------------------------------------------


def posterior(prior: Prior, table: LikelihoodTable, outcomes) -> Posterior:
    """Posterior density after observing a sequence of outcomes.

    The log-likelihood is accumulated outcome by outcome, shifted by its
    maximum and normalized with the grid quadrature, so arbitrarily many
    observations stay in range.
    """
    _require_same_grid(prior, table)
    logpost = _log_prior(prior).copy()
    if len(outcomes) > 0:
        counts: dict[int, int] = {}
        for o in outcomes:
            idx = table.index.get(Outcome(*o))
            if idx is None:
                raise InconsistencyError(f"outcome {tuple(o)} not present in the table")
            counts[idx] = counts.get(idx, 0) + 1
        logp = _sentinel_log_probs(table)
        for idx, c in counts.items():
            logpost = logpost + c * logp[idx]
    shift = float(logpost.max())
    if shift <= UNDERFLOW_SHIFT or not np.isfinite(shift):
        raise NumericalError(
            "posterior underflow: no grid node supports the observed data",
            diagnostics={"max_log_posterior": shift, "observations": len(outcomes)},
        )
    w = np.exp(logpost - shift)
    z = prior.grid.integrate(w)
    if z <= 0.0:
        raise NumericalError("posterior normalizer vanished", {"shift": shift})
    return Posterior(grid=prior.grid, density=w / z)


def posterior_mean(post: Posterior) -> float:
    return post.grid.integrate(post.grid.nodes * post.density)


def posterior_variance(post: Posterior) -> float:
    m1 = posterior_mean(post)
    m2 = post.grid.integrate(post.grid.nodes**2 * post.density)
    var = m2 - m1 * m1
    if var < VARIANCE_CLAMP:
        raise NumericalError(f"posterior variance {var} below clamp tolerance")
    return max(var, 0.0)


# --- trajectory batches ---------------------------------------------------------


def _trajectory_variances(
    prior: Prior,
    table: LikelihoodTable,
    node: int,
    mu: int,
    trajectories: int,
    stream: RngTree,
) -> np.ndarray:
    """Posterior variance of each simulated trajectory at grid node `node`.

    Vectorized across trajectories: sampled outcome indices become a dense
    count matrix over the outcomes actually seen, one matrix product gives
    every trajectory's log-posterior on the grid.
    """
    grid = table.grid
    theta_true = float(grid.nodes[node])
    draws = np.empty((trajectories, mu), dtype=np.int64)
    for t in range(trajectories):
        rng = stream.child(t).generator()
        draws[t] = sample_outcome_indices(table, theta_true, mu, rng)
    active = np.unique(draws)
    remap = np.searchsorted(active, draws)
    flat = remap + np.arange(trajectories)[:, None] * active.size
    counts = np.bincount(flat.ravel(), minlength=trajectories * active.size)
    counts = counts.reshape(trajectories, active.size).astype(float)
    logp = _sentinel_log_probs(table)[active]
    logpost = counts @ logp + _log_prior(prior)[None, :]
    shift = logpost.max(axis=1)
    if not np.all(shift > UNDERFLOW_SHIFT):
        bad = int(np.argmin(shift))
        raise NumericalError(
            "posterior underflow in trajectory batch",
            diagnostics={"trajectory": bad, "max_log_posterior": float(shift[bad])},
        )
    w = np.exp(logpost - shift[:, None])
    wq = grid.weights
    z = w @ wq
    m1 = w @ (wq * grid.nodes)
    m2 = w @ (wq * grid.nodes**2)
    mean = m1 / z
    var = m2 / z - mean**2
    low = var.min()
    if low < VARIANCE_CLAMP:
        raise NumericalError(f"posterior variance {low} below clamp tolerance")
    return np.maximum(var, 0.0)


def error_given_truth(
    prior: Prior,
    table: LikelihoodTable,
    theta_true: float,
    mu: int,
    trajectories: int = DEFAULT_TRAJECTORIES,
    stream: RngTree | None = None,
) -> tuple[float, float]:
    """Monte Carlo estimate of eps(theta') = E[Var posterior] and its stderr.

    mu = 0 needs no data: the posterior is the prior and the error is its
    variance, returned with zero standard error.
    """
    _require_same_grid(prior, table)
    if mu < 0:
        raise ParameterError("mu must be non-negative")
    if mu == 0:
        return prior_variance(prior), 0.0
    if trajectories < 2:
        raise ParameterError("at least two trajectories are required")
    if stream is None:
        raise ParameterError("a deterministic stream is required")
    node = table.grid.nearest_index(theta_true)
    var = _trajectory_variances(prior, table, node, mu, trajectories, stream)
    eps = float(var.mean())
    stderr = float(var.std(ddof=1) / np.sqrt(trajectories))
    return eps, stderr


def asymptotic_normality_report(
    prior: Prior,
    table: LikelihoodTable,
    theta_true: float,
    mu: int,
    fisher: float,
    trajectories: int = 200,
    stream: RngTree | None = None,
) -> float:
    """Fraction of trajectories whose posterior variance is within 10% of 1/(mu F)."""
    _require_same_grid(prior, table)
    if mu < 1:
        raise ParameterError("normality check requires mu >= 1")
    if fisher <= 0:
        raise ParameterError("fisher information must be positive")
    if stream is None:
        raise ParameterError("a deterministic stream is required")
    node = table.grid.nearest_index(theta_true)
    var = _trajectory_variances(prior, table, node, mu, trajectories, stream)
    target = 1.0 / (mu * fisher)
    return float(np.mean(np.abs(var - target) <= 0.1 * target))


# --- prior-weighted mean square error -------------------------------------------


def _theta_quadrature(prior: Prior, theta_nodes: int):
    """GL nodes snapped onto the grid: (node indices, weight * prior density)."""
    grid = prior.grid
    theta, w = gauss_legendre_nodes(grid.lower, grid.upper, theta_nodes)
    idx = np.array([grid.nearest_index(t) for t in theta])
    coeff = w * prior.density[idx]
    return idx, coeff


_POOL_CTX: dict = {}


def _pool_init(prior: Prior, table: LikelihoodTable) -> None:
    _POOL_CTX["prior"] = prior
    _POOL_CTX["table"] = table


def _pool_node_error(args) -> tuple[int, float, float]:
    pos, node, mu, trajectories, seed = args
    prior = _POOL_CTX["prior"]
    table = _POOL_CTX["table"]
    stream = RngTree(seed).child(int(node))
    var = _trajectory_variances(prior, table, int(node), mu, trajectories, stream)
    return pos, float(var.mean()), float(var.std(ddof=1) / np.sqrt(trajectories))


class MseWorkspace:
    """Shared state for repeated mse evaluations over one (prior, table) pair.

    Owns the optional process pool. Results are identical with any worker
    count because every trajectory stream is keyed by (seed, node, index)
    and the reduction runs in fixed node order.
    """

    def __init__(self, prior: Prior, table: LikelihoodTable, workers: int | None = None):
        _require_same_grid(prior, table)
        self.prior = prior
        self.table = table
        if workers is None:
            workers = worker_count_from_env()
        self.workers = max(1, int(workers))
        self._pool = None
        if self.workers > 1:
            self._pool = ProcessPoolExecutor(
                max_workers=self.workers,
                initializer=_pool_init,
                initargs=(prior, table),
            )

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def mse(
        self,
        mu: int,
        trajectories: int = DEFAULT_TRAJECTORIES,
        master_seed: int = 0,
        theta_nodes: int = DEFAULT_THETA_NODES,
    ) -> tuple[float, float]:
        if mu < 0:
            raise ParameterError("mu must be non-negative")
        if mu == 0:
            return prior_variance(self.prior), 0.0
        idx, coeff = _theta_quadrature(self.prior, theta_nodes)
        tasks = [
            (pos, int(node), mu, trajectories, master_seed)
            for pos, node in enumerate(idx)
        ]
        eps = np.empty(len(tasks))
        se = np.empty(len(tasks))
        if self._pool is None:
            _pool_init(self.prior, self.table)
            results = map(_pool_node_error, tasks)
        else:
            results = self._pool.map(_pool_node_error, tasks)
        for pos, e, s in results:
            eps[pos] = e
            se[pos] = s
        value = float(coeff @ eps)
        stderr = float(np.sqrt((coeff**2) @ (se**2)))
        return value, stderr


def mse(
    prior: Prior,
    table: LikelihoodTable,
    mu: int,
    trajectories: int = DEFAULT_TRAJECTORIES,
    master_seed: int = 0,
    theta_nodes: int = DEFAULT_THETA_NODES,
    workspace: MseWorkspace | None = None,
) -> tuple[float, float]:
    """Prior-weighted mean square error of the posterior-mean strategy.

    Step 2 runs per true-phase node (Monte Carlo over trajectories), step 3
    is the deterministic prior quadrature. mu = 0 returns the prior variance
    exactly. Identical (config, seed) inputs give identical floats.
    """
    if workspace is not None:
        return workspace.mse(mu, trajectories, master_seed, theta_nodes)
    with MseWorkspace(prior, table, workers=1) as ws:
        return ws.mse(mu, trajectories, master_seed, theta_nodes)


def worker_count_from_env() -> int:
    """Worker override from PHASEMSE_WORKERS; affects speed only, never values."""
    raw = os.environ.get("PHASEMSE_WORKERS", "")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ParameterError(f"PHASEMSE_WORKERS={raw!r} is not an integer") from None


# --- intrinsic width ------------------------------------------------------------

DEFAULT_WIDTH_CANDIDATES = (
    2.0 * np.pi,
    np.pi,
    np.pi / 2.0,
    np.pi / 3.0,
    np.pi / 4.0,
    np.pi / 8.0,
)


def noon_width_candidates(nbar: float) -> tuple[float, ...]:
    """Parity-sensitive candidates pi/nbar and pi/(2 nbar) for NOON probes."""
    return (np.pi / nbar, np.pi / (2.0 * nbar))


def _count_peak_runs(mask: np.ndarray) -> int:
    if not mask.any():
        return 0
    m = mask.astype(np.int8)
    return int((np.diff(m) == 1).sum() + m[0])


def intrinsic_width(
    state: TwoModeState,
    gen: GeneratorSpec,
    candidates=None,
    mu_probe: int = 100,
    trials: int = 200,
    stream: RngTree | None = None,
    grid_nodes: int = 2049,
    threshold: float = UNIQUE_FRACTION,
    peak_tol: float = PEAK_TOL,
) -> IntrinsicWidthReport:
    """Widest flat prior that keeps the posterior single-peaked.

    For each candidate width W (descending), `trials` experiments draw a
    true phase uniformly in [0, W], simulate mu_probe outcomes and check
    whether the nodes within (1 - peak_tol) of the posterior maximum form
    a single connected run. The intrinsic width is the largest candidate
    whose unique-peak fraction reaches `threshold`; None if all fail.
    """
    if stream is None:
        raise ParameterError("a deterministic stream is required")
    if trials < 1 or mu_probe < 1:
        raise ParameterError("trials and mu_probe must be positive")
    if candidates is None:
        candidates = DEFAULT_WIDTH_CANDIDATES
    widths = sorted({float(w) for w in candidates}, reverse=True)
    if not widths or widths[-1] <= 0:
        raise ParameterError("candidate widths must be positive")
    log_keep = np.log1p(-peak_tol)
    fractions: dict[float, float] = {}
    found: float | None = None
    for ci, width in enumerate(widths):
        grid = simpson_grid(0.0, width, grid_nodes)
        table = likelihood_table(state, gen, grid)
        logp = _sentinel_log_probs(table)
        unique = 0
        for t in range(trials):
            rng = stream.child(ci, t).generator()
            theta_true = width * rng.random()
            idx = sample_outcome_indices(table, theta_true, mu_probe, rng)
            active, counts = np.unique(idx, return_counts=True)
            loglik = counts @ logp[active]  # flat prior: posterior ∝ likelihood
            mask = loglik >= loglik.max() + log_keep
            if _count_peak_runs(mask) == 1:
                unique += 1
        frac = unique / trials
        fractions[width] = frac
        if found is None and frac >= threshold:
            found = width
    return IntrinsicWidthReport(
        width=found,
        fractions=fractions,
        candidates=tuple(widths),
        mu_probe=mu_probe,
        trials=trials,
        threshold=threshold,
        peak_tol=peak_tol,
    )
