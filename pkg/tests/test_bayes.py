"""Bayesian pipeline: posterior updates, Monte Carlo error, intrinsic width."""

import numpy as np
import pytest
from scipy.integrate import quad

from phasemse import (
    PHASE_DIFFERENCE,
    InconsistencyError,
    MseWorkspace,
    Outcome,
    ParameterError,
    Posterior,
    RngTree,
    error_given_truth,
    flat_prior,
    intrinsic_width,
    likelihood_table,
    mse,
    noon_probe,
    noon_width_candidates,
    periodic_prior_error,
    posterior,
    posterior_mean,
    posterior_variance,
    prior_variance,
    worker_count_from_env,
)


@pytest.fixture(scope="module")
def noon1_setup():
    width = np.pi / 2
    prior = flat_prior(width, 513)
    table = likelihood_table(noon_probe(1), PHASE_DIFFERENCE, prior.grid)
    return prior, table


def test_flat_prior_normalization():
    prior = flat_prior(np.pi)
    total = float(prior.grid.weights @ prior.density)
    assert total == pytest.approx(1.0, abs=1e-12)
    assert prior_variance(prior) == pytest.approx(np.pi**2 / 12.0, rel=1e-10)


def test_periodic_prior_error_closed_form():
    for width in (0.3, 1.0, np.pi, 2.0 * np.pi):
        oracle = quad(lambda t: 2.0 * (1.0 - np.cos(t)) / width, -width / 2, width / 2)[0]
        assert periodic_prior_error(width) == pytest.approx(oracle, rel=1e-10)


def test_periodic_prior_error_limits():
    w = 1e-3
    assert periodic_prior_error(w) / (w**2 / 12.0) == pytest.approx(1.0, abs=1e-6)
    widths = np.linspace(2.0 * np.pi / 100.0, 2.0 * np.pi, 100)
    for w in widths:
        assert periodic_prior_error(w) <= w**2 / 12.0 + 1e-15
    with pytest.raises(ParameterError):
        periodic_prior_error(0.0)
    with pytest.raises(ParameterError):
        periodic_prior_error(7.0)


def test_posterior_single_noon1_outcome(noon1_setup):
    prior, table = noon1_setup
    post = posterior(prior, table, [Outcome(1, 0)])
    # flat prior on [0, W]: density proportional to the likelihood (1+sin t)/2
    nodes = prior.grid.nodes
    w = prior.grid.nodes[-1]
    norm = quad(lambda t: (1.0 + np.sin(t)) / 2.0, 0.0, w)[0] / w
    oracle = ((1.0 + np.sin(nodes)) / 2.0) / (w * norm)
    assert np.abs(post.density - oracle).max() < 1e-10

    mean = posterior_mean(post)
    num = quad(lambda t: t * (1.0 + np.sin(t)), 0.0, w)[0]
    den = quad(lambda t: 1.0 + np.sin(t), 0.0, w)[0]
    assert mean == pytest.approx(num / den, rel=1e-9)


def test_posterior_empty_sequence_is_prior(noon1_setup):
    prior, table = noon1_setup
    post = posterior(prior, table, [])
    assert np.abs(post.density - prior.density).max() < 1e-14


def test_posterior_rejects_unknown_outcome(noon1_setup):
    prior, table = noon1_setup
    with pytest.raises(InconsistencyError):
        posterior(prior, table, [Outcome(7, 7)])


def test_posterior_variance_gaussian_oracle():
    prior = flat_prior(2.0, 4097)
    nodes = prior.grid.nodes
    sigma, center = 0.05, 1.0
    density = np.exp(-0.5 * ((nodes - center) / sigma) ** 2)
    density /= prior.grid.weights @ density
    post = Posterior(grid=prior.grid, density=density)
    assert posterior_variance(post) == pytest.approx(sigma**2, rel=1e-6)


def test_error_given_truth_zero_observations(noon1_setup):
    prior, table = noon1_setup
    val, err = error_given_truth(prior, table, 0.3, 0, stream=RngTree(1).child(0))
    assert val == pytest.approx(prior_variance(prior), rel=1e-12)
    assert err == 0.0


def test_error_given_truth_matches_enumeration(noon1_setup):
    # mu = 1 admits exhaustive averaging over both outcomes
    prior, table = noon1_setup
    theta = float(prior.grid.nodes[200])
    exact = 0.0
    for k, outcome in enumerate(table.outcomes):
        p = table.probs[k, 200]
        exact += p * posterior_variance(posterior(prior, table, [outcome]))
    val, err = error_given_truth(
        prior, table, theta, 1, trajectories=4000, stream=RngTree(11).child(3)
    )
    assert abs(val - exact) < 3.0 * err
    assert err < 0.05 * exact + 1e-12


def test_error_given_truth_validation(noon1_setup):
    prior, table = noon1_setup
    with pytest.raises(ParameterError):
        error_given_truth(prior, table, 0.3, 1, trajectories=1, stream=RngTree(1))
    with pytest.raises(ParameterError):
        error_given_truth(prior, table, 0.3, 1)  # stream required when mu > 0


def test_mse_zero_observations_is_prior_variance(noon1_setup):
    prior, table = noon1_setup
    val, err = mse(prior, table, 0, trajectories=10, master_seed=0)
    assert val == pytest.approx(prior_variance(prior), rel=1e-10)
    assert err == 0.0


def test_mse_brute_force_single_shot(noon1_setup):
    # exhaustive two-outcome average, prior-weighted, vs the Monte Carlo path
    prior, table = noon1_setup
    grid = prior.grid
    eps = np.zeros(grid.size)
    for j in range(grid.size):
        for k, outcome in enumerate(table.outcomes):
            eps[j] += table.probs[k, j] * posterior_variance(
                posterior(prior, table, [outcome])
            )
    exact = float(grid.weights @ (prior.density * eps))
    val, err = mse(prior, table, 1, trajectories=3000, master_seed=42, theta_nodes=25)
    assert abs(val - exact) < 4.0 * err + 1e-6


def test_mse_decreases_with_observations(noon1_setup):
    prior, table = noon1_setup
    vals = []
    for mu in (1, 4, 16):
        v, _ = mse(prior, table, mu, trajectories=400, master_seed=3, theta_nodes=15)
        vals.append(v)
    assert vals[0] > vals[1] > vals[2]


def test_mse_deterministic_across_workers(noon1_setup):
    prior, table = noon1_setup
    a = MseWorkspace(prior, table, workers=1).mse(3, 200, 7, 15)
    b = MseWorkspace(prior, table, workers=2).mse(3, 200, 7, 15)
    assert a == b


def test_mse_plateau_above_intrinsic_width():
    # NOON N=2 statistics repeat with period pi, so a 2 pi prior never
    # localizes and the error stalls far above 1/(mu F)
    prior = flat_prior(2.0 * np.pi, 513)
    table = likelihood_table(noon_probe(2), PHASE_DIFFERENCE, prior.grid)
    val, err = mse(prior, table, 1000, trajectories=60, master_seed=5, theta_nodes=11)
    assert val > 0.3
    assert val > 100.0 / (1000.0 * 4.0)


def test_intrinsic_width_noon1_and_validation():
    state = noon_probe(1)
    report = intrinsic_width(
        state,
        PHASE_DIFFERENCE,
        candidates=(np.pi, np.pi / 2, np.pi / 4),
        trials=60,
        stream=RngTree(17).child(0),
        grid_nodes=513,
    )
    assert report.width == pytest.approx(np.pi / 2)
    assert report.fractions[np.pi / 2] >= 0.95
    assert report.fractions[np.pi] < 0.95
    with pytest.raises(ParameterError):
        intrinsic_width(state, PHASE_DIFFERENCE, candidates=(np.pi,), trials=60)


def test_noon_width_candidates():
    assert noon_width_candidates(2.0) == (np.pi / 2.0, np.pi / 4.0)


def test_worker_count_from_env(monkeypatch):
    monkeypatch.delenv("PHASEMSE_WORKERS", raising=False)
    assert worker_count_from_env() == 1
    monkeypatch.setenv("PHASEMSE_WORKERS", "3")
    assert worker_count_from_env() == 3
    monkeypatch.setenv("PHASEMSE_WORKERS", "zero")
    with pytest.raises(ParameterError):
        worker_count_from_env()
