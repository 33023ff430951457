"""Exact Bayesian error analysis for optical phase estimation protocols.

Simulates photon-counting interferometry on truncated Fock spaces, computes
the Bayesian mean square error of the posterior-mean strategy for any number
of observations, and compares it against the quantum Cramér-Rao, Ziv-Zakai
and Weiss-Weinstein benchmarks.
"""

from .bayes import (
    DEFAULT_WIDTH_CANDIDATES,
    IntrinsicWidthReport,
    MseWorkspace,
    Posterior,
    Prior,
    asymptotic_normality_report,
    error_given_truth,
    flat_prior,
    intrinsic_width,
    mse,
    noon_width_candidates,
    periodic_prior_error,
    posterior,
    posterior_mean,
    posterior_variance,
    prior_variance,
    worker_count_from_env,
)
from .bounds import (
    MseCurve,
    cfi,
    cfi_profile,
    delta_state_min_observations,
    min_observations,
    mu_threshold,
    qcrb,
    qfi,
    relative_error,
    wwb,
    zzb,
)
from .errors import (
    ConfigurationError,
    InconsistencyError,
    NumericalError,
    ParameterError,
    PhaseEstimationError,
    RangeError,
    TruncationError,
    UnsupportedOperationError,
)
from .fock import (
    PHASE_DIFFERENCE,
    SINGLE_MODE,
    GeneratorSpec,
    TwoModeState,
    apply_beam_splitter,
    apply_phase,
    generator_moments,
    inner,
    mean_photons,
)
from .grid import PhaseGrid, gauss_legendre_nodes, simpson_grid
from .interferometer import (
    LikelihoodTable,
    Outcome,
    fidelity,
    fidelity_function,
    likelihood_table,
    outcome_distribution,
    sample_outcomes,
)
from .probes import (
    ProbeSpec,
    build_probe,
    coherent_probe,
    delta_probe,
    noon_probe,
    ses_probe,
    tsv_probe,
)
from .runner import (
    ExperimentConfig,
    ResultBundle,
    Table1Result,
    build_curve,
    find_intrinsic_width,
    load_config,
    mu_schedule,
    parse_config,
    reproduce_table1,
    run_experiment,
)
from .streams import RngTree

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "DEFAULT_WIDTH_CANDIDATES",
    "ExperimentConfig",
    "GeneratorSpec",
    "InconsistencyError",
    "IntrinsicWidthReport",
    "LikelihoodTable",
    "MseCurve",
    "MseWorkspace",
    "NumericalError",
    "Outcome",
    "PHASE_DIFFERENCE",
    "ParameterError",
    "PhaseEstimationError",
    "PhaseGrid",
    "Posterior",
    "Prior",
    "ProbeSpec",
    "RangeError",
    "ResultBundle",
    "RngTree",
    "SINGLE_MODE",
    "Table1Result",
    "TruncationError",
    "TwoModeState",
    "UnsupportedOperationError",
    "apply_beam_splitter",
    "apply_phase",
    "asymptotic_normality_report",
    "build_curve",
    "build_probe",
    "cfi",
    "cfi_profile",
    "coherent_probe",
    "delta_probe",
    "delta_state_min_observations",
    "error_given_truth",
    "fidelity",
    "fidelity_function",
    "find_intrinsic_width",
    "flat_prior",
    "gauss_legendre_nodes",
    "generator_moments",
    "inner",
    "intrinsic_width",
    "likelihood_table",
    "load_config",
    "mean_photons",
    "min_observations",
    "mse",
    "mu_schedule",
    "mu_threshold",
    "noon_probe",
    "noon_width_candidates",
    "outcome_distribution",
    "parse_config",
    "periodic_prior_error",
    "posterior",
    "posterior_mean",
    "posterior_variance",
    "prior_variance",
    "qcrb",
    "qfi",
    "relative_error",
    "reproduce_table1",
    "run_experiment",
    "sample_outcomes",
    "ses_probe",
    "tsv_probe",
    "worker_count_from_env",
    "wwb",
    "zzb",
]
