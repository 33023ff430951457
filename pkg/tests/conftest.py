"""Shared fixtures: the five benchmark probes and small likelihood tables.

Session scope keeps the expensive pieces (SES/TSV tables) built once.
"""

import numpy as np
import pytest

from phasemse import ProbeSpec, build_probe, flat_prior, likelihood_table

BENCH_SPECS = {
    "coherent_nbar2": ProbeSpec(family="coherent", nbar=2.0),
    "noon_N2": ProbeSpec(family="noon", N=2),
    "noon_N1": ProbeSpec(family="noon", N=1),
    "tsv_nbar2": ProbeSpec(family="tsv", nbar=2.0),
    "ses_nbar2": ProbeSpec(family="ses", nbar=2.0),
}

# intrinsic prior widths used throughout the tests
BENCH_WIDTHS = {
    "coherent_nbar2": np.pi,
    "noon_N2": np.pi / 2,
    "noon_N1": np.pi / 2,
    "tsv_nbar2": np.pi / 2,
    "ses_nbar2": np.pi / 2,
}


@pytest.fixture(scope="session")
def probes():
    return {name: build_probe(spec) for name, spec in BENCH_SPECS.items()}


@pytest.fixture(scope="session")
def small_tables(probes):
    """Likelihood tables on a 513-node grid over each probe's intrinsic width."""
    out = {}
    for name, (state, gen) in probes.items():
        grid = flat_prior(BENCH_WIDTHS[name], 513).grid
        out[name] = likelihood_table(state, gen, grid)
    return out
