"""Fock-layer checks: state hygiene, phase action, beam splitter blocks."""

import numpy as np
import pytest

from phasemse import (
    PHASE_DIFFERENCE,
    SINGLE_MODE,
    ConfigurationError,
    GeneratorSpec,
    ParameterError,
    TwoModeState,
    apply_beam_splitter,
    apply_phase,
    generator_moments,
    inner,
    mean_photons,
)
from phasemse.fock import beam_splitter_sector, generator_spectrum

INV_SQRT2 = 1.0 / np.sqrt(2.0)


def single_photon():
    return TwoModeState({(1, 0): 1.0}, cutoff=1)


def test_state_rejects_bad_occupations():
    with pytest.raises(ParameterError):
        TwoModeState({(-1, 0): 1.0}, cutoff=2)
    with pytest.raises(ParameterError):
        TwoModeState({(2, 2): 1.0}, cutoff=3)
    with pytest.raises(ParameterError):
        TwoModeState({(0, 1): 1.0}, cutoff=2, mode_count=1)
    with pytest.raises(ParameterError):
        TwoModeState({(0, 0): 1.0}, cutoff=-1)


def test_normalized_and_norm():
    state = TwoModeState({(1, 0): 2.0, (0, 1): 2.0j}, cutoff=1)
    assert state.norm() == pytest.approx(np.sqrt(8.0))
    unit = state.normalized()
    assert unit.norm() == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ParameterError):
        TwoModeState({(0, 0): 0.0}, cutoff=0).normalized()


def test_inner_product():
    a = TwoModeState({(1, 0): INV_SQRT2, (0, 1): INV_SQRT2}, cutoff=1)
    b = TwoModeState({(1, 0): INV_SQRT2, (0, 1): -INV_SQRT2}, cutoff=1)
    assert inner(a, a) == pytest.approx(1.0)
    assert inner(a, b) == pytest.approx(0.0, abs=1e-15)
    # conjugate-linear in the first slot
    c = TwoModeState({(1, 0): 1.0j}, cutoff=1)
    assert inner(c, single_photon()) == pytest.approx(-1.0j)


def test_generator_eigenvalues():
    assert PHASE_DIFFERENCE.eigenvalue(3, 1) == pytest.approx(1.0)
    assert PHASE_DIFFERENCE.eigenvalue(0, 2) == pytest.approx(-1.0)
    assert SINGLE_MODE.eigenvalue(4, 0) == pytest.approx(4.0)
    with pytest.raises(ParameterError):
        GeneratorSpec("both_modes")


def test_apply_phase_multiplies_eigenphases():
    state = TwoModeState({(2, 0): INV_SQRT2, (0, 2): INV_SQRT2}, cutoff=2)
    theta = 0.7
    rotated = apply_phase(state, PHASE_DIFFERENCE, theta)
    # g = +1 and -1 for the two components
    assert rotated.amplitudes[(2, 0)] == pytest.approx(INV_SQRT2 * np.exp(-1j * theta))
    assert rotated.amplitudes[(0, 2)] == pytest.approx(INV_SQRT2 * np.exp(+1j * theta))
    # overlap with the input is the characteristic function of g
    assert inner(state, rotated) == pytest.approx(np.cos(theta))


def test_apply_phase_mode_mismatch():
    with pytest.raises(ConfigurationError):
        apply_phase(single_photon(), SINGLE_MODE, 0.1)


def test_generator_moments_and_spectrum():
    state = TwoModeState({(2, 0): INV_SQRT2, (0, 2): INV_SQRT2}, cutoff=2)
    mean, var = generator_moments(state, PHASE_DIFFERENCE)
    assert mean == pytest.approx(0.0, abs=1e-15)
    assert var == pytest.approx(1.0)
    gs, ws = generator_spectrum(state, PHASE_DIFFERENCE)
    assert np.allclose(gs, [-1.0, 1.0])
    assert np.allclose(ws, [0.5, 0.5])
    assert ws.sum() == pytest.approx(1.0)


def test_mean_photons():
    state = TwoModeState({(1, 0): 0.6, (1, 2): 0.8}, cutoff=3)
    assert mean_photons(state) == pytest.approx(0.36 * 1 + 0.64 * 3)


def test_beam_splitter_single_photon():
    out = apply_beam_splitter(single_photon())
    assert out.amplitudes[(1, 0)] == pytest.approx(INV_SQRT2)
    assert out.amplitudes[(0, 1)] == pytest.approx(-1j * INV_SQRT2)


def test_beam_splitter_hong_ou_mandel():
    # |1,1> has no (1,1) component after a balanced splitter
    out = apply_beam_splitter(TwoModeState({(1, 1): 1.0}, cutoff=2))
    assert abs(out.amplitudes[(1, 1)]) < 1e-14
    assert abs(out.amplitudes[(2, 0)]) ** 2 == pytest.approx(0.5)
    assert abs(out.amplitudes[(0, 2)]) ** 2 == pytest.approx(0.5)


@pytest.mark.parametrize("total", [0, 1, 2, 5, 17, 40])
def test_beam_splitter_sector_unitary(total):
    block = beam_splitter_sector(total)
    eye = np.eye(total + 1)
    assert np.abs(block @ block.conj().T - eye).max() < 1e-12


def test_beam_splitter_preserves_norm_and_sector():
    rng = np.random.default_rng(7)
    raw = {
        (n1, n2): complex(*rng.normal(size=2))
        for n1 in range(4)
        for n2 in range(4 - n1)
    }
    state = TwoModeState(raw, cutoff=3).normalized()
    out = apply_beam_splitter(state)
    assert out.norm() == pytest.approx(1.0, abs=1e-12)
    # photon number is conserved sector by sector
    for total in range(4):
        mass_in = sum(
            abs(v) ** 2 for (n1, n2), v in state.amplitudes.items() if n1 + n2 == total
        )
        mass_out = sum(
            abs(v) ** 2 for (n1, n2), v in out.amplitudes.items() if n1 + n2 == total
        )
        assert mass_out == pytest.approx(mass_in, abs=1e-12)


def test_beam_splitter_rejects_single_mode():
    with pytest.raises(ConfigurationError):
        apply_beam_splitter(TwoModeState({(1, 0): 1.0}, cutoff=1, mode_count=1))
