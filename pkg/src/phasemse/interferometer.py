"""Photon-counting measurement after the recombining beam splitter.

The measured distribution is p(n1, n2 | theta) = |<n1, n2| B U(theta) |psi>|^2.
Both U(theta) and B preserve the total photon number, so the computation
factorizes over sectors: within sector N the encoded input vector picks up
diagonal phases exp(-i g theta) and is then rotated by the cached sector
block. `likelihood_table` evaluates all outcome probabilities on a full
phase grid at once (one BLAS product per sector), which is the workhorse
behind every Bayesian update in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError, NumericalError, RangeError, ParameterError
from .fock import GeneratorSpec, TwoModeState, beam_splitter_sector, generator_spectrum
from .grid import PhaseGrid

OUTCOME_FLOOR = 1e-12
COLUMN_SUM_TOL = 1e-8


class Outcome(NamedTuple):
    n1: int
    n2: int


@dataclass(frozen=True)
class LikelihoodTable:
    """Outcome probabilities tabulated over a phase grid.

    probs[i, j] = p(outcomes[i] | grid.nodes[j]). Outcomes whose probability
    stays below OUTCOME_FLOOR across the whole grid are dropped; the largest
    per-column mass discarded that way is recorded in tail_mass.

    Each outcome amplitude is a trigonometric polynomial in theta, so its
    derivative is available in closed form: dprobs holds dp/dtheta and
    dlimit holds |dc/dtheta|^2, whose quadruple is the p -> 0 limit of the
    Fisher term (dp)^2/p at simple zeros of the amplitude c.
    """

    grid: PhaseGrid
    outcomes: tuple[Outcome, ...]
    probs: np.ndarray
    dprobs: np.ndarray
    dlimit: np.ndarray
    tail_mass: float
    index: dict[Outcome, int] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        shape = (len(self.outcomes), self.grid.size)
        for name in ("probs", "dprobs", "dlimit"):
            if getattr(self, name).shape != shape:
                raise ParameterError(f"{name} matrix shape mismatch")
        if not self.index:
            object.__setattr__(
                self, "index", {o: i for i, o in enumerate(self.outcomes)}
            )

    @property
    def log_probs(self) -> np.ndarray:
        cached = getattr(self, "_log_probs", None)
        if cached is None:
            with np.errstate(divide="ignore"):
                cached = np.log(self.probs)
            object.__setattr__(self, "_log_probs", cached)
        return cached

    def column_sums(self) -> np.ndarray:
        return self.probs.sum(axis=0)


def _sector_vectors(state: TwoModeState, gen: GeneratorSpec):
    """Group amplitudes by total photon number: (total, n1 indices, amps, g)."""
    sectors: dict[int, list[tuple[int, complex]]] = {}
    for (n1, n2), v in state.amplitudes.items():
        sectors.setdefault(n1 + n2, []).append((n1, v))
    out = []
    for total in sorted(sectors):
        entries = sorted(sectors[total])
        idx = np.array([e[0] for e in entries])
        amp = np.array([e[1] for e in entries], dtype=complex)
        gvals = np.array([gen.eigenvalue(n1, total - n1) for n1 in idx])
        out.append((total, idx, amp, gvals))
    return out


def _sector_probs(total, idx, amp, gvals, thetas: np.ndarray):
    """Probabilities and exact theta-derivatives for one total-photon sector.

    c(n1, theta) = B[n1, idx] @ (amp e^{-ig theta}); returns |c|^2, the
    derivative d|c|^2/dtheta = 2 Re(c* dc) and |dc|^2 (the Fisher-term limit
    at zeros of c), all shaped (total+1, len(thetas)).
    """
    block_cols = beam_splitter_sector(total)[:, idx]
    phased = amp[:, None] * np.exp(-1j * np.outer(gvals, thetas))
    out_amp = block_cols @ phased
    d_amp = block_cols @ (-1j * gvals[:, None] * phased)
    probs = out_amp.real**2 + out_amp.imag**2
    dprobs = 2.0 * (out_amp.real * d_amp.real + out_amp.imag * d_amp.imag)
    dlimit = d_amp.real**2 + d_amp.imag**2
    return probs, dprobs, dlimit


def outcome_distribution(
    state: TwoModeState, gen: GeneratorSpec, theta: float
) -> dict[Outcome, float]:
    """Full photon-counting distribution at a single phase."""
    if state.mode_count != 2:
        raise ConfigurationError("photon-counting pipeline requires a two-mode probe")
    if gen.mode_count != 2:
        raise ConfigurationError("photon-counting pipeline requires the two-mode generator")
    dist: dict[Outcome, float] = {}
    thetas = np.array([theta], dtype=float)
    for total, idx, amp, gvals in _sector_vectors(state, gen):
        probs = _sector_probs(total, idx, amp, gvals, thetas)[0][:, 0]
        for n1 in range(total + 1):
            dist[Outcome(n1, total - n1)] = float(probs[n1])
    return dist


def likelihood_table(
    state: TwoModeState, gen: GeneratorSpec, grid: PhaseGrid
) -> LikelihoodTable:
    """Tabulate p(outcome | theta) for every grid node.

    Every column must account for all probability: the pre-trim column sums
    are checked against 1 to COLUMN_SUM_TOL, which catches truncation and
    unitarity defects at once.
    """
    if state.mode_count != 2 or gen.mode_count != 2:
        raise ConfigurationError("photon-counting pipeline requires a two-mode probe")
    if grid.lower < -1e-12 or grid.upper > 2.0 * np.pi + 1e-12:
        raise RangeError("phase grid must stay inside one 2*pi period")
    thetas = grid.nodes
    rows: list[np.ndarray] = []
    drows: list[np.ndarray] = []
    lrows: list[np.ndarray] = []
    outcome_list: list[Outcome] = []
    col_sums = np.zeros(grid.size)
    for total, idx, amp, gvals in _sector_vectors(state, gen):
        probs, dprobs, dlimit = _sector_probs(total, idx, amp, gvals, thetas)
        col_sums += probs.sum(axis=0)
        keep = probs.max(axis=1) > OUTCOME_FLOOR
        for n1 in np.nonzero(keep)[0]:
            outcome_list.append(Outcome(int(n1), int(total - n1)))
        rows.append(probs[keep])
        drows.append(dprobs[keep])
        lrows.append(dlimit[keep])
    defect = float(np.abs(col_sums - 1.0).max())
    if defect > COLUMN_SUM_TOL:
        raise NumericalError(
            f"likelihood columns deviate from 1 by {defect:.3e}",
            diagnostics={"max_column_defect": defect},
        )
    probs = np.vstack(rows)
    tail = float((col_sums - probs.sum(axis=0)).max())
    return LikelihoodTable(
        grid=grid,
        outcomes=tuple(outcome_list),
        probs=probs,
        dprobs=np.vstack(drows),
        dlimit=np.vstack(lrows),
        tail_mass=max(tail, 0.0),
    )


# --- sampling -------------------------------------------------------------------


def _node_cdf(table: LikelihoodTable, node: int) -> np.ndarray:
    cdf = np.cumsum(table.probs[:, node])
    total = cdf[-1]
    if total <= 0.0:
        raise NumericalError("empty outcome distribution at grid node")
    return cdf / total

def sample_outcome_indices(
    table: LikelihoodTable, theta_true: float, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Indices into table.outcomes for `count` independent shots at theta_true.

    theta_true is mapped to the nearest grid node; inverse-CDF sampling keeps
    a fixed draw order so results depend only on the stream, not scheduling.
    """
    if count < 0:
        raise ParameterError("sample count must be non-negative")
    node = table.grid.nearest_index(theta_true)
    cdf = _node_cdf(table, node)
    u = rng.random(count)
    return np.searchsorted(cdf, u, side="right").clip(max=len(cdf) - 1)


def sample_outcomes(
    table: LikelihoodTable, theta_true: float, count: int, rng: np.random.Generator
) -> list[Outcome]:
    """Simulate `count` photon-counting shots at the true phase theta_true."""
    idx = sample_outcome_indices(table, theta_true, count, rng)
    return [table.outcomes[i] for i in idx]


# --- fidelity -------------------------------------------------------------------


def fidelity(state: TwoModeState, gen: GeneratorSpec, theta) -> complex | np.ndarray:
    """Overlap <psi| U(theta) |psi> = sum_g w_g exp(-i g theta).

    Accepts a scalar or an array of phases. This is the characteristic
    function of the generator distribution, so |f| <= 1 with f(0) = 1.
    """
    gs, ws = generator_spectrum(state, gen)
    th = np.asarray(theta, dtype=float)
    vals = (ws[:, None] * np.exp(-1j * np.outer(gs, th.ravel()))).sum(axis=0)
    if th.ndim == 0:
        return complex(vals[0])
    return vals.reshape(th.shape)


def fidelity_function(state: TwoModeState, gen: GeneratorSpec):
    """Callable theta -> <psi|U(theta)|psi>, precomputing the generator spectrum."""
    gs, ws = generator_spectrum(state, gen)

    def f(theta):
        th = np.asarray(theta, dtype=float)
        vals = (ws[:, None] * np.exp(-1j * np.outer(gs, th.ravel()))).sum(axis=0)
        if th.ndim == 0:
            return complex(vals[0])
        return vals.reshape(th.shape)

    return f
