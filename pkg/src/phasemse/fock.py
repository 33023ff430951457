"""Truncated two-mode Fock-space states and the interferometer primitives.

States are sparse maps from occupation pairs (n1, n2) to complex
amplitudes, truncated at a total photon number cutoff. Two operations
generate the whole protocol:

* phase encoding  U(theta) = exp(-i G theta), diagonal in the Fock
  basis, with G = (n1 - n2)/2 for the two-mode phase difference or
  G = n for a single mode;
* a balanced beam splitter  exp[-i (a1^dag a2 + a2^dag a1) pi/4],
  block diagonal over total-photon-number sectors. Each (N+1)x(N+1)
  sector block is built once from the eigendecomposition of the
  tridiagonal sector generator and cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConfigurationError, NumericalError, ParameterError

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class GeneratorSpec:
    """Phase-encoding generator: its eigenvalue g(n1, n2) is diagonal in Fock."""

    kind: str  # "phase_difference" (two-mode) or "single_mode"

    def __post_init__(self):
        if self.kind not in ("phase_difference", "single_mode"):
            raise ParameterError(f"unknown generator kind {self.kind!r}")

    @property
    def mode_count(self) -> int:
        return 2 if self.kind == "phase_difference" else 1

    def eigenvalue(self, n1: int, n2: int) -> float:
        if self.kind == "phase_difference":
            return 0.5 * (n1 - n2)
        return float(n1)


PHASE_DIFFERENCE = GeneratorSpec("phase_difference")
SINGLE_MODE = GeneratorSpec("single_mode")


@dataclass(frozen=True)
class TwoModeState:
    """Sparse pure state over occupation pairs, truncated at `cutoff` total photons.

    Treated as immutable: operations return new states. `mode_count` is 1
    for single-mode states (second occupation pinned to 0).
    """

    amplitudes: dict[tuple[int, int], complex]
    cutoff: int
    mode_count: int = 2

    def __post_init__(self):
        if self.mode_count not in (1, 2):
            raise ParameterError("mode_count must be 1 or 2")
        if self.cutoff < 0:
            raise ParameterError("cutoff must be non-negative")
        for (n1, n2) in self.amplitudes:
            if n1 < 0 or n2 < 0 or n1 + n2 > self.cutoff:
                raise ParameterError(f"occupation {(n1, n2)} outside cutoff {self.cutoff}")
            if self.mode_count == 1 and n2 != 0:
                raise ParameterError("single-mode state with occupation in mode 2")

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(c) ** 2 for c in self.amplitudes.values())))

    def normalized(self) -> "TwoModeState":
        n = self.norm()
        if n == 0.0:
            raise ParameterError("cannot normalize the zero state")
        return TwoModeState(
            {k: v / n for k, v in self.amplitudes.items()}, self.cutoff, self.mode_count
        )


def inner(a: TwoModeState, b: TwoModeState) -> complex:
    """<a|b>; cutoffs may differ, missing entries count as zero."""
    if a.mode_count != b.mode_count:
        raise ConfigurationError("inner product between different mode counts")
    small, large = (a, b) if len(a.amplitudes) <= len(b.amplitudes) else (b, a)
    acc = 0.0 + 0.0j
    if small is a:
        for k, va in a.amplitudes.items():
            vb = b.amplitudes.get(k)
            if vb is not None:
                acc += np.conj(va) * vb
    else:
        for k, vb in b.amplitudes.items():
            va = a.amplitudes.get(k)
            if va is not None:
                acc += np.conj(va) * vb
    return complex(acc)


def _check_generator(state: TwoModeState, gen: GeneratorSpec) -> None:
    if gen.mode_count != state.mode_count:
        raise ConfigurationError(
            f"generator {gen.kind!r} incompatible with a {state.mode_count}-mode state"
        )


def apply_phase(state: TwoModeState, gen: GeneratorSpec, theta: float) -> TwoModeState:
    """exp(-i G theta)|psi>: multiply each amplitude by exp(-i g theta)."""
    _check_generator(state, gen)
    amps = {
        k: v * complex(np.exp(-1j * gen.eigenvalue(*k) * theta))
        for k, v in state.amplitudes.items()
    }
    return TwoModeState(amps, state.cutoff, state.mode_count)


def generator_moments(state: TwoModeState, gen: GeneratorSpec) -> tuple[float, float]:
    """(mean, variance) of the generator in `state`. Variance clamped at 0."""
    _check_generator(state, gen)
    m1 = 0.0
    m2 = 0.0
    for k, v in state.amplitudes.items():
        p = abs(v) ** 2
        g = gen.eigenvalue(*k)
        m1 += p * g
        m2 += p * g * g
    var = m2 - m1 * m1
    return m1, max(var, 0.0)


def generator_spectrum(state: TwoModeState, gen: GeneratorSpec) -> tuple[np.ndarray, np.ndarray]:
    """Distinct generator eigenvalues and their total probability weights.

    The encoded-state overlap is the characteristic function of this
    distribution: <psi|exp(-i G theta)|psi> = sum_g w_g exp(-i g theta).
    """
    _check_generator(state, gen)
    acc: dict[float, float] = {}
    for k, v in state.amplitudes.items():
        g = gen.eigenvalue(*k)
        acc[g] = acc.get(g, 0.0) + abs(v) ** 2
    gs = np.array(sorted(acc))
    ws = np.array([acc[g] for g in gs])
    return gs, ws


def mean_photons(state: TwoModeState) -> float:
    return float(sum(abs(v) ** 2 * (k[0] + k[1]) for k, v in state.amplitudes.items()))


# --- balanced beam splitter ---------------------------------------------------

_SECTOR_CACHE: dict[int, np.ndarray] = {}


def beam_splitter_sector(total: int) -> np.ndarray:
    """Unitary block of the 50:50 beam splitter on the N-photon sector.

    Basis ordered by n1 = 0..N (occupations (n1, N-n1)). The sector
    generator a1^dag a2 + a2^dag a1 is real symmetric tridiagonal with
    off-diagonal sqrt((i+1)(N-i)); the block is V exp(-i pi/4 lambda) V^T.
    """
    if total < 0:
        raise ParameterError("sector index must be non-negative")
    block = _SECTOR_CACHE.get(total)
    if block is not None:
        return block
    if total == 0:
        block = np.array([[1.0 + 0.0j]])
    else:
        n = total + 1
        off = np.sqrt(np.arange(1, n) * np.arange(total, 0, -1.0))
        lam, vec = eigh_tridiagonal(np.zeros(n), off)
        block = (vec * np.exp(-1j * (np.pi / 4.0) * lam)) @ vec.T
        defect = np.abs(block @ block.conj().T - np.eye(n)).max()
        if defect > UNITARITY_TOL:
            raise NumericalError(f"sector {total} block not unitary (defect {defect:.2e})")
    _SECTOR_CACHE[total] = block
    return block


def apply_beam_splitter(state: TwoModeState) -> TwoModeState:
    """Balanced beam splitter on a two-mode state, sector by sector."""
    if state.mode_count != 2:
        raise ConfigurationError("beam splitter requires a two-mode state")
    sectors: dict[int, np.ndarray] = {}
    for (n1, n2), v in state.amplitudes.items():
        total = n1 + n2
        vec = sectors.get(total)
        if vec is None:
            vec = np.zeros(total + 1, dtype=complex)
            sectors[total] = vec
        vec[n1] = v
    out: dict[tuple[int, int], complex] = {}
    for total, vec in sectors.items():
        res = beam_splitter_sector(total) @ vec
        for n1 in range(total + 1):
            out[(n1, total - n1)] = complex(res[n1])
    return TwoModeState(out, state.cutoff, state.mode_count)
