"""Probe-state constructors for the interferometric protocols.

All probes are pure states parameterized by a mean photon number and
built in the truncated Fock basis. The cutoff policy is uniform: the
truncated norm deficit must stay below DEFICIT_TOL, after which the
state is renormalized. Passing cutoff=None picks the smallest adequate
even cutoff automatically.

Families:

* coherent      |alpha/sqrt(2), -i alpha/sqrt(2)>, alpha = sqrt(nbar),
                i.e. a coherent state split on a balanced beam splitter
* noon          (|N,0> + |0,N>)/sqrt(2)
* tsv           two-mode product of squeezed vacua |r, r>, nbar = 2 sinh^2 r
* ses           N (|r,0> + |0,r>) with N = [2 + 2/cosh r]^(-1/2),
                nbar = 2 N^2 sinh^2 r
* delta         single mode, sqrt(1-delta)|0> + sqrt(delta)|N/delta>,
                nbar = N (N/delta must be an integer)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.stats import poisson

from .errors import ParameterError, TruncationError
from .fock import PHASE_DIFFERENCE, SINGLE_MODE, GeneratorSpec, TwoModeState

DEFICIT_TOL = 1e-10
FAMILIES = ("coherent", "noon", "tsv", "ses", "delta")


@dataclass(frozen=True)
class ProbeSpec:
    """Declarative probe description used by the runner and CLI."""

    family: str
    nbar: float | None = None
    N: float | None = None
    delta: float | None = None
    cutoff: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown probe family {self.family!r}")

    def label(self) -> str:
        if self.family == "noon":
            return f"noon_N{self.N:g}"
        if self.family == "delta":
            return f"delta_N{self.N:g}_d{self.delta:g}"
        return f"{self.family}_nbar{self.nbar:g}"


def build_probe(spec: ProbeSpec) -> tuple[TwoModeState, GeneratorSpec]:
    """Construct (state, generator) for a ProbeSpec."""
    if spec.family == "coherent":
        if spec.nbar is None:
            raise ParameterError("coherent probe requires nbar")
        return coherent_probe(spec.nbar, spec.cutoff), PHASE_DIFFERENCE
    if spec.family == "noon":
        if spec.N is None:
            raise ParameterError("noon probe requires N")
        return noon_probe(spec.N), PHASE_DIFFERENCE
    if spec.family == "tsv":
        if spec.nbar is None:
            raise ParameterError("tsv probe requires nbar")
        return tsv_probe(spec.nbar, spec.cutoff), PHASE_DIFFERENCE
    if spec.family == "ses":
        if spec.nbar is None:
            raise ParameterError("ses probe requires nbar")
        return ses_probe(spec.nbar, spec.cutoff), PHASE_DIFFERENCE
    if spec.N is None or spec.delta is None:
        raise ParameterError("delta probe requires N and delta")
    return delta_probe(spec.N, spec.delta), SINGLE_MODE


# --- coherent ------------------------------------------------------------------


def _coherent_mode_amplitudes(mean: float, n_max: int) -> np.ndarray:
    """Amplitudes beta^n e^{-|beta|^2/2}/sqrt(n!) for |beta|^2 = mean, beta real."""
    amps = np.empty(n_max + 1)
    amps[0] = math.exp(-0.5 * mean)
    beta = math.sqrt(mean)
    for n in range(1, n_max + 1):
        amps[n] = amps[n - 1] * beta / math.sqrt(n)
    return amps


def coherent_cutoff(nbar: float, tol: float = DEFICIT_TOL) -> int:
    """Smallest even total-photon cutoff with Poisson(nbar) tail below tol."""
    c = max(2, int(nbar))
    while poisson.sf(c, nbar) >= tol:
        c += 2
    return c + (c % 2)


def coherent_probe(nbar: float, cutoff: int | None = None) -> TwoModeState:
    """Coherent probe |alpha/sqrt(2), -i alpha/sqrt(2)> with alpha = sqrt(nbar)."""
    if nbar <= 0:
        raise ParameterError("coherent probe requires nbar > 0")
    if cutoff is None:
        cutoff = coherent_cutoff(nbar)
    deficit = float(poisson.sf(cutoff, nbar))
    if deficit >= DEFICIT_TOL:
        raise TruncationError(
            f"cutoff {cutoff} leaves norm deficit {deficit:.3e}", deficit=deficit
        )
    mode = _coherent_mode_amplitudes(nbar / 2.0, cutoff)
    amps: dict[tuple[int, int], complex] = {}
    for n1 in range(cutoff + 1):
        a1 = mode[n1]
        for n2 in range(cutoff + 1 - n1):
            # second arm carries the -i phase of the input beam splitter
            amps[(n1, n2)] = a1 * mode[n2] * (-1j) ** n2
    return TwoModeState(amps, cutoff).normalized()


# --- NOON ----------------------------------------------------------------------


def noon_probe(N: int) -> TwoModeState:
    """(|N,0> + |0,N>)/sqrt(2); exact at cutoff N."""
    if N < 1 or int(N) != N:
        raise ParameterError("noon probe requires integer N >= 1")
    N = int(N)
    s = 1.0 / math.sqrt(2.0)
    return TwoModeState({(N, 0): s, (0, N): s}, cutoff=N)


# --- squeezed families ----------------------------------------------------------


def squeezed_vacuum_amplitudes(r: float, k_max: int) -> np.ndarray:
    """Even-basis amplitudes of a single-mode squeezed vacuum.

    Entry k is the amplitude on Fock state 2k:
    (-tanh r)^k sqrt((2k)!) / (2^k k! sqrt(cosh r)).
    """
    amps = np.empty(k_max + 1)
    amps[0] = 1.0 / math.sqrt(math.cosh(r))
    t = math.tanh(r)
    for k in range(1, k_max + 1):
        amps[k] = amps[k - 1] * (-t) * math.sqrt((2 * k - 1) / (2.0 * k))
    return amps


def _invert_nbar(nbar_of_r, nbar: float) -> float:
    """Solve nbar_of_r(r) = nbar by bisection; nbar_of_r must be increasing."""
    lo, hi = 1e-12, 1.0
    while nbar_of_r(hi) < nbar:
        hi *= 2.0
        if hi > 64.0:
            raise ParameterError(f"no squeezing parameter reaches nbar={nbar}")
    return float(brentq(lambda r: nbar_of_r(r) - nbar, lo, hi, xtol=1e-14, rtol=1e-15))


def tsv_cutoff(r: float, tol: float = DEFICIT_TOL) -> int:
    """Smallest even cutoff keeping the two-mode squeezed-vacuum deficit below tol."""
    k_hi = 8
    while True:
        q = squeezed_vacuum_amplitudes(r, k_hi) ** 2
        joint = np.convolve(q, q)  # probability of k1 + k2 = m
        tail = 1.0 - np.cumsum(joint)
        for m in range(len(q)):  # trust only totals fully covered by k_hi
            if tail[m] < tol:
                return max(2, 2 * m)
        k_hi *= 2
        if k_hi > 4096:
            raise ParameterError("squeezing too strong for a practical cutoff")


def tsv_probe(nbar: float, cutoff: int | None = None) -> TwoModeState:
    """Two-mode squeezed-vacuum product |r, r> with nbar = 2 sinh^2 r."""
    if nbar <= 0:
        raise ParameterError("tsv probe requires nbar > 0")
    r = _invert_nbar(lambda x: 2.0 * math.sinh(x) ** 2, nbar)
    if cutoff is None:
        cutoff = tsv_cutoff(r)
    if cutoff < 2 or cutoff % 2 != 0:
        raise ParameterError("tsv cutoff must be even and >= 2")
    k_max = cutoff // 2
    s = squeezed_vacuum_amplitudes(r, k_max)
    q = s**2
    joint = np.convolve(q, q)
    deficit = float(1.0 - joint[: k_max + 1].sum())
    if deficit >= DEFICIT_TOL:
        raise TruncationError(
            f"cutoff {cutoff} leaves norm deficit {deficit:.3e}", deficit=deficit
        )
    amps: dict[tuple[int, int], complex] = {}
    for k1 in range(k_max + 1):
        for k2 in range(k_max + 1 - k1):
            amps[(2 * k1, 2 * k2)] = s[k1] * s[k2]
    return TwoModeState(amps, cutoff).normalized()


def ses_nbar_of_r(r: float) -> float:
    """Mean photon number of N(|r,0> + |0,r>): 2 N^2 sinh^2 r."""
    norm_sq = 1.0 / (2.0 + 2.0 / math.cosh(r))
    return 2.0 * norm_sq * math.sinh(r) ** 2


def ses_cutoff(r: float, tol: float = DEFICIT_TOL) -> int:
    """Smallest even cutoff for the superposition of single-arm squeezed vacua."""
    norm_sq = 1.0 / (2.0 + 2.0 / math.cosh(r))
    k_hi = 8
    while True:
        q = squeezed_vacuum_amplitudes(r, k_hi) ** 2
        tail = 2.0 * norm_sq * (1.0 - np.cumsum(q))
        idx = np.nonzero(tail < tol)[0]
        if idx.size and idx[0] < k_hi:
            return max(2, 2 * int(idx[0]))
        k_hi *= 2
        if k_hi > 8192:
            raise ParameterError("squeezing too strong for a practical cutoff")


def ses_probe(nbar: float, cutoff: int | None = None) -> TwoModeState:
    """Superposition of squeezed vacua across the arms, N(|r,0> + |0,r>)."""
    if nbar <= 0:
        raise ParameterError("ses probe requires nbar > 0")
    r = _invert_nbar(ses_nbar_of_r, nbar)
    if cutoff is None:
        cutoff = ses_cutoff(r)
    if cutoff < 2 or cutoff % 2 != 0:
        raise ParameterError("ses cutoff must be even and >= 2")
    k_max = cutoff // 2
    s = squeezed_vacuum_amplitudes(r, k_max)
    norm = 1.0 / math.sqrt(2.0 + 2.0 / math.cosh(r))
    deficit = float(2.0 * norm**2 * (1.0 - (s**2).sum()))
    if deficit >= DEFICIT_TOL:
        raise TruncationError(
            f"cutoff {cutoff} leaves norm deficit {deficit:.3e}", deficit=deficit
        )
    amps: dict[tuple[int, int], complex] = {(0, 0): 2.0 * norm * s[0]}
    for k in range(1, k_max + 1):
        amps[(2 * k, 0)] = norm * s[k]
        amps[(0, 2 * k)] = norm * s[k]
    return TwoModeState(amps, cutoff).normalized()


# --- delta family ---------------------------------------------------------------


def delta_probe(N: float, delta: float) -> TwoModeState:
    """Single-mode sqrt(1-delta)|0> + sqrt(delta)|N/delta>; nbar = N."""
    if N <= 0:
        raise ParameterError("delta probe requires N > 0")
    if not 0.0 < delta < 1.0:
        raise ParameterError("delta probe requires 0 < delta < 1")
    top = N / delta
    top_int = round(top)
    if abs(top - top_int) > 1e-9:
        raise ParameterError(f"N/delta = {top} is not an integer")
    top_int = int(top_int)
    amps = {
        (0, 0): complex(math.sqrt(1.0 - delta)),
        (top_int, 0): complex(math.sqrt(delta)),
    }
    return TwoModeState(amps, cutoff=top_int, mode_count=1)
