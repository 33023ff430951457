"""Estimation-theory benchmarks for the exact Bayesian error.

Three references are computed for each observation count mu:

* the quantum Cramer-Rao bound 1/(mu F_q), with F_q = 4 Var(G) for pure
  probes under unitary encoding;
* the Ziv-Zakai bound, a quadrature over the minimum-error probability
  of distinguishing two displaced hypotheses, valid for any mu;
* the Weiss-Weinstein bound, a supremum over a single test displacement,
  evaluated on a dense search grid.

Both Bayesian bounds only need the encoded-state overlap f(theta); mu-th
powers are taken in log space so arbitrarily large observation counts
remain well conditioned.

The classical Fisher information of the photon-counting measurement comes
from the likelihood table's exact phase derivatives. For path-symmetric
probes it must reproduce F_q at every phase, which is the package's main
cross-check between the measurement pipeline and the analytic side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError, RangeError
from .fock import GeneratorSpec, TwoModeState, generator_moments
from .grid import simpson_grid
from .interferometer import LikelihoodTable

DERIVATIVE_FLOOR = 1e-10
ZZB_MIN_NODES = 2049
WWB_SEARCH_POINTS = 4096
WWB_SINGULAR = 1e-14


def qfi(state: TwoModeState, gen: GeneratorSpec) -> float:
    """Quantum Fisher information 4 Var(G) of a pure probe."""
    _, var = generator_moments(state, gen)
    return 4.0 * var


def qcrb(fisher: float, mu: int) -> float:
    """Quantum Cramer-Rao bound 1/(mu F)."""
    if fisher <= 0:
        raise ParameterError("fisher information must be positive")
    if mu < 1:
        raise ParameterError("qcrb requires mu >= 1")
    return 1.0 / (mu * fisher)


def _cfi_terms(p: np.ndarray, dp: np.ndarray, lim: np.ndarray) -> np.ndarray:
    """Fisher summand (dp/dtheta)^2 / p for each (outcome, node).

    The derivatives are exact (the table carries them), so the only care
    needed is at interference zeros: where p dips under DERIVATIVE_FLOOR
    the summand is replaced by its continuity limit 4 |dc/dtheta|^2, the
    value p'^2/p approaches at a simple zero of the outcome amplitude c.
    """
    safe = p > DERIVATIVE_FLOOR
    with np.errstate(divide="ignore", invalid="ignore"):
        main = np.where(safe, dp * dp / np.where(safe, p, 1.0), 0.0)
    return main + np.where(safe, 0.0, 4.0 * lim)


def cfi_profile(table: LikelihoodTable) -> np.ndarray:
    """Classical Fisher information at every interior grid node."""
    terms = _cfi_terms(table.probs, table.dprobs, table.dlimit)
    return terms.sum(axis=0)[1:-1]


def cfi(table: LikelihoodTable, theta: float) -> float:
    """Classical Fisher information of photon counting at an interior node."""
    grid = table.grid
    j = grid.nearest_index(theta)
    if abs(grid.nodes[j] - theta) > 1e-9 * max(1.0, abs(theta)):
        raise ParameterError("theta must be a grid node")
    if j < 1 or j > grid.size - 2:
        raise RangeError("theta must be an interior grid node")
    cols = slice(j, j + 1)
    return float(
        _cfi_terms(table.probs[:, cols], table.dprobs[:, cols], table.dlimit[:, cols]).sum()
    )


# --- Bayesian bounds -------------------------------------------------------------


def _log_abs_f(fid, thetas: np.ndarray) -> np.ndarray:
    f = np.asarray(fid(thetas), dtype=complex)
    with np.errstate(divide="ignore"):
        la = np.log(np.abs(f))
    return np.minimum(la, 0.0)  # |f| <= 1 up to rounding


def zzb(fid, width: float, mu: int, num_nodes: int = ZZB_MIN_NODES) -> float:
    """Ziv-Zakai bound for a flat prior of the given width.

    0.5 * int_0^W theta (1 - theta/W) [1 - sqrt(1 - |f|^(2 mu))] dtheta,
    with the power in log space and 1 - sqrt(1 - x) evaluated via expm1 /
    log1p so the deep tail (x ~ 1e-300) keeps full relative precision.
    At mu = 0 the bracket is 1 and Simpson reproduces W^2/12 exactly.
    """
    if width <= 0:
        raise ParameterError("prior width must be positive")
    if mu < 0:
        raise ParameterError("mu must be non-negative")
    nodes = max(int(num_nodes), ZZB_MIN_NODES)
    if nodes % 2 == 0:
        nodes += 1
    grid = simpson_grid(0.0, width, nodes)
    la = _log_abs_f(fid, grid.nodes)
    with np.errstate(over="ignore"):
        x = np.exp(2.0 * mu * la)  # |f|^(2 mu), in [0, 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        bracket = -np.expm1(0.5 * np.log1p(-x))
    bracket = np.where(x >= 1.0, 1.0, bracket)
    integrand = grid.nodes * (1.0 - grid.nodes / width) * bracket
    return 0.5 * grid.integrate(integrand)


def wwb(fid, width: float, mu: int, search_points: int = WWB_SEARCH_POINTS) -> float:
    """Weiss-Weinstein bound for a flat prior of the given width.

    Evaluates the single-displacement family on a dense grid of test
    offsets h in (0, W) and returns the largest valid ratio

        [h^2 (1 - h/W)^2 |f(h)|^(4 mu) / 2] /
        [|f(h)|^(2 mu) - (1 - 2h/W) Re{(f(h)^2 f(2h)^*)^mu}].

    Powers use log magnitude plus accumulated phase (exact for integer mu);
    near-singular denominators are skipped.
    """
    if width <= 0:
        raise ParameterError("prior width must be positive")
    if mu < 1:
        raise ParameterError("wwb requires mu >= 1")
    if search_points < 8:
        raise ParameterError("search grid too small")
    h = np.linspace(0.0, width, search_points + 2)[1:-1]
    f1 = np.asarray(fid(h), dtype=complex)
    f2 = np.asarray(fid(2.0 * h), dtype=complex)
    with np.errstate(divide="ignore"):
        la1 = np.minimum(np.log(np.abs(f1)), 0.0)
        la2 = np.minimum(np.log(np.abs(f2)), 0.0)
    ph1 = np.angle(f1)
    ph2 = np.angle(f2)
    numerator = 0.5 * h * h * (1.0 - h / width) ** 2 * np.exp(4.0 * mu * la1)
    cross = np.exp(mu * (2.0 * la1 + la2)) * np.cos(mu * (2.0 * ph1 - ph2))
    denominator = np.exp(2.0 * mu * la1) - (1.0 - 2.0 * h / width) * cross
    valid = (
        np.isfinite(numerator)
        & np.isfinite(denominator)
        & (denominator > WWB_SINGULAR * np.maximum(numerator, 1e-300))
    )
    if not valid.any():
        raise NumericalError(
            "all Weiss-Weinstein test points are singular",
            diagnostics={"mu": mu, "width": width},
        )
    return float((numerator[valid] / denominator[valid]).max())


def relative_error(mse_value: float, bound: float) -> float:
    """Percent distance 100 |mse - bound| / mse."""
    if mse_value <= 0:
        raise ParameterError("mse must be positive")
    return 100.0 * abs(mse_value - bound) / mse_value


# --- curves and thresholds --------------------------------------------------------


@dataclass(frozen=True)
class MseCurve:
    """Error curve and benchmarks over the observation schedule."""

    probe: str
    width: float
    fisher: float
    mus: tuple[int, ...]
    mse: np.ndarray
    mse_stderr: np.ndarray
    qcrb: np.ndarray
    zzb: np.ndarray
    wwb: np.ndarray
    rel_err: np.ndarray

    def __post_init__(self):
        mus = tuple(int(m) for m in self.mus)
        if any(m < 1 for m in mus) or any(b <= a for a, b in zip(mus, mus[1:])):
            raise ParameterError("mu schedule must be strictly increasing, >= 1")
        n = len(mus)
        for name in ("mse", "mse_stderr", "qcrb", "zzb", "wwb", "rel_err"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise ParameterError(f"curve column {name} has wrong length")
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "mus", mus)
        if np.any(self.mse <= 0):
            raise ParameterError("mse values must be positive")
        expected = 100.0 * np.abs(self.mse - self.qcrb) / self.mse
        if np.max(np.abs(expected - self.rel_err)) > 1e-9:
            raise ParameterError("rel_err column inconsistent with mse and qcrb")


def mu_threshold(curve: MseCurve, epsilon_tau: float) -> int | None:
    """Smallest scheduled mu with rel_err <= epsilon_tau there and at every
    larger scheduled mu; None when even the last point misses the target."""
    if epsilon_tau <= 0:
        raise ParameterError("epsilon_tau must be positive")
    ok = curve.rel_err <= epsilon_tau
    if not ok[-1]:
        return None
    idx = len(ok) - 1
    while idx > 0 and ok[idx - 1]:
        idx -= 1
    return curve.mus[idx]


# --- feasibility rules -------------------------------------------------------------


def min_observations(fisher: float, prior_var: float) -> float:
    """Observations needed before the local bound can dominate the prior:
    mu > 1/(prior variance * F)."""
    if fisher <= 0 or prior_var <= 0:
        raise ParameterError("fisher and prior variance must be positive")
    return 1.0 / (prior_var * fisher)


def delta_state_min_observations(delta: float) -> float:
    """Feasibility threshold 3/(4 pi^2 delta (1 - delta)) for the delta family
    under the flat prior of width 2 pi."""
    if not 0.0 < delta < 1.0:
        raise ParameterError("delta must lie in (0, 1)")
    return 3.0 / (4.0 * np.pi**2 * delta * (1.0 - delta))
