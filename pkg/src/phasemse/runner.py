"""Configuration-driven experiment runner.

Builds probes from a flat key=value config, resolves the prior width
(fixed or intrinsic), assembles the MSE curve with its benchmark bounds
over the observation schedule, extracts the threshold observation count,
and persists a CSV plus a versioned JSON result file. Also reproduces the
reference table of intrinsic widths and thresholds for the five standard
probes.

Everything downstream of (config, seed) is deterministic; the worker count
changes wall time only. Wall time appears in the JSON metadata and is the
single field excluded from the byte-for-byte reproducibility guarantee.
"""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import dataclass

import numpy as np

from .bayes import (
    DEFAULT_THETA_NODES,
    DEFAULT_TRAJECTORIES,
    DEFAULT_WIDTH_CANDIDATES,
    IntrinsicWidthReport,
    MseWorkspace,
    flat_prior,
    intrinsic_width,
    noon_width_candidates,
)
from .bounds import MseCurve, mu_threshold, qcrb, qfi, relative_error, wwb, zzb
from .errors import (
    ConfigurationError,
    ParameterError,
    UnsupportedOperationError,
)
from .interferometer import fidelity_function, likelihood_table
from .probes import FAMILIES, ProbeSpec, build_probe
from .streams import RngTree

logger = logging.getLogger("phasemse")

FORMAT_VERSION = "1"
DEFAULT_MU_MAX = 1000
DEFAULT_GRID_SIZE = 2049
DEFAULT_EPSILON_TAU = 5.0
DEFAULT_SEED = 101
DEFAULT_WIDTH_TRIALS = 200
DEFAULT_WIDTH_MU_PROBE = 100
BOUND_NAMES = ("qcrb", "zzb", "wwb")

INTRINSIC = "intrinsic"


def parse_angle(text: str):
    """Parse a width value: a float, 'pi' forms like 2pi / pi/3, or 'intrinsic'."""
    t = text.strip().lower().replace(" ", "").replace("*", "")
    if t == INTRINSIC:
        return INTRINSIC
    try:
        if "pi" in t:
            pre, _, post = t.partition("pi")
            value = math.pi * (float(pre) if pre not in ("", "+", "-") else float(pre + "1"))
            if post:
                if not post.startswith("/"):
                    raise ValueError(post)
                value /= float(post[1:])
            return value
        return float(t)
    except ValueError:
        raise ConfigurationError(f"cannot parse width {text!r}") from None


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: probe, prior, schedule, MC budget, seed, outputs."""

    family: str
    nbar: float | None = None
    N: float | None = None
    delta: float | None = None
    prior_width: float | str = INTRINSIC
    mu_max: int = DEFAULT_MU_MAX
    trajectories: int = DEFAULT_TRAJECTORIES
    grid_size: int = DEFAULT_GRID_SIZE
    theta_nodes: int = DEFAULT_THETA_NODES
    epsilon_tau: float = DEFAULT_EPSILON_TAU
    seed: int = 0
    bounds: tuple[str, ...] = BOUND_NAMES
    out_path: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown probe.family {self.family!r}")
        if self.mu_max < 1:
            raise ConfigurationError("run.mu_max must be >= 1")
        if self.grid_size < 3 or self.grid_size % 2 == 0:
            raise ConfigurationError("run.grid_size must be odd and >= 3")
        if self.theta_nodes < 1:
            raise ConfigurationError("run.theta_nodes must be >= 1")
        if self.trajectories < 2:
            raise ConfigurationError("run.trajectories must be >= 2")
        if self.epsilon_tau <= 0:
            raise ConfigurationError("run.epsilon_tau must be positive")
        if not isinstance(self.seed, int):
            raise ConfigurationError("run.seed must be an integer")
        bad = set(self.bounds) - set(BOUND_NAMES)
        if bad:
            raise ConfigurationError(f"unknown bounds {sorted(bad)}")
        if isinstance(self.prior_width, str):
            if self.prior_width != INTRINSIC:
                raise ConfigurationError("prior.width must be a number or 'intrinsic'")
        elif not 0.0 < self.prior_width <= 2.0 * np.pi + 1e-12:
            raise ConfigurationError("prior.width must lie in (0, 2pi]")

    def probe_spec(self) -> ProbeSpec:
        return ProbeSpec(self.family, nbar=self.nbar, N=self.N, delta=self.delta)

    def flat_items(self) -> list[tuple[str, str]]:
        """Canonical key=value form; parse_config round-trips it exactly."""
        items = [("probe.family", self.family)]
        for key, value in (
            ("probe.nbar", self.nbar),
            ("probe.N", self.N),
            ("probe.delta", self.delta),
        ):
            if value is not None:
                items.append((key, repr(float(value))))
        width = self.prior_width
        items += [
            ("prior.width", width if isinstance(width, str) else repr(float(width))),
            ("run.mu_max", str(self.mu_max)),
            ("run.trajectories", str(self.trajectories)),
            ("run.grid_size", str(self.grid_size)),
            ("run.theta_nodes", str(self.theta_nodes)),
            ("run.epsilon_tau", repr(float(self.epsilon_tau))),
            ("run.seed", str(self.seed)),
            ("run.bounds", ",".join(self.bounds)),
        ]
        if self.out_path is not None:
            items.append(("out.path", self.out_path))
        return items


def config_text(config: ExperimentConfig) -> str:
    return "".join(f"{k} = {v}\n" for k, v in config.flat_items())


def _parse_bounds(text: str) -> tuple[str, ...]:
    names = [p.strip() for p in text.split(",") if p.strip()]
    bad = set(names) - set(BOUND_NAMES)
    if bad:
        raise ConfigurationError(f"unknown bounds {sorted(bad)}")
    return tuple(b for b in BOUND_NAMES if b in names)


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigurationError(f"expected an integer, got {text!r}") from None


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigurationError(f"expected a number, got {text!r}") from None


# config key -> (ExperimentConfig field, value parser)
CONFIG_KEYS = {
    "probe.family": ("family", str),
    "probe.nbar": ("nbar", _parse_float),
    "probe.N": ("N", _parse_float),
    "probe.delta": ("delta", _parse_float),
    "prior.width": ("prior_width", parse_angle),
    "run.mu_max": ("mu_max", _parse_int),
    "run.trajectories": ("trajectories", _parse_int),
    "run.grid_size": ("grid_size", _parse_int),
    "run.theta_nodes": ("theta_nodes", _parse_int),
    "run.epsilon_tau": ("epsilon_tau", _parse_float),
    "run.seed": ("seed", _parse_int),
    "run.bounds": ("bounds", _parse_bounds),
    "out.path": ("out_path", str),
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse flat key = value lines; '#' starts a comment, blank lines ignored."""
    fields: dict = {}
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in CONFIG_KEYS:
            raise ConfigurationError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigurationError(f"line {lineno}: duplicate key {key!r}")
        seen.add(key)
        field, parser = CONFIG_KEYS[key]
        fields[field] = parser(value)
    if "family" not in fields:
        raise ConfigurationError("probe.family is required")
    if "seed" not in fields:
        raise ConfigurationError("run.seed is required (runs never seed from the clock)")
    try:
        return ExperimentConfig(**fields)
    except ParameterError as exc:
        raise ConfigurationError(str(exc)) from None


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from None


# --- schedule -------------------------------------------------------------------


def mu_schedule(mu_max: int) -> tuple[int, ...]:
    """Every mu in 1..20, then ~25 log-spaced points up to mu_max."""
    if mu_max < 1:
        raise ParameterError("mu_max must be >= 1")
    mus = set(range(1, min(mu_max, 20) + 1))
    if mu_max > 20:
        lo = min(25, mu_max)
        mus.update(int(round(m)) for m in np.geomspace(lo, mu_max, num=25))
        mus.add(mu_max)
    return tuple(sorted(m for m in mus if m <= mu_max))


# --- width resolution and curve assembly ------------------------------------------

# stream lanes; the mse pool keys trajectories by (node, index), width search
# prepends WIDTH_LANE so the two phases never share a stream
WIDTH_LANE = 0


def width_candidates_for(spec: ProbeSpec) -> tuple[float, ...]:
    """Default candidate widths, extended with the parity pair for NOON probes."""
    candidates = DEFAULT_WIDTH_CANDIDATES
    if spec.family == "noon":
        candidates = candidates + noon_width_candidates(float(spec.N))
    return candidates


def find_intrinsic_width(
    state,
    gen,
    spec: ProbeSpec,
    seed: int,
    *,
    candidates=None,
    trials: int = DEFAULT_WIDTH_TRIALS,
    mu_probe: int = DEFAULT_WIDTH_MU_PROBE,
    grid_size: int = DEFAULT_GRID_SIZE,
) -> IntrinsicWidthReport:
    if candidates is None:
        candidates = width_candidates_for(spec)
    report = intrinsic_width(
        state,
        gen,
        candidates=candidates,
        mu_probe=mu_probe,
        trials=trials,
        stream=RngTree(seed).child(WIDTH_LANE),
        grid_nodes=grid_size,
    )
    for width in report.candidates:
        logger.info(
            "%s: width %.6f unique-peak fraction %.3f",
            spec.label(),
            width,
            report.fractions[width],
        )
    return report


def build_curve(
    state,
    gen,
    width: float,
    mus,
    *,
    trajectories: int = DEFAULT_TRAJECTORIES,
    master_seed: int = 0,
    grid_size: int = DEFAULT_GRID_SIZE,
    theta_nodes: int = DEFAULT_THETA_NODES,
    bounds: tuple[str, ...] = BOUND_NAMES,
    label: str = "probe",
    workers: int | None = None,
) -> MseCurve:
    """MSE and benchmark bounds at every scheduled mu, on a flat prior of `width`.

    The QCRB column is always populated (it is closed form and the relative
    error column depends on it); `bounds` switches the zzb / wwb columns,
    with NaN marking a bound that was not requested.
    """
    mus = tuple(int(m) for m in mus)
    prior = flat_prior(width, grid_size)
    table = likelihood_table(state, gen, prior.grid)
    fisher = qfi(state, gen)
    fid = fidelity_function(state, gen)
    n = len(mus)
    mse_col = np.empty(n)
    se_col = np.empty(n)
    qcrb_col = np.empty(n)
    zzb_col = np.full(n, np.nan)
    wwb_col = np.full(n, np.nan)
    start = time.monotonic()
    with MseWorkspace(prior, table, workers=workers) as ws:
        for i, mu in enumerate(mus):
            mse_col[i], se_col[i] = ws.mse(mu, trajectories, master_seed, theta_nodes)
            qcrb_col[i] = qcrb(fisher, mu)
            if "zzb" in bounds:
                zzb_col[i] = zzb(fid, width, mu)
            if "wwb" in bounds:
                wwb_col[i] = wwb(fid, width, mu)
            logger.info(
                "%s: mu=%4d mse=%.6e stderr=%.1e [%.1fs]",
                label,
                mu,
                mse_col[i],
                se_col[i],
                time.monotonic() - start,
            )
    rel = np.array([relative_error(m, b) for m, b in zip(mse_col, qcrb_col)])
    return MseCurve(
        probe=label,
        width=width,
        fisher=fisher,
        mus=mus,
        mse=mse_col,
        mse_stderr=se_col,
        qcrb=qcrb_col,
        zzb=zzb_col,
        wwb=wwb_col,
        rel_err=rel,
    )


# --- result bundle and files -------------------------------------------------------


@dataclass(frozen=True)
class ResultBundle:
    """Everything one experiment produced, plus the config that produced it."""

    label: str
    config: ExperimentConfig
    width: float
    width_report: IntrinsicWidthReport | None
    curve: MseCurve
    mu_tau: int | None
    wall_time_seconds: float
    format_version: str = FORMAT_VERSION


def mu_tau_display(mu_tau: int | None, mu_max: int) -> str:
    return str(mu_tau) if mu_tau is not None else f"> {mu_max}"


def _fmt(x) -> str:
    # repr of a Python float is the shortest round-trip decimal
    return repr(float(x))


def curve_csv_text(curve: MseCurve) -> str:
    lines = ["mu,mse,mse_stderr,qcrb,zzb,wwb,rel_err"]
    for i, mu in enumerate(curve.mus):
        lines.append(
            ",".join(
                [str(mu)]
                + [
                    _fmt(col[i])
                    for col in (
                        curve.mse,
                        curve.mse_stderr,
                        curve.qcrb,
                        curve.zzb,
                        curve.wwb,
                        curve.rel_err,
                    )
                ]
            )
        )
    return "\n".join(lines) + "\n"


def emit_curves(bundle: ResultBundle, out_dir, fmt: str = "csv"):
    """Write the plot-ready curve file; returns its path."""
    if fmt != "csv":
        raise UnsupportedOperationError(f"unknown curve format {fmt!r}")
    import os

    path = os.path.join(out_dir, f"{bundle.label}_curve.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(curve_csv_text(bundle.curve))
    return path


def _width_report_dict(report: IntrinsicWidthReport) -> dict:
    return {
        "width": report.width,
        "fractions": {_fmt(w): report.fractions[w] for w in report.candidates},
        "mu_probe": report.mu_probe,
        "trials": report.trials,
        "threshold": report.threshold,
        "peak_tol": report.peak_tol,
    }


def bundle_json_text(bundle: ResultBundle) -> str:
    curve = bundle.curve
    payload = {
        "format_version": bundle.format_version,
        "label": bundle.label,
        "config": dict(bundle.config.flat_items()),
        "width": bundle.width,
        "width_report": (
            _width_report_dict(bundle.width_report) if bundle.width_report else None
        ),
        "fisher": curve.fisher,
        "mu_schedule": list(curve.mus),
        "mu_tau": bundle.mu_tau,
        "mu_tau_display": mu_tau_display(bundle.mu_tau, bundle.config.mu_max),
        "epsilon_tau": bundle.config.epsilon_tau,
        "mc_budget": {
            "trajectories": bundle.config.trajectories,
            "theta_nodes": bundle.config.theta_nodes,
            "grid_size": bundle.config.grid_size,
        },
        # diagnostic only; excluded from the reproducibility guarantee
        "wall_time_seconds": bundle.wall_time_seconds,
    }
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"


def run_experiment(
    config: ExperimentConfig,
    out_dir=None,
    workers: int | None = None,
) -> ResultBundle:
    """Run one configured experiment end to end and write its result files."""
    import os

    spec = config.probe_spec()
    if spec.family == "delta":
        raise UnsupportedOperationError(
            "delta probes are single-mode feasibility models; the MSE pipeline "
            "needs the two-mode measurement. Use delta_state_min_observations."
        )
    state, gen = build_probe(spec)
    label = spec.label()
    start = time.monotonic()
    report = None
    if config.prior_width == INTRINSIC:
        report = find_intrinsic_width(
            state, gen, spec, config.seed, grid_size=config.grid_size
        )
        if report.width is None:
            raise UnsupportedOperationError(
                f"{label}: no candidate width reaches a unique likelihood peak"
            )
        width = report.width
    else:
        width = float(config.prior_width)
    logger.info("%s: prior width %.6f", label, width)
    curve = build_curve(
        state,
        gen,
        width,
        mu_schedule(config.mu_max),
        trajectories=config.trajectories,
        master_seed=config.seed,
        grid_size=config.grid_size,
        theta_nodes=config.theta_nodes,
        bounds=config.bounds,
        label=label,
        workers=workers,
    )
    mu_tau = mu_threshold(curve, config.epsilon_tau)
    bundle = ResultBundle(
        label=label,
        config=config,
        width=width,
        width_report=report,
        curve=curve,
        mu_tau=mu_tau,
        wall_time_seconds=time.monotonic() - start,
    )
    target = out_dir if out_dir is not None else (config.out_path or ".")
    os.makedirs(target, exist_ok=True)
    emit_curves(bundle, target)
    path = os.path.join(target, f"{label}_result.json")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(bundle_json_text(bundle))
    logger.info(
        "%s: mu_tau %s at epsilon_tau %g (width %.6f)",
        label,
        mu_tau_display(mu_tau, config.mu_max),
        config.epsilon_tau,
        width,
    )
    return bundle


# --- reference table reproduction ---------------------------------------------------

TABLE1_PROBES = (
    ProbeSpec("coherent", nbar=2.0),
    ProbeSpec("noon", N=2.0),
    ProbeSpec("noon", N=1.0),
    ProbeSpec("tsv", nbar=2.0),
    ProbeSpec("ses", nbar=2.0),
)

NOT_APPLICABLE = "-"

# published values the reproduction is compared against (threshold 5 percent)
REFERENCE_WIDTHS = {
    "coherent_nbar2": math.pi,
    "noon_N2": math.pi / 2,
    "noon_N1": math.pi / 2,
    "tsv_nbar2": math.pi / 2,
    "ses_nbar2": math.pi / 2,
}
REFERENCE_MU_TAU_INTRINSIC = {
    "coherent_nbar2": 39,
    "noon_N2": 115,
    "noon_N1": 526,
    "tsv_nbar2": 874,
    "ses_nbar2": None,  # above the 10^3 schedule
}
REFERENCE_MU_TAU_PI3 = {
    "coherent_nbar2": 497,
    "noon_N2": 267,
    "noon_N1": NOT_APPLICABLE,
    "tsv_nbar2": 595,
    "ses_nbar2": None,
}
REFERENCE_MU_MAX = 1000


@dataclass(frozen=True)
class Table1Row:
    label: str
    prior: str  # "intrinsic" or "pi/3"
    width: float | None
    mu_tau: int | None | str  # int, None (never reached) or "-"
    mu_tau_text: str
    reference_text: str
    mse_last: float | None
    stderr_last: float | None


@dataclass(frozen=True)
class Table1Result:
    rows: tuple[Table1Row, ...]
    seed: int
    mu_max: int
    trajectories: int
    csv_paths: tuple[str, ...]


def _reference_text(value, mu_max=REFERENCE_MU_MAX) -> str:
    if value == NOT_APPLICABLE:
        return NOT_APPLICABLE
    return mu_tau_display(value, mu_max)


def _run_seed(seed: int, index: int) -> int:
    # distinct sub-seed per table row, derived only from (seed, index)
    return int(np.random.SeedSequence(entropy=[seed, index]).generate_state(1)[0])


def reproduce_table1(
    *,
    trajectories: int = DEFAULT_TRAJECTORIES,
    mu_max: int = DEFAULT_MU_MAX,
    seed: int = DEFAULT_SEED,
    out_dir=None,
    workers: int | None = None,
    grid_size: int = DEFAULT_GRID_SIZE,
    theta_nodes: int = DEFAULT_THETA_NODES,
    width_trials: int = DEFAULT_WIDTH_TRIALS,
    width_mu_probe: int = DEFAULT_WIDTH_MU_PROBE,
    epsilon_tau: float = DEFAULT_EPSILON_TAU,
) -> Table1Result:
    """Reproduce the reference table: intrinsic widths and mu_tau thresholds
    for the five standard probes under both the intrinsic prior and pi/3.

    Budget overrides shrink the run for smoke tests; defaults match the
    reference analysis. Returns the rows and writes one curve CSV per run
    plus table1.csv with the comparison.
    """
    import os

    target = out_dir if out_dir is not None else "."
    os.makedirs(target, exist_ok=True)
    schedule = mu_schedule(mu_max)
    rows: list[Table1Row] = []
    paths: list[str] = []
    run_index = 0

    def one_curve(state, gen, width, label, tag):
        nonlocal run_index
        curve = build_curve(
            state,
            gen,
            width,
            schedule,
            trajectories=trajectories,
            master_seed=_run_seed(seed, run_index),
            grid_size=grid_size,
            theta_nodes=theta_nodes,
            label=f"{label}_{tag}",
            workers=workers,
        )
        run_index += 1
        path = os.path.join(target, f"table1_{label}_{tag}_curve.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(curve_csv_text(curve))
        paths.append(path)
        return curve

    for spec in TABLE1_PROBES:
        label = spec.label()
        state, gen = build_probe(spec)
        report = find_intrinsic_width(
            state,
            gen,
            spec,
            seed,
            trials=width_trials,
            mu_probe=width_mu_probe,
            grid_size=grid_size,
        )
        if report.width is None:
            raise UnsupportedOperationError(f"{label}: width search found no usable prior")

        curve = one_curve(state, gen, report.width, label, "wint")
        tau = mu_threshold(curve, epsilon_tau)
        rows.append(
            Table1Row(
                label=label,
                prior="intrinsic",
                width=report.width,
                mu_tau=tau,
                mu_tau_text=mu_tau_display(tau, mu_max),
                reference_text=_reference_text(REFERENCE_MU_TAU_INTRINSIC[label]),
                mse_last=float(curve.mse[-1]),
                stderr_last=float(curve.mse_stderr[-1]),
            )
        )

        if REFERENCE_MU_TAU_PI3[label] == NOT_APPLICABLE:
            rows.append(
                Table1Row(
                    label=label,
                    prior="pi/3",
                    width=None,
                    mu_tau=NOT_APPLICABLE,
                    mu_tau_text=NOT_APPLICABLE,
                    reference_text=NOT_APPLICABLE,
                    mse_last=None,
                    stderr_last=None,
                )
            )
        else:
            curve = one_curve(state, gen, math.pi / 3.0, label, "pi3")
            tau = mu_threshold(curve, epsilon_tau)
            rows.append(
                Table1Row(
                    label=label,
                    prior="pi/3",
                    width=math.pi / 3.0,
                    mu_tau=tau,
                    mu_tau_text=mu_tau_display(tau, mu_max),
                    reference_text=_reference_text(REFERENCE_MU_TAU_PI3[label]),
                    mse_last=float(curve.mse[-1]),
                    stderr_last=float(curve.mse_stderr[-1]),
                )
            )

    table = table1_csv_text_from_rows(rows)
    path = os.path.join(target, "table1.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(table)
    paths.append(path)
    return Table1Result(
        rows=tuple(rows),
        seed=seed,
        mu_max=mu_max,
        trajectories=trajectories,
        csv_paths=tuple(paths),
    )


def table1_csv_text_from_rows(rows) -> str:
    lines = ["probe,prior,width,mu_tau,reference_mu_tau,mse_at_mu_max,stderr_at_mu_max"]
    for row in rows:
        lines.append(
            ",".join(
                [
                    row.label,
                    row.prior,
                    _fmt(row.width) if row.width is not None else NOT_APPLICABLE,
                    row.mu_tau_text,
                    row.reference_text,
                    _fmt(row.mse_last) if row.mse_last is not None else NOT_APPLICABLE,
                    _fmt(row.stderr_last) if row.stderr_last is not None else NOT_APPLICABLE,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def table1_csv_text(result: Table1Result) -> str:
    return table1_csv_text_from_rows(result.rows)


def format_table1(result: Table1Result) -> str:
    """Human-readable comparison table."""
    header = (
        f"{'probe':<16}{'prior':<10}{'width':<10}{'mu_tau':<10}"
        f"{'reference':<12}{'mse(mu_max)':<14}{'stderr':<10}"
    )
    lines = [header, "-" * len(header)]
    for row in result.rows:
        width = f"{row.width:.4f}" if row.width is not None else NOT_APPLICABLE
        mse = f"{row.mse_last:.3e}" if row.mse_last is not None else NOT_APPLICABLE
        se = f"{row.stderr_last:.1e}" if row.stderr_last is not None else NOT_APPLICABLE
        lines.append(
            f"{row.label:<16}{row.prior:<10}{width:<10}{row.mu_tau_text:<10}"
            f"{row.reference_text:<12}{mse:<14}{se:<10}"
        )
    lines.append(
        f"seed={result.seed} mu_max={result.mu_max} trajectories={result.trajectories}"
    )
    return "\n".join(lines) + "\n"
