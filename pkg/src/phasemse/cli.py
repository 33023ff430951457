"""Command line interface.

Subcommands:
  run     --config <path> [--seed N] [--out DIR]   one configured experiment
  table1  [--trajectories N] [--seed N] [--out DIR] reference-table reproduction
  width   --probe <spec> [--candidates LIST]        intrinsic width search

Probe specs are "family:key=value,..." with the keys of the config file,
e.g. coherent:nbar=2  noon:N=2  tsv:nbar=2  ses:nbar=2.

Exit codes: 0 success, 2 configuration or parameter problems, 3 numerical
failures (truncation, underflow, singular evaluations), 4 unsupported
combinations.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

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
from .probes import ProbeSpec, build_probe
from .runner import (
    DEFAULT_SEED,
    find_intrinsic_width,
    format_table1,
    load_config,
    mu_tau_display,
    parse_angle,
    reproduce_table1,
    run_experiment,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_UNSUPPORTED = 4


def exit_code_for(exc: PhaseEstimationError) -> int:
    if isinstance(exc, (ConfigurationError, ParameterError, RangeError)):
        return EXIT_CONFIG
    if isinstance(exc, (NumericalError, TruncationError, InconsistencyError)):
        return EXIT_NUMERICAL
    if isinstance(exc, UnsupportedOperationError):
        return EXIT_UNSUPPORTED
    return EXIT_NUMERICAL


def parse_probe_arg(text: str) -> ProbeSpec:
    """Parse 'family:key=value,...' into a ProbeSpec."""
    family, _, rest = text.partition(":")
    family = family.strip()
    kwargs: dict[str, float] = {}
    if rest.strip():
        for part in rest.split(","):
            key, eq, value = part.partition("=")
            key = key.strip()
            if not eq or key not in ("nbar", "N", "delta"):
                raise ConfigurationError(f"bad probe parameter {part.strip()!r}")
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise ConfigurationError(f"bad probe parameter value {part.strip()!r}") from None
    try:
        return ProbeSpec(family, **kwargs)
    except ParameterError as exc:
        raise ConfigurationError(str(exc)) from None


def parse_candidates(text: str) -> tuple[float, ...]:
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        value = parse_angle(part)
        if isinstance(value, str):
            raise ConfigurationError(f"bad candidate width {part!r}")
        values.append(value)
    if not values:
        raise ConfigurationError("empty candidate list")
    return tuple(values)


def cmd_run(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    bundle = run_experiment(config, out_dir=args.out)
    print(
        f"{bundle.label}: width {bundle.width:.6f}  "
        f"mu_tau {mu_tau_display(bundle.mu_tau, config.mu_max)} "
        f"(epsilon_tau {config.epsilon_tau:g})"
    )
    return EXIT_OK


def cmd_table1(args) -> int:
    kwargs = {}
    if args.trajectories is not None:
        kwargs["trajectories"] = args.trajectories
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.out is not None:
        kwargs["out_dir"] = args.out
    result = reproduce_table1(**kwargs)
    print(format_table1(result), end="")
    return EXIT_OK


def cmd_width(args) -> int:
    spec = parse_probe_arg(args.probe)
    if spec.family == "delta":
        raise UnsupportedOperationError(
            "delta probes are single-mode feasibility models; the width search "
            "needs the two-mode measurement"
        )
    state, gen = build_probe(spec)
    candidates = parse_candidates(args.candidates) if args.candidates else None
    report = find_intrinsic_width(state, gen, spec, DEFAULT_SEED, candidates=candidates)
    for width in report.candidates:
        print(f"width {width:.6f}  unique-peak fraction {report.fractions[width]:.3f}")
    if report.width is None:
        print("intrinsic width: none of the candidates passed")
    else:
        print(f"intrinsic width: {report.width:.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasemse",
        description="Bayesian mean square error of phase estimation protocols",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configured experiment")
    p_run.add_argument("--config", required=True, help="path to a key=value config file")
    p_run.add_argument("--seed", type=int, default=None, help="override run.seed")
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.set_defaults(func=cmd_run)

    p_tab = sub.add_parser("table1", help="reproduce the reference width/threshold table")
    p_tab.add_argument("--trajectories", type=int, default=None, help="MC budget override")
    p_tab.add_argument("--seed", type=int, default=None, help="master seed")
    p_tab.add_argument("--out", default=None, help="output directory")
    p_tab.set_defaults(func=cmd_table1)

    p_wid = sub.add_parser("width", help="intrinsic width search for one probe")
    p_wid.add_argument("--probe", required=True, help="probe spec, e.g. coherent:nbar=2")
    p_wid.add_argument(
        "--candidates", default=None, help="comma-separated widths, e.g. pi,pi/2,pi/3"
    )
    p_wid.set_defaults(func=cmd_width)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PhaseEstimationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
