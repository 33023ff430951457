"""Experiment runner and CLI: config parsing, schedules, files, exit codes."""

import json
import os

import numpy as np
import pytest

from phasemse import (
    ConfigurationError,
    ExperimentConfig,
    UnsupportedOperationError,
    load_config,
    mu_schedule,
    parse_config,
    run_experiment,
    reproduce_table1,
)
from phasemse.cli import main
from phasemse.runner import config_text, curve_csv_text, parse_angle

TINY_CONFIG = """
# smallest useful run
probe.family = noon
probe.N = 1
prior.width = pi/2
run.mu_max = 3
run.trajectories = 25
run.grid_size = 129
run.theta_nodes = 9
run.seed = 7
"""


def test_parse_angle_forms():
    assert parse_angle("pi") == pytest.approx(np.pi)
    assert parse_angle("2pi") == pytest.approx(2.0 * np.pi)
    assert parse_angle("pi/3") == pytest.approx(np.pi / 3.0)
    assert parse_angle("0.75") == pytest.approx(0.75)
    assert parse_angle("intrinsic") == "intrinsic"
    with pytest.raises(ConfigurationError):
        parse_angle("tau/2")


def test_parse_config_round_trip():
    config = parse_config(TINY_CONFIG)
    assert config.family == "noon"
    assert config.N == 1.0
    assert config.prior_width == pytest.approx(np.pi / 2.0)
    assert config.mu_max == 3
    assert config.seed == 7
    # canonical text re-parses to the same object
    assert parse_config(config_text(config)) == config


def test_parse_config_defaults():
    config = parse_config("probe.family = noon\nprobe.N = 2\nrun.seed = 1\n")
    assert config.prior_width == "intrinsic"
    assert config.mu_max == 1000
    assert config.trajectories == 1000
    assert config.grid_size == 2049
    assert config.theta_nodes == 51
    assert config.epsilon_tau == 5.0
    assert config.bounds == ("qcrb", "zzb", "wwb")


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("probe.N = 2\nrun.seed = 1\n", "probe.family"),
        ("probe.family = noon\nprobe.N = 2\n", "run.seed"),
        ("probe.family = noon\nprobe.N = 2\nrun.seed = 1\nrun.seed = 2\n", "duplicate"),
        ("probe.family = noon\nprobe.N = 2\nrun.seed = 1\nrun.pace = 3\n", "unknown"),
        ("probe.family = noon\nprobe.N = 2\nrun.seed = 1\nrun.mu_max = 0\n", "mu_max"),
        ("probe.family = noon\nprobe.N = 2\nrun.seed = 1\nrun.grid_size = 10\n", "grid"),
        ("probe.family = noon\nprobe.N = 2\nrun.seed = 1\nrun.epsilon_tau = 0\n", "epsilon"),
        ("probe.family = noon\nprobe.N = 2\nrun.seed = 1\nrun.bounds = qcrb+abc\n", "bound"),
        ("probe.family = noon\nprobe.N = 2\nrun.seed = 1\nprior.width = 9\n", "width"),
        ("probe.family = marmot\nrun.seed = 1\n", "family"),
    ],
)
def test_parse_config_rejects(text, fragment):
    with pytest.raises(ConfigurationError) as err:
        parse_config(text)
    assert fragment in str(err.value)


def test_mu_schedule_small_and_large():
    assert mu_schedule(5) == (1, 2, 3, 4, 5)
    schedule = mu_schedule(1000)
    assert schedule[:20] == tuple(range(1, 21))
    assert schedule[-1] == 1000
    assert len(schedule) == len(set(schedule))
    assert all(a < b for a, b in zip(schedule, schedule[1:]))
    assert len(schedule) < 50


def test_run_experiment_writes_consistent_files(tmp_path):
    config = parse_config(TINY_CONFIG)
    bundle = run_experiment(config, out_dir=str(tmp_path))

    csv_path = tmp_path / "noon_N1_curve.csv"
    json_path = tmp_path / "noon_N1_result.json"
    assert csv_path.exists() and json_path.exists()

    text = csv_path.read_text()
    assert text.startswith("mu,mse,mse_stderr,qcrb,zzb,wwb,rel_err\n")
    assert "\r" not in text
    data = np.genfromtxt(csv_path, delimiter=",", names=True)
    assert list(data.dtype.names) == [
        "mu", "mse", "mse_stderr", "qcrb", "zzb", "wwb", "rel_err",
    ]
    # emitted floats survive the text round trip bit for bit
    assert np.array_equal(data["mse"], bundle.curve.mse)
    # rel_err column is self-consistent with the mse and qcrb columns
    recomputed = 100.0 * np.abs(data["mse"] - data["qcrb"]) / data["mse"]
    assert np.abs(recomputed - data["rel_err"]).max() < 1e-12

    payload = json.loads(json_path.read_text())
    assert payload["format_version"] == "1"
    assert payload["mu_schedule"] == [1, 2, 3]
    echoed = parse_config(
        "\n".join(f"{k} = {v}" for k, v in payload["config"].items())
    )
    assert echoed == config


def test_run_experiment_same_seed_identical(tmp_path):
    config = parse_config(TINY_CONFIG)
    run_experiment(config, out_dir=str(tmp_path / "a"))
    run_experiment(config, out_dir=str(tmp_path / "b"))
    first = (tmp_path / "a" / "noon_N1_curve.csv").read_bytes()
    second = (tmp_path / "b" / "noon_N1_curve.csv").read_bytes()
    assert first == second


def test_run_experiment_rejects_delta_family(tmp_path):
    config = parse_config(
        "probe.family = delta\nprobe.N = 2\nprobe.delta = 0.5\nrun.seed = 1\n"
        "prior.width = pi/2\n"
    )
    with pytest.raises(UnsupportedOperationError):
        run_experiment(config, out_dir=str(tmp_path))


def test_curve_csv_text_shortest_repr(tmp_path):
    config = parse_config(TINY_CONFIG)
    bundle = run_experiment(config, out_dir=str(tmp_path))
    text = curve_csv_text(bundle.curve)
    line = text.splitlines()[1]
    fields = line.split(",")
    assert len(fields) == 7
    assert float(fields[1]) == bundle.curve.mse[0]
    assert repr(float(fields[1])) == fields[1]


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(str(tmp_path / "absent.cfg"))


def test_reproduce_table1_reduced_budget(tmp_path):
    result = reproduce_table1(
        trajectories=20,
        mu_max=4,
        seed=5,
        out_dir=str(tmp_path),
        grid_size=129,
        theta_nodes=9,
        width_trials=12,
        width_mu_probe=25,
    )
    assert len(result.rows) == 10
    labels = [(row.label, row.prior) for row in result.rows]
    assert labels[0] == ("coherent_nbar2", "intrinsic")
    assert labels[1] == ("coherent_nbar2", "pi/3")
    # odd NOON keeps no pi/3 entry: the candidate prior is wider than useful
    noon1_pi3 = result.rows[5]
    assert noon1_pi3.label == "noon_N1" and noon1_pi3.prior == "pi/3"
    assert noon1_pi3.mu_tau_text == "-"
    assert (tmp_path / "table1.csv").exists()
    assert (tmp_path / "table1_noon_N1_wint_curve.csv").exists()
    assert not (tmp_path / "table1_noon_N1_pi3_curve.csv").exists()


def cli_config(tmp_path, text):
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return str(path)


def test_cli_run_success(tmp_path, capsys):
    path = cli_config(tmp_path, TINY_CONFIG)
    code = main(["run", "--config", path, "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "mu_tau" in out
    assert (tmp_path / "noon_N1_curve.csv").exists()


def test_cli_run_seed_override(tmp_path):
    path = cli_config(tmp_path, TINY_CONFIG)
    assert main(["run", "--config", path, "--seed", "8", "--out", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "noon_N1_result.json").read_text())
    assert payload["config"]["run.seed"] == "8"


def test_cli_exit_code_config_error(tmp_path, capsys):
    path = cli_config(tmp_path, "probe.family = noon\nprobe.N = 1\n")  # no seed
    assert main(["run", "--config", path]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_exit_code_missing_file(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.cfg")]) == 2


def test_cli_exit_code_unsupported(tmp_path, capsys):
    path = cli_config(
        tmp_path,
        "probe.family = delta\nprobe.N = 2\nprobe.delta = 0.5\nrun.seed = 1\n"
        "prior.width = pi/2\n",
    )
    assert main(["run", "--config", path, "--out", str(tmp_path)]) == 4
    assert "error:" in capsys.readouterr().err


def test_cli_width_subcommand(capsys):
    code = main(
        [
            "width",
            "--probe",
            "noon:N=1",
            "--candidates",
            "pi,pi/2",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "intrinsic width: 1.570796" in out


def test_cli_width_rejects_delta(capsys):
    assert main(["width", "--probe", "delta:N=2,delta=0.5"]) == 4


def test_cli_usage_error_exits_two():
    with pytest.raises(SystemExit) as err:
        main(["run"])  # --config is required
    assert err.value.code == 2


def test_exit_code_mapping():
    from phasemse import (
        InconsistencyError,
        NumericalError,
        ParameterError,
        RangeError,
        TruncationError,
    )
    from phasemse.cli import exit_code_for

    assert exit_code_for(ConfigurationError("x")) == 2
    assert exit_code_for(ParameterError("x")) == 2
    assert exit_code_for(RangeError("x")) == 2
    assert exit_code_for(NumericalError("x")) == 3
    assert exit_code_for(TruncationError("x")) == 3
    assert exit_code_for(InconsistencyError("x")) == 3
    assert exit_code_for(UnsupportedOperationError("x")) == 4
