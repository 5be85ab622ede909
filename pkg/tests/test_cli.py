from pathlib import Path

import numpy as np
import pytest

from qswnet.cli import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, build_parser, load_config, main, parse_ensemble
from qswnet.errors import ConfigError, NumericalError
from qswnet.experiment import COMMANDS
from qswnet.utils.io import read_table

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
QUIET = ["--no-progress", "--workers", "1", "-q"]


def run_table(tmp_path, *argv, name="out.csv"):
    out = tmp_path / name
    assert main([*argv, *QUIET, "--out", str(out)]) == EXIT_OK
    return read_table(out)


def bounds_of(frame):
    return dict(zip(frame["bound"], frame["value"]))


def test_topo(capsys):
    assert main(["topo", "--model", "2r-4-2", *QUIET]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("model: 2r-4-2\n")
    assert "sink arcs: 3->7, 4->8" in out


def test_bounds_of_the_default_pair(tmp_path):
    metadata, frame = run_table(tmp_path, "bounds")
    values = bounds_of(frame)
    assert values["helstrom"] == pytest.approx(0.853553, abs=1e-6)
    assert values["classical_helstrom"] == pytest.approx(0.5)
    assert metadata["command"] == "bounds"
    assert metadata["ensemble"] == "symmetric_pair"


@pytest.mark.parametrize(
    "ensemble, bound, expected",
    [
        ("equiphase:m_states=4", "symmetric", 0.5),
        ("equiphase:m_states=8", "symmetric", 0.25),
        ("equiphase:m_states=8", "square_root_measurement", 0.25),
        ("mub_mixture:alpha=0,m_states=4", "symmetric", 0.25),
        ("mub_mixture:alpha=0.5,m_states=4", "symmetric", 0.625),
        ("asymmetric_pair", "ry_zeroed_helstrom", 0.707289),
        ("fig3_pair:theta=0.39269908169872414,xi=0.7853981633974483,r=0.5", "helstrom", 0.7795085),
    ],
)
def test_bounds_of_named_ensembles(tmp_path, ensemble, bound, expected):
    _, frame = run_table(tmp_path, "bounds", "--ensemble", ensemble)
    assert bounds_of(frame)[bound] == pytest.approx(expected, abs=1e-6)


def test_sweep_reruns_are_byte_identical(tmp_path):
    argv = ["sweep", "--p", "0,1", "--tau", "2", "--restarts", "1", *QUIET]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main([*argv, "--out", str(first)]) == EXIT_OK
    assert main([*argv, "--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()

    metadata, frame = read_table(first)
    assert metadata["command"] == "sweep"
    assert metadata["model"] == "2r-2r-2"
    assert list(frame.columns) == ["model", "p", "tau", "pc_optimized", "bound", "bound_kind", "restarts", "helstrom",
                                   "ry_zeroed"]
    assert np.all(frame["pc_optimized"] <= frame["bound"] + 1e-6)


def test_timings_add_a_runtime_column(tmp_path):
    _, frame = run_table(tmp_path, "sweep", "--p", "0", "--tau", "1", "--restarts", "1", "--timings")
    assert frame.columns[-1] == "runtime_s"
    assert frame["runtime_s"].iloc[0] > 0


def test_analytic_without_hopping(tmp_path):
    metadata, frame = run_table(tmp_path, "analytic", "p0", "--h", "0", "--tau", "0.5,1,5")
    assert frame["tau"].tolist() == [0.5, 1.0, 5.0]
    np.testing.assert_allclose(frame["pc_closed"], 0.0, atol=1e-12)
    np.testing.assert_allclose(frame["pc_numeric"], 0.0, atol=1e-12)
    assert metadata["model"] == "2r-2r-2"


@pytest.mark.parametrize("argv", [["p0", "--h", "0.4"], ["p0"], ["p1"], ["p1", "--d", "0.1,-0.2,0.3,0.4"]])
def test_analytic_agrees_with_evolution(tmp_path, argv):
    _, frame = run_table(tmp_path, "analytic", *argv, "--tau", "0.5,2,8")
    assert frame["deviation"].max() < 1e-8


def test_depth_command(tmp_path):
    _, frame = run_table(tmp_path, "depth", "--depths", "1", "--tau", "1", "--restarts", "1")
    assert frame["model"].tolist() == ["2r-2r-2"]


def test_robustness_command(tmp_path):
    metadata, frame = run_table(tmp_path, "robustness", "--model", "2r-2r-2", "--runs", "3", "--error-pct", "0,0.1",
                                "--p", "0", "--tau", "1", "--restarts", "1")
    assert frame["model"].unique().tolist() == ["2r-2r-2"]
    assert frame["error_pct"].tolist() == [0.0, 0.1]
    assert metadata["n_runs"] == "3"


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--p", ""],
        ["sweep", "--p", "0,2"],
        ["sweep", "--tau", "-1"],
        ["topo", "--model", "2x-2"],
        ["topo", "--model", "2-2-4"],
        ["bounds", "--ensemble", "ghz"],
        ["bounds", "--ensemble", "equiphase:m_states"],
        ["sweep", "--ensemble", "equiphase:m_states=3"],
        ["analytic", "p1", "--d", "0.7,0,0,0"],
        ["analytic", "p1", "--d", "0.1,0.2"],
        ["robustness", "--error-pct", "-0.1"],
        ["sweep", "--config", "missing.yaml"],
    ],
)
def test_configuration_errors_exit_with_one(argv):
    assert main([*argv, *QUIET]) == EXIT_CONFIG


def test_numerical_failures_exit_with_two(monkeypatch):
    def failing(exp):
        raise NumericalError("generator blew up")

    monkeypatch.setitem(COMMANDS, "topo", failing)
    assert main(["topo", *QUIET]) == EXIT_NUMERICAL


def test_parse_ensemble():
    assert parse_ensemble("equiphase:m_states=4") == {"family": "equiphase", "m_states": 4}
    assert parse_ensemble("symmetric_pair: theta=0.3, xi=-1.5") == {"family": "symmetric_pair", "theta": 0.3,
                                                                     "xi": -1.5}
    assert parse_ensemble("asymmetric_pair") == {"family": "asymmetric_pair"}
    with pytest.raises(ConfigError, match="no family"):
        parse_ensemble(":theta=1")


def test_flags_override_the_config_file():
    config_file = str(CONFIGS / "robustness_state_noise.yaml")
    argv = ["robustness", "--config", config_file, "--p", "0", "--runs", "5", "--out", "x.csv"]
    args = build_parser().parse_args(argv)
    config = load_config(args)
    assert config.lookup("robustness/p") == "0"
    assert config.lookup("robustness/n_runs") == 5
    assert config.lookup("runtime/out") == "x.csv"
    assert not [key for key in config.tracked_params if key.startswith("runtime")]
    assert config.lookup("robustness/mode") == "multiplicative"
