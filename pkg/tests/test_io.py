import numpy as np
import pandas as pd
import pytest

from qswnet.utils.io import format_table, read_table, write_table
from qswnet.utils.misc import parse_grid, spawn_rng


@pytest.fixture
def frame():
    return pd.DataFrame({"p": [0.0, 0.5], "tau": [1.0, 10.0], "pc": [0.1234567890123, 0.85]})


def test_preamble_precedes_header(frame):
    text = format_table(frame, metadata={"command": "sweep", "seed": 0})
    lines = text.splitlines()
    assert lines[:3] == ["# command: sweep", "# seed: 0", "p,tau,pc"]
    assert lines[3] == "0,1,0.123456789"


def test_table_file_round_trip(frame, tmp_path):
    path = tmp_path / "out" / "table.csv"
    write_table(frame, str(path), metadata={"config_hash": "abc123"})
    metadata, loaded = read_table(path)
    assert metadata == {"config_hash": "abc123"}
    assert list(loaded.columns) == ["p", "tau", "pc"]
    np.testing.assert_allclose(loaded["pc"], [0.123456789, 0.85])


def test_write_to_stdout(frame, capsys):
    write_table(frame, metadata={"command": "bounds"})
    out = capsys.readouterr().out
    assert out.startswith("# command: bounds\np,tau,pc\n")


def test_identical_inputs_give_identical_bytes(frame, tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    write_table(frame, str(first), metadata={"seed": 1})
    write_table(frame.copy(), str(second), metadata={"seed": 1})
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.parametrize(
    "value, expected",
    [
        (2, (2.0,)),
        ([0, 0.5], (0.0, 0.5)),
        ((1, 2), (1.0, 2.0)),
        (np.array([3.0]), (3.0,)),
        ("0,0.5,1", (0.0, 0.5, 1.0)),
        ("0:1:5", (0.0, 0.25, 0.5, 0.75, 1.0)),
        ("", ()),
    ],
)
def test_parse_grid(value, expected):
    np.testing.assert_allclose(parse_grid(value), expected)
    assert len(parse_grid(value)) == len(expected)


def test_spawned_streams_are_reproducible_and_distinct():
    first = spawn_rng(7, 0).uniform(size=4)
    np.testing.assert_array_equal(first, spawn_rng(7, 0).uniform(size=4))
    assert not np.allclose(first, spawn_rng(7, 1).uniform(size=4))
    assert not np.allclose(first, spawn_rng(8, 0).uniform(size=4))
