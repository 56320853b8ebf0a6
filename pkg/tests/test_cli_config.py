from pathlib import Path

import pytest

from tsaboost._src.cli.cli_config import apply_entries
from tsaboost._src.cli.cli_config import load_run_config
from tsaboost._src.cli.cli_config import parse_value
from tsaboost._src.cli.cli_config import read_config_file
from tsaboost._src.cli.cli_config import RunConfig
from tsaboost._src.exceptions import TsaUsageError


@pytest.mark.parametrize(
    "text, expected",
    [
        ("4", 4),
        (" 0.25 ", 0.25),
        ("ON", True),
        ("no", False),
        ("0, 1.5", (0, 1.5)),
        ("ordered", "ordered"),
        ("1,", (1,)),
    ],
)
def test_parse_value(text, expected):
    """config values are typed"""
    assert parse_value(text) == expected


def test_read_config_file(tmp_path):
    """comments and blank lines are skipped"""
    path = tmp_path / "run.cfg"
    path.write_text("# run\nseed = 3\n\ntraining.depth=4  # shallow\nsweep.noise_levels = 0, 2\n")
    assert read_config_file(path) == {
        "seed": 3,
        "training.depth": 4,
        "sweep.noise_levels": (0, 2),
    }


def test_read_config_file_errors(tmp_path):
    """malformed lines name their line number"""
    path = tmp_path / "run.cfg"
    path.write_text("seed = 3\ndepth\n")
    with pytest.raises(TsaUsageError, match="line 2"):
        read_config_file(path)
    path.write_text("= 4\n")
    with pytest.raises(TsaUsageError):
        read_config_file(path)
    with pytest.raises(TsaUsageError):
        read_config_file(tmp_path / "missing.cfg")


def test_apply_entries():
    """run keys and dotted settings keys"""
    run = RunConfig()
    new = apply_entries(
        run,
        {
            "case": "a.case",
            "out": "results",
            "seed": 5,
            "training.ghm.z_bins": 20,
            "training.boosting_mode": "ordered",
        },
    )
    assert new.case_path == Path("a.case")
    assert new.output_dir == Path("results")
    assert new.seed == 5
    assert new.settings.training.ghm.z_bins == 20
    assert new.settings.training.boosting_mode == "ordered"
    # the original is untouched
    assert run.seed is None
    assert run.settings.training.ghm.z_bins == 10


@pytest.mark.parametrize(
    "entries",
    [
        {"depth": 3},
        {"training.depth": 0},
        {"training.nonsense": 1},
        {"nosection.depth": 1},
    ],
)
def test_apply_entries_errors(entries):
    """unknown keys and invalid values are usage errors"""
    with pytest.raises(TsaUsageError):
        apply_entries(RunConfig(), entries)


def test_load_run_config_precedence(tmp_path):
    """flags override the file, the file overrides the defaults"""
    path = tmp_path / "run.cfg"
    path.write_text("seed = 1\ntraining.depth = 4\ntraining.n_iterations = 50\n")
    run = load_run_config(path, {"seed": 9, "training.depth": None, "threads": 2})
    assert run.seed == 9
    assert run.threads == 2
    assert run.settings.training.depth == 4
    assert run.settings.training.n_iterations == 50
    assert run.settings.training.learning_rate == load_run_config().settings.training.learning_rate


def test_run_config_requirements(tmp_path):
    """missing seeds and paths are usage errors"""
    run = RunConfig(output_dir=tmp_path / "nested")
    with pytest.raises(TsaUsageError, match="--seed"):
        run.require_seed()
    with pytest.raises(TsaUsageError, match="--model"):
        run.require("model_path", "--model")
    path = run.out("x.csv")
    assert path.parent.is_dir()
    echo = run.echo()
    assert echo["seed"] is None
    assert echo["settings"]["training"]["depth"] == 6
