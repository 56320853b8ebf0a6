"""Run configuration of the command line tool and its key=value file format."""
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from pathlib import Path
from typing import Optional

from tsaboost._src.defaults.defaults_classes import DefaultConfig
from tsaboost._src.defaults.defaults_utility import magic_to_dict
from tsaboost._src.exceptions import TsaUsageError

RUN_KEYS = ("case", "dataset", "model", "out", "seed", "threads")


@dataclass
class RunConfig:
    """
    Paths, seed and library settings of one command.

    Merge order: package defaults < `--config` file < command line flags.
    """

    case_path: Optional[Path] = None
    dataset_path: Optional[Path] = None
    model_path: Optional[Path] = None
    output_dir: Path = Path(".")
    seed: Optional[int] = None
    threads: int = 1
    settings: DefaultConfig = field(default_factory=DefaultConfig)

    def require_seed(self):
        """the seed, a usage error when it was not given"""
        if self.seed is None:
            raise TsaUsageError("--seed is required for this command")
        return self.seed

    def require(self, attr, flag):
        """value of path attribute `attr`, a usage error naming `flag` when unset"""
        val = getattr(self, attr)
        if val is None:
            raise TsaUsageError(f"{flag} is required for this command")
        return val

    def out(self, name):
        """`name` inside the output directory, created on demand"""
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / name

    def echo(self):
        """JSON-ready summary written into every report"""
        return {
            "case": None if self.case_path is None else str(self.case_path),
            "dataset": None if self.dataset_path is None else str(self.dataset_path),
            "model": None if self.model_path is None else str(self.model_path),
            "seed": self.seed,
            "threads": self.threads,
            "settings": self.settings.as_dict(),
        }


def parse_value(text):
    """
    Typed value of a config file entry.

    Examples
    --------
    >>> from tsaboost._src.cli.cli_config import parse_value
    >>> parse_value("4"), parse_value("0.1"), parse_value("off"), parse_value("0, 1, 2")
    (4, 0.1, False, (0, 1, 2))
    """
    text = text.strip()
    low = text.lower()
    if low in ("true", "on", "yes"):
        return True
    if low in ("false", "off", "no"):
        return False
    if "," in text:
        return tuple(parse_value(t) for t in text.split(",") if t.strip())
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def read_config_file(path):
    """
    Flat dict of a key=value file. Blank lines and `#` comments are ignored,
    library settings use dotted keys such as `training.depth=4`.
    """
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as err:
        raise TsaUsageError(f"cannot read config file {path}: {err}") from err
    entries = {}
    for num, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep or not key.strip():
            raise TsaUsageError(f"{path}, line {num}: expected key=value, got {line!r}")
        entries[key.strip()] = parse_value(val)
    return entries


def apply_entries(run, entries):
    """RunConfig updated by flat `entries` (run keys and dotted settings keys)"""
    changes = {}
    settings = {}
    for key, val in entries.items():
        if key in RUN_KEYS:
            changes[key] = val
        elif "." in key:
            settings[key] = val
        else:
            raise TsaUsageError(f"unknown config key {key!r}")
    new = replace(run, settings=run.settings.copy())
    paths = {"case": "case_path", "dataset": "dataset_path", "model": "model_path"}
    for key, val in changes.items():
        if key in paths:
            setattr(new, paths[key], Path(str(val)))
        elif key == "out":
            new.output_dir = Path(str(val))
        else:
            setattr(new, key, val)
    if settings:
        try:
            new.settings.update(magic_to_dict(settings, separator="."))
        except (AttributeError, TypeError, ValueError) as err:
            raise TsaUsageError(f"invalid setting: {err}") from err
    return new


def load_run_config(config_file=None, overrides=None):
    """
    RunConfig from the package defaults, an optional key=value file and the
    command line `overrides` (flat dict, None values skipped), in this order.

    Examples
    --------
    >>> from tsaboost._src.cli.cli_config import load_run_config
    >>> run = load_run_config(overrides={"seed": 7, "training.depth": 4})
    >>> run.seed, run.settings.training.depth
    (7, 4)
    """
    run = RunConfig()
    if config_file is not None:
        run = apply_entries(run, read_config_file(config_file))
    if overrides:
        run = apply_entries(run, {k: v for k, v in overrides.items() if v is not None})
    return run
