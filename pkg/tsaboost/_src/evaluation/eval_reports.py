"""Sweep results and their CSV, JSON and gnuplot writers."""
import enum
import json
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path
from typing import Tuple

import numpy as np
import pandas as pd

from tsaboost._src.evaluation.eval_metrics import MetricsReport
from tsaboost._src.exceptions import TsaBadUserInput

SWEEP_COLUMNS = ("setting", "acc", "far", "frr", "wall_time_s")


class SweepAxis(enum.Enum):
    """quantity varied by a sweep"""

    NOISE_LEVEL = "NoiseLevel"
    STABLE_RATIO = "StableRatio"
    PMU_SCHEME = "PMUScheme"
    CONFIG = "Config"


@dataclass(frozen=True, eq=False)
class SweepResult:
    """metrics per sweep setting, in setting order"""

    axis: SweepAxis
    points: Tuple[Tuple[str, MetricsReport], ...]
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.points:
            raise TsaBadUserInput("a sweep needs at least one point")
        settings = [s for s, _ in self.points]
        if len(set(settings)) != len(settings):
            raise TsaBadUserInput(f"sweep settings must be unique, got {settings}")

    @property
    def settings(self):
        """settings in sweep order"""
        return tuple(s for s, _ in self.points)

    def report(self, setting):
        """MetricsReport of `setting`"""
        return dict(self.points)[setting]

    def to_frame(self):
        """one row per point with the columns setting, acc, far, frr, wall_time_s"""
        def _rate(v):
            return np.nan if v is None else v

        return pd.DataFrame(
            [(s, r.acc, _rate(r.far), _rate(r.frr), r.wall_time_s) for s, r in self.points],
            columns=list(SWEEP_COLUMNS),
        )

    def as_dict(self):
        """JSON-ready dict"""
        return {
            "axis": self.axis.value,
            "points": [{"setting": s, **r.as_dict()} for s, r in self.points],
            "details": self.details,
        }


def write_sweep_csv(result, path):
    """CSV with one row per sweep point, undefined rates as empty cells"""
    result.to_frame().to_csv(path, index=False, float_format="%.6g", lineterminator="\n")
    return Path(path)


def write_gnuplot(result, path, title=""):
    """
    Whitespace-separated data file with a `#` comment header; the first column
    numbers the points, undefined rates are written as NaN.
    """
    lines = [f"# {title}"] if title else []
    lines.append("# index setting acc far frr wall_time_s")
    for k, (setting, rep) in enumerate(result.points):
        vals = [np.nan if v is None else v for v in (rep.acc, rep.far, rep.frr)]
        cells = " ".join(f"{v:.6g}" if np.isfinite(v) else "NaN" for v in vals)
        lines.append(f"{k} \"{setting}\" {cells} {rep.wall_time_s:.6g}")
    Path(path).write_text("\n".join(lines) + "\n")
    return Path(path)


def _jsonable(obj):
    if isinstance(obj, (SweepResult, MetricsReport)):
        return _jsonable(obj.as_dict())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def write_json_report(path, command, results, config=None, case_digest=""):
    """
    Structured report holding the results with full confusion counts, the config
    echo and the case digest.
    """
    doc = {
        "command": command,
        "case_digest": case_digest,
        "config": _jsonable(config or {}),
        "results": _jsonable(results),
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
    return Path(path)
