"""Confusion counts and the ACC / FAR / FRR metrics, stable = positive class."""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sklearn.metrics import confusion_matrix

from tsaboost._src.exceptions import TsaBadInputShape
from tsaboost._src.exceptions import TsaBadUserInput


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts with stable (y=1) as the positive class"""

    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self):
        """number of evaluated samples"""
        return self.tp + self.fp + self.fn + self.tn

    def __add__(self, other):
        return ConfusionMatrix(
            self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.tn + other.tn
        )


def _percent(val):
    return "n/a" if val is None else f"{100 * val:.2f}%"


@dataclass(frozen=True, eq=False)
class MetricsReport:
    """
    Accuracy, false alarm rate and false rejection rate of one evaluation.

    `far` is None when no unstable sample was evaluated, `frr` is None when no
    stable sample was evaluated.
    """

    acc: float
    far: Optional[float]
    frr: Optional[float]
    counts: ConfusionMatrix
    wall_time_s: float = 0.0

    def row(self, name):
        """
        One-line summary.

        Examples
        --------
        >>> from tsaboost._src.evaluation.eval_metrics import ConfusionMatrix, MetricsReport
        >>> rep = MetricsReport(0.9871, 0.0138, 0.0128, ConfusionMatrix(0, 0, 0, 0), 18.42)
        >>> rep.row("GHM-CatBoost")
        'GHM-CatBoost, 98.71%, 1.38%, 1.28%, 18.42s'
        """
        return (
            f"{name}, {_percent(self.acc)}, {_percent(self.far)}, {_percent(self.frr)}, "
            f"{self.wall_time_s:.2f}s"
        )

    def as_dict(self):
        """JSON-ready dict including the confusion counts"""
        c = self.counts
        return {
            "acc": self.acc,
            "far": self.far,
            "frr": self.frr,
            "wall_time_s": self.wall_time_s,
            "counts": {"tp": c.tp, "fp": c.fp, "fn": c.fn, "tn": c.tn},
        }


def metrics_from_counts(counts, wall_time_s=0.0):
    """
    MetricsReport of a confusion matrix.

    Examples
    --------
    >>> from tsaboost._src.evaluation.eval_metrics import ConfusionMatrix, metrics_from_counts
    >>> rep = metrics_from_counts(ConfusionMatrix(tp=90, fp=2, fn=0, tn=8))
    >>> rep.acc, rep.far, rep.frr
    (0.98, 0.2, 0.0)
    """
    c = counts
    if c.total == 0:
        raise TsaBadUserInput("cannot compute metrics of an empty evaluation")
    far = c.fp / (c.fp + c.tn) if c.fp + c.tn else None
    frr = c.fn / (c.tp + c.fn) if c.tp + c.fn else None
    return MetricsReport((c.tp + c.tn) / c.total, far, frr, c, float(wall_time_s))


def confusion_and_metrics(predicted, actual, wall_time_s=0.0):
    """
    Confusion counts and metrics of binary predictions against actual labels.

    Parameters
    ----------
    predicted, actual: array_like of {0, 1}, equal non-zero length
    wall_time_s: float, default=0.0
        training time carried into the report

    Returns
    -------
    MetricsReport
    """
    predicted = np.asarray(predicted)
    actual = np.asarray(actual)
    if predicted.shape != actual.shape or predicted.ndim != 1:
        raise TsaBadInputShape(
            "Input parameters `predicted` and `actual` must be 1D of equal length.\n"
            f"Instead received shapes {predicted.shape} and {actual.shape}."
        )
    if predicted.size == 0:
        raise TsaBadUserInput("Input parameters `predicted` and `actual` must not be empty.")
    tn, fp, fn, tp = confusion_matrix(actual, predicted, labels=[0, 1]).ravel()
    return metrics_from_counts(
        ConfusionMatrix(int(tp), int(fp), int(fn), int(tn)), wall_time_s
    )


def mean_report(reports):
    """
    Fold average: mean acc, mean far and frr over the folds where they are defined,
    mean wall time and summed counts.
    """
    reports = list(reports)
    if not reports:
        raise TsaBadUserInput("Input parameter `reports` must not be empty.")

    def _mean(vals):
        vals = [v for v in vals if v is not None]
        return float(np.mean(vals)) if vals else None

    counts = reports[0].counts
    for rep in reports[1:]:
        counts = counts + rep.counts
    return MetricsReport(
        acc=float(np.mean([r.acc for r in reports])),
        far=_mean(r.far for r in reports),
        frr=_mean(r.frr for r in reports),
        counts=counts,
        wall_time_s=float(np.mean([r.wall_time_s for r in reports])),
    )
