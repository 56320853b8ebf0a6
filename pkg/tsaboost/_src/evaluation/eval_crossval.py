"""Stratified k-fold cross-validation, hold-out splits and configuration comparisons."""
import logging
import time
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from joblib import delayed
from joblib import Parallel
from sklearn.model_selection import StratifiedKFold
from sklearn.model_selection import train_test_split

from tsaboost._src.boost.boost_ensemble import fit
from tsaboost._src.defaults.defaults_classes import default_settings
from tsaboost._src.evaluation.eval_metrics import confusion_and_metrics
from tsaboost._src.evaluation.eval_metrics import mean_report
from tsaboost._src.evaluation.eval_metrics import MetricsReport
from tsaboost._src.evaluation.eval_reports import SweepAxis
from tsaboost._src.evaluation.eval_reports import SweepResult
from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.input_checks import check_fraction
from tsaboost._src.input_checks import check_positive_int
from tsaboost._src.input_checks import check_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CVResult:
    """fold-averaged report, the per-fold reports and the test indices of every fold"""

    mean: MetricsReport
    folds: Tuple[MetricsReport, ...]
    test_folds: Tuple[np.ndarray, ...]


def stratified_folds(labels, k, seed):
    """
    (train, test) index pairs of a shuffled stratified k-fold partition.

    Raises
    ------
    TsaBadUserInput
        a present class has fewer than k samples
    """
    labels = np.asarray(labels)
    k = check_positive_int(k, "k", minimum=2)
    classes, counts = np.unique(labels, return_counts=True)
    for cls, cnt in zip(classes, counts):
        if cnt < k:
            raise TsaBadUserInput(
                f"class {cls} has {cnt} samples, fewer than the {k} folds requested"
            )
    skf = StratifiedKFold(n_splits=k, shuffle=True, random_state=check_seed(seed))
    return list(skf.split(np.zeros((len(labels), 1)), labels))


def evaluate_split(train, test, config):
    """train on `train`, evaluate on `test`; the wall time covers training only"""
    start = time.perf_counter()
    model = fit(train, config=config)
    wall = time.perf_counter() - start
    return confusion_and_metrics(model.predict_labels(test.features), test.labels, wall)


def kfold_cv(dataset, k=None, config=None, seed=None, threads=1):
    """
    Stratified k-fold cross-validation of the boosting setup `config`.

    Parameters
    ----------
    dataset: Dataset
    k: int, optional
        number of folds, default `defaults.sweep.k_folds`
    config: TrainingConfig, optional
        default `defaults.training`
    seed: int
        fold assignment seed
    threads: int, default=1
        folds evaluated in parallel

    Returns
    -------
    CVResult
    """
    k = default_settings.sweep.k_folds if k is None else k
    cfg = default_settings.training if config is None else config
    if seed is None:
        raise TsaBadUserInput("Input parameter `seed` is required for cross-validation.")
    folds = stratified_folds(dataset.labels, k, seed)
    reports = Parallel(n_jobs=check_positive_int(threads, "threads"))(
        delayed(evaluate_split)(dataset.subset(tr), dataset.subset(te), cfg)
        for tr, te in folds
    )
    result = CVResult(mean_report(reports), tuple(reports), tuple(te for _, te in folds))
    logger.info("%d-fold cv: %s", len(folds), result.mean.row("mean"))
    return result


def holdout_split(dataset, test_fraction=None, seed=None):
    """
    Stratified (train, test) split holding out `test_fraction` of the samples.

    A fraction of 0 returns the whole dataset and an empty test part.
    """
    frac = default_settings.sweep.holdout_fraction if test_fraction is None else test_fraction
    frac = check_fraction(frac, "test_fraction", 0.0, 1.0)
    seed = check_seed(seed)
    idx = np.arange(len(dataset))
    if frac == 0:
        return dataset, dataset.subset(idx[:0])
    labels = dataset.labels
    _, counts = np.unique(labels, return_counts=True)
    stratify = labels if counts.size > 1 and counts.min() >= 2 else None
    train_idx, test_idx = train_test_split(
        idx, test_size=frac, stratify=stratify, random_state=seed
    )
    return dataset.subset(np.sort(train_idx)), dataset.subset(np.sort(test_idx))


def compare_configs(dataset, configs, k=None, seed=None, threads=1):
    """
    Cross-validate several named boosting setups on identical folds.

    Parameters
    ----------
    configs: dict
        name -> TrainingConfig

    Returns
    -------
    (SweepResult, dict)
        the comparison table and the CVResult of every name
    """
    if not configs:
        raise TsaBadUserInput("Input parameter `configs` must not be empty.")
    results = {
        name: kfold_cv(dataset, k, cfg, seed, threads) for name, cfg in configs.items()
    }
    table = SweepResult(
        SweepAxis.CONFIG, tuple((name, res.mean) for name, res in results.items())
    )
    return table, results
