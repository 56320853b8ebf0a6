"""Measurement-noise and class-imbalance experiments."""
import logging

import numpy as np
from sklearn.model_selection import train_test_split

from tsaboost._src.defaults.defaults_classes import default_settings
from tsaboost._src.evaluation.eval_crossval import evaluate_split
from tsaboost._src.evaluation.eval_crossval import kfold_cv
from tsaboost._src.evaluation.eval_reports import SweepAxis
from tsaboost._src.evaluation.eval_reports import SweepResult
from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.input_checks import check_positive_int
from tsaboost._src.input_checks import check_seed

logger = logging.getLogger(__name__)


def derived_seed(seed, *keys):
    """integer seed derived from `seed` and the integer `keys`"""
    return int(np.random.SeedSequence([check_seed(seed), *keys]).generate_state(1)[0])


def inject_noise(dataset, level_percent, seed):
    """
    Add Gaussian noise scaled to every feature's spread.

    x <- x + (level_percent / 100) * sigma_f * z with z standard normal and sigma_f
    the population standard deviation of feature f over `dataset`. Labels are kept.

    Examples
    --------
    >>> from tsaboost._src.sim.sim_dataset import Dataset
    >>> from tsaboost._src.evaluation.eval_sweeps import inject_noise
    >>> ds = Dataset.from_arrays([[1.0, 5.0], [3.0, 5.0]], [1, 0])
    >>> noisy = inject_noise(ds, 100, seed=0)
    >>> noisy.features[:, 1].tolist()
    [5.0, 5.0]
    """
    if not level_percent >= 0:
        raise TsaBadUserInput(
            f"Input parameter `level_percent` must be >=0.\nInstead received {level_percent!r}."
        )
    if level_percent == 0:
        return dataset
    x = dataset.features
    sigma = x.std(axis=0)
    z = np.random.default_rng(check_seed(seed)).standard_normal(x.shape)
    return dataset.with_features(x + (level_percent / 100) * sigma * z)


def noise_sweep(dataset, levels=None, config=None, k=None, seed=None, threads=1):
    """
    k-fold accuracy under increasing measurement noise.

    Every level perturbs the clean dataset with its own derived noise seed and is
    evaluated on the same fold assignment.

    Returns
    -------
    SweepResult
        settings are the levels formatted as "<level>%"
    """
    levels = default_settings.sweep.noise_levels if levels is None else tuple(levels)
    if seed is None:
        raise TsaBadUserInput("Input parameter `seed` is required for the noise sweep.")
    points = []
    for i, level in enumerate(levels):
        noisy = inject_noise(dataset, level, derived_seed(seed, i))
        res = kfold_cv(noisy, k, config, seed, threads)
        logger.info("noise %g%%: %s", level, res.mean.row("cv"))
        points.append((f"{level:g}%", res.mean))
    return SweepResult(SweepAxis.NOISE_LEVEL, tuple(points), {"levels": list(levels)})


def _ratio_counts(ratio, train_size, n_stable, n_unstable):
    """(stable, unstable) training counts of a stable:unstable ratio, scaled down to the pools"""
    want_u = max(1, int(round(train_size / (ratio + 1))))
    want_s = train_size - want_u
    scale = 1.0
    if want_s > n_stable:
        scale = min(scale, n_stable / want_s)
    if want_u > n_unstable:
        scale = min(scale, n_unstable / want_u)
    return int(np.floor(want_s * scale)), int(np.floor(want_u * scale)), scale


def imbalance_experiment(
    dataset,
    configs,
    train_size=None,
    test_size=None,
    stable_ratios=None,
    seed=None,
):
    """
    Train every named setup on training sets of a prescribed stable:unstable ratio.

    A fixed stratified test set of `test_size` samples keeps the natural class mix;
    training sets are drawn without replacement from the rest. Ratios that do not
    fit the available samples are scaled down proportionally, ratios leaving an
    empty class are skipped.

    Parameters
    ----------
    dataset: Dataset
    configs: dict
        name -> TrainingConfig, e.g. GHM on and GHM off
    train_size, test_size: int, optional
        default `defaults.sweep.train_size`, `defaults.sweep.test_size`
    stable_ratios: sequence of float, optional
        default `defaults.sweep.stable_ratios`
    seed: int

    Returns
    -------
    dict
        name -> SweepResult with settings "<ratio>:1"; `details` holds the realized
        training counts and subsample indices
    """
    sweep = default_settings.sweep
    train_size = check_positive_int(sweep.train_size if train_size is None else train_size, "train_size")
    test_size = check_positive_int(sweep.test_size if test_size is None else test_size, "test_size")
    ratios = sweep.stable_ratios if stable_ratios is None else tuple(stable_ratios)
    if seed is None:
        raise TsaBadUserInput("Input parameter `seed` is required for the imbalance experiment.")
    seed = check_seed(seed)
    labels = dataset.labels
    n = len(dataset)
    if np.unique(labels).size < 2:
        raise TsaBadUserInput("the imbalance experiment needs both classes")
    if test_size >= n - 1:
        raise TsaBadUserInput(
            f"Input parameter `test_size` must be smaller than the dataset ({n} samples).\n"
            f"Instead received {test_size}."
        )

    idx = np.arange(n)
    pool_idx, test_idx = train_test_split(
        idx, test_size=test_size, stratify=labels, random_state=seed
    )
    test = dataset.subset(np.sort(test_idx))
    pool_idx = np.sort(pool_idx)
    stable_pool = pool_idx[labels[pool_idx] == 1]
    unstable_pool = pool_idx[labels[pool_idx] == 0]

    points = {name: [] for name in configs}
    details = {"test_size": len(test), "ratios": []}
    for i, ratio in enumerate(ratios):
        n_s, n_u, scale = _ratio_counts(ratio, train_size, len(stable_pool), len(unstable_pool))
        setting = f"{ratio:g}:1"
        if n_s < 1 or n_u < 1:
            logger.warning("ratio %s skipped: not enough samples", setting)
            continue
        if scale < 1:
            logger.warning(
                "ratio %s scaled down to %d stable + %d unstable samples", setting, n_s, n_u
            )
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        train_idx = np.sort(
            np.concatenate(
                [
                    rng.choice(stable_pool, n_s, replace=False),
                    rng.choice(unstable_pool, n_u, replace=False),
                ]
            )
        )
        train = dataset.subset(train_idx)
        details["ratios"].append(
            {"setting": setting, "n_stable": n_s, "n_unstable": n_u, "scale": scale,
             "train_indices": train_idx.tolist()}
        )
        for name, cfg in configs.items():
            rep = evaluate_split(train, test, cfg)
            logger.info("ratio %s, %s: %s", setting, name, rep.row(name))
            points[name].append((setting, rep))

    if not details["ratios"]:
        raise TsaBadUserInput("no stable:unstable ratio is feasible for this dataset")
    return {
        name: SweepResult(SweepAxis.STABLE_RATIO, tuple(pts), details)
        for name, pts in points.items()
    }
