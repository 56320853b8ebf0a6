import numpy as np
import pytest

from tsaboost._src.defaults.defaults_classes import TrainingConfig
from tsaboost._src.evaluation.eval_reports import SweepAxis
from tsaboost._src.evaluation.eval_sweeps import _ratio_counts
from tsaboost._src.evaluation.eval_sweeps import derived_seed
from tsaboost._src.evaluation.eval_sweeps import imbalance_experiment
from tsaboost._src.evaluation.eval_sweeps import inject_noise
from tsaboost._src.evaluation.eval_sweeps import noise_sweep
from tsaboost._src.exceptions import TsaBadUserInput


def test_inject_noise_zero_level(separable):
    """a zero level leaves the dataset untouched"""
    assert inject_noise(separable, 0, seed=1) is separable


def test_inject_noise_negative_level(separable):
    """negative levels raise"""
    with pytest.raises(TsaBadUserInput):
        inject_noise(separable, -1, seed=1)


def test_inject_noise_scale(make_dataset):
    """the perturbation std is level percent of the feature std"""
    ds = make_dataset(n=20000, d=2, seed=4)
    noisy = inject_noise(ds, 10, seed=2)
    delta = noisy.features - ds.features
    np.testing.assert_allclose(delta.std(axis=0), 0.1 * ds.features.std(axis=0), rtol=0.05)
    np.testing.assert_array_equal(noisy.labels, ds.labels)


def test_inject_noise_seeded(separable):
    """same seed, same noise"""
    a = inject_noise(separable, 5, seed=3).features
    b = inject_noise(separable, 5, seed=3).features
    c = inject_noise(separable, 5, seed=4).features
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_derived_seed():
    """derived seeds depend on every key"""
    assert derived_seed(1, 0) == derived_seed(1, 0)
    assert derived_seed(1, 0) != derived_seed(1, 1)
    assert derived_seed(1, 0) != derived_seed(2, 0)
    assert derived_seed(1, 0) >= 0
    with pytest.raises(TsaBadUserInput):
        derived_seed(-3, 0)


def test_noise_sweep(separable, small_config):
    """one point per level, named by the level"""
    res = noise_sweep(separable, levels=(0, 50), config=small_config, k=3, seed=2)
    assert res.axis == SweepAxis.NOISE_LEVEL
    assert res.settings == ("0%", "50%")
    assert res.details == {"levels": [0, 50]}
    assert res.report("0%").acc >= 0.85


def test_noise_sweep_needs_seed(separable, small_config):
    """no implicit seed"""
    with pytest.raises(TsaBadUserInput):
        noise_sweep(separable, levels=(0,), config=small_config, k=3)


@pytest.mark.parametrize(
    "args, expected",
    [
        ((1, 100, 1000, 1000), (50, 50, 1.0)),
        ((3, 100, 1000, 50), (75, 25, 1.0)),
        ((19, 100, 1000, 1000), (95, 5, 1.0)),
        ((1, 100, 25, 1000), (25, 25, 0.5)),
        ((3, 100, 1000, 5), (15, 5, 0.2)),
    ],
)
def test_ratio_counts(args, expected):
    """ratios that do not fit are scaled down proportionally"""
    n_s, n_u, scale = _ratio_counts(*args)
    assert (n_s, n_u) == expected[:2]
    np.testing.assert_allclose(scale, expected[2])


def _configs():
    return {
        "ghm": TrainingConfig(n_iterations=15, depth=2, learning_rate=0.3),
        "plain": TrainingConfig(
            n_iterations=15, depth=2, learning_rate=0.3, ghm={"enabled": False}
        ),
    }


def test_imbalance_experiment(make_dataset):
    """training counts follow the ratio, the test set is shared"""
    ds = make_dataset(n=300, seed=1)
    res = imbalance_experiment(
        ds, _configs(), train_size=40, test_size=60, stable_ratios=(1, 3), seed=0
    )
    assert set(res) == {"ghm", "plain"}
    for sweep in res.values():
        assert sweep.axis == SweepAxis.STABLE_RATIO
        assert sweep.settings == ("1:1", "3:1")
        for _, rep in sweep.points:
            assert rep.counts.total == 60
    details = res["ghm"].details
    assert details["test_size"] == 60
    counts = [(r["n_stable"], r["n_unstable"]) for r in details["ratios"]]
    assert counts == [(20, 20), (30, 10)]
    for r in details["ratios"]:
        idx = np.array(r["train_indices"])
        assert ds.labels[idx].sum() == r["n_stable"]


def test_imbalance_experiment_reproducible(make_dataset):
    """the seed fixes the subsamples"""
    ds = make_dataset(n=200, seed=2)
    kw = dict(train_size=30, test_size=50, stable_ratios=(3,), seed=4)
    a = imbalance_experiment(ds, _configs(), **kw)
    b = imbalance_experiment(ds, _configs(), **kw)
    assert a["ghm"].details == b["ghm"].details
    assert a["plain"].report("3:1").acc == b["plain"].report("3:1").acc


def test_imbalance_experiment_bad_inputs(make_dataset):
    """missing seed, single class or an oversized test set raise"""
    ds = make_dataset(n=100)
    kw = dict(train_size=20, test_size=30, stable_ratios=(1,))
    with pytest.raises(TsaBadUserInput):
        imbalance_experiment(ds, _configs(), **kw)
    with pytest.raises(TsaBadUserInput):
        imbalance_experiment(make_dataset(n=100, stable_share=0.0), _configs(), seed=0, **kw)
    with pytest.raises(TsaBadUserInput):
        imbalance_experiment(
            ds, _configs(), train_size=20, test_size=99, stable_ratios=(1,), seed=0
        )
