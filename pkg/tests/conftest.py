import os

import numpy as np
import pytest

import tsaboost as tsa
from tsaboost._src.defaults.defaults_classes import TrainingConfig
from tsaboost._src.grid.grid_case import load_case
from tsaboost._src.sim.sim_dataset import Dataset


def pytest_collection_modifyitems(config, items):
    """skip end-to-end trend checks unless TSA_RUN_SLOW=1"""
    if os.environ.get("TSA_RUN_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set TSA_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def fresh_defaults():
    """every test starts from the hard coded library defaults"""
    tsa.defaults.reset()
    yield
    tsa.defaults.reset()


@pytest.fixture(scope="session")
def case39():
    """the bundled 39-bus case"""
    return load_case()


def make_separable(n=200, d=4, seed=0, stable_share=0.5):
    """labels follow x_0 > threshold, the other columns are noise"""
    rng = np.random.default_rng(seed)
    x = rng.uniform(0, 1, size=(n, d))
    labels = (x[:, 0] > 1 - stable_share).astype(int)
    return Dataset.from_arrays(x, labels)


@pytest.fixture
def separable():
    """200 samples, 4 features, perfectly separable by feature 0"""
    return make_separable()


@pytest.fixture
def small_config():
    """fast boosting setup for unit tests"""
    return TrainingConfig(n_iterations=20, depth=2, learning_rate=0.3)


@pytest.fixture
def make_dataset():
    """factory of thresholded toy datasets, see `make_separable`"""
    return make_separable
