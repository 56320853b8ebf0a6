import pytest

import tsaboost as tsa
from tsaboost._src.defaults.defaults_classes import DefaultConfig
from tsaboost._src.defaults.defaults_classes import TrainingConfig
from tsaboost._src.defaults.defaults_utility import SUPPORTED_BOOSTING_MODES


bad_inputs = {
    "grid_load_min": (0, -0.5, "low"),  # float>0
    "grid_load_max": (0,),  # float>0
    "grid_global_load_factor": ("notbool", 1),  # bool
    "grid_loss_fraction": (-0.01,),  # float>=0
    "grid_v_min": (0,),  # float>0
    "grid_max_redraws": (-1, 2.5),  # int>=0
    "grid_pf_tolerance": (0,),  # float>0
    "grid_pf_max_iterations": (0,),  # int>=1
    "sim_dt": (0, -0.01),  # float>0
    "sim_horizon": (0,),  # float>0
    "sim_n_scenarios": (0, 1.5),  # int>=1
    "sim_fault_position_min": (-0.1, 1.1),  # 0<=float<=1
    "sim_clearing_time_max": (0,),  # float>0
    "sim_frequency": (0,),  # float>0
    "sim_max_failure_fraction": (1.5,),  # 0<=float<=1
    "sim_skip_islanding_faults": ("yes", 1),  # bool
    "sim_max_class_rounds": (-1, 1.5),  # int>=0
    "training_n_iterations": (0, "many"),  # int>=1
    "training_depth": (0, 17, 2.5, True),  # 1<=int<=16
    "training_learning_rate": (0, 1.5),  # 0<float<=1
    "training_boosting_mode": ("fancy", 3),  # plain, ordered
    "training_n_permutations": (0,),  # int>=1
    "training_threshold_candidates_per_feature": (0, 2000),  # 1<=int<=1024
    "training_min_samples_per_leaf": (0,),  # int>=1
    "training_rng_seed": (-1,),  # int>=0
    "training_ghm_enabled": ("yes", 1),  # bool
    "training_ghm_z_bins": (0, 2.5),  # int>=1
    "training_ghm_momentum": (-0.1, 1.0),  # 0<=float<1
    "sweep_k_folds": (1,),  # int>=2
    "sweep_noise_levels": ((0, -1),),  # iterable of float>=0
    "sweep_stable_ratios": ((1, 0),),  # iterable of float>0
    "sweep_train_size": (0,),  # int>=1
    "sweep_holdout_fraction": (-0.1, 1.0),  # 0<=float<1
    "sweep_pmu_top": (0,),  # int>=1
}


def get_bad_test_data():
    """create parametrized bad settings test data"""
    bad_test_data = []
    for k, tup in bad_inputs.items():
        for v in tup:
            bad_test_data.append((k, v))
    return bad_test_data


@pytest.mark.parametrize(("key", "value"), get_bad_test_data())
def test_defaults_bad_inputs(key, value):
    """testing defaults setting on bad inputs"""
    c = DefaultConfig().reset()
    with pytest.raises(ValueError):
        c.update(**{key: value})


good_inputs = {
    "grid_load_min": (0.5, 1),
    "grid_global_load_factor": (True, False),
    "grid_v_max": (1.1,),
    "grid_max_redraws": (0, 10),
    "sim_dt": (0.01,),
    "sim_n_scenarios": (1, 500),
    "sim_fault_position_max": (0, 1),
    "sim_skip_islanding_faults": (True, False),
    "sim_max_class_rounds": (0, 3),
    "training_n_iterations": (1, 200),
    "training_depth": (1, 4, 16),
    "training_learning_rate": (0.05, 1),
    "training_boosting_mode": SUPPORTED_BOOSTING_MODES,
    "training_threshold_candidates_per_feature": (1, 254),
    "training_ghm_enabled": (True, False),
    "training_ghm_z_bins": (1, 30),
    "training_ghm_momentum": (0, 0.75),
    "sweep_k_folds": (2, 10),
    "sweep_noise_levels": ((0.0, 0.5),),
    "sweep_stable_ratios": ((1.0, 4.0),),
    "sweep_holdout_fraction": (0, 0.3),
    "sweep_pmu_top": (3,),
}


def get_good_test_data():
    """create parametrized good settings test data"""
    good_test_data = []
    for key, tup in good_inputs.items():
        for value in tup:
            good_test_data.append((key, value, value))
    return good_test_data


def _get_nested(obj, key):
    """resolve a magic key against the nested property classes"""
    names = tuple(obj._property_names_generator())  # pylint: disable=protected-access
    for name in sorted(names, key=len, reverse=True):
        if key == name:
            return getattr(obj, name)
        if key.startswith(name + "_"):
            return _get_nested(getattr(obj, name), key[len(name) + 1 :])
    raise KeyError(key)


@pytest.mark.parametrize(("key", "value", "expected"), get_good_test_data())
def test_defaults_good_inputs(key, value, expected):
    """testing defaults setting on good inputs"""
    c = DefaultConfig()
    c.update(**{key: value})
    v0 = _get_nested(c, key)
    assert v0 == expected, f"{key} should be {expected}, but received {v0} instead"


def test_boosting_mode_is_lowered():
    """mode names are case insensitive"""
    assert TrainingConfig(boosting_mode="Ordered").boosting_mode == "ordered"


@pytest.mark.parametrize("section", ["grid", "sim", "training", "sweep", "training_ghm"])
def test_bad_default_classes(section):
    """testing properties which take classes as properties"""
    c = DefaultConfig().reset()
    with pytest.raises(ValueError):
        c.update(**{section: "bad class"})


def test_unknown_property():
    """frozen property classes reject unknown names"""
    with pytest.raises(AttributeError):
        DefaultConfig().update(training_colour=3)
    with pytest.raises(AttributeError):
        tsa.defaults.training.colour = 3


def test_resetting_defaults():
    """test setting and resetting the config"""
    tsa.defaults.training.n_iterations = 42
    tsa.defaults.training.ghm.z_bins = 3
    assert tsa.defaults.training.n_iterations == 42, "setting config failed"
    tsa.defaults.reset()
    assert tsa.defaults.training.n_iterations == 500, "resetting config failed"
    assert tsa.defaults.training.ghm.z_bins == 10, "resetting config failed"


def test_nested_kwargs():
    """property classes accept nested dicts and magic keys alike"""
    a = TrainingConfig(ghm={"z_bins": 4, "momentum": 0.5}, depth=3)
    b = TrainingConfig(ghm_z_bins=4, ghm_momentum=0.5, depth=3)
    assert a == b
    assert a.as_dict(flatten=True)["ghm.z_bins"] == 4


def test_copy_is_independent():
    """copies do not share nested sections"""
    c = DefaultConfig()
    d = c.copy()
    d.training.ghm.enabled = False
    assert c.training.ghm.enabled is True
