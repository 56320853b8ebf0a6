"""Package level config defaults"""

DEFAULTS = {
    "grid": {
        "load_min": 0.7,
        "load_max": 1.3,
        "global_load_factor": False,
        "loss_fraction": 0.03,
        "v_min": 0.95,
        "v_max": 1.05,
        "max_redraws": 50,
        "pf_tolerance": 1e-6,
        "pf_max_iterations": 30,
    },
    "sim": {
        "dt": 0.005,
        "horizon": 10.0,
        "n_scenarios": 3000,
        "fault_position_min": 0.1,
        "fault_position_max": 0.9,
        "clearing_time_min": 0.1,
        "clearing_time_max": 0.3,
        "fault_conductance": 1e6,
        "frequency": 60.0,
        "max_failure_fraction": 0.2,
        "skip_islanding_faults": True,
        "max_class_rounds": 5,
    },
    "training": {
        "n_iterations": 500,
        "depth": 6,
        "learning_rate": 0.1,
        "boosting_mode": "plain",
        "n_permutations": 4,
        "threshold_candidates_per_feature": 32,
        "min_samples_per_leaf": 1,
        "rng_seed": 0,
        "ghm": {
            "enabled": True,
            "z_bins": 10,
            "momentum": 0.0,
        },
    },
    "sweep": {
        "k_folds": 5,
        "noise_levels": (0.0, 1.0, 2.0, 3.0),
        "stable_ratios": (1.0, 3.0, 9.0, 19.0),
        "train_size": 4000,
        "test_size": 1897,
        "holdout_fraction": 0.2,
        "pmu_top": 5,
    },
}
