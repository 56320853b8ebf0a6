"""
The `tsaboost.evaluation` subpackage gives access to the metrics, the
cross-validation protocol and the noise, imbalance and PMU experiments.
"""

__all__ = [
    "ConfusionMatrix",
    "MetricsReport",
    "confusion_and_metrics",
    "kfold_cv",
    "holdout_split",
    "compare_configs",
    "inject_noise",
    "noise_sweep",
    "imbalance_experiment",
    "PMUPlan",
    "DEFAULT_PMU_SCHEMES",
    "pmu_feature_subset",
    "pmu_study",
    "rank_pmu_buses",
    "importance_plans",
    "SweepAxis",
    "SweepResult",
    "write_sweep_csv",
    "write_gnuplot",
    "write_json_report",
]

from tsaboost._src.evaluation.eval_crossval import compare_configs
from tsaboost._src.evaluation.eval_crossval import holdout_split
from tsaboost._src.evaluation.eval_crossval import kfold_cv
from tsaboost._src.evaluation.eval_metrics import confusion_and_metrics
from tsaboost._src.evaluation.eval_metrics import ConfusionMatrix
from tsaboost._src.evaluation.eval_metrics import MetricsReport
from tsaboost._src.evaluation.eval_pmu import DEFAULT_PMU_SCHEMES
from tsaboost._src.evaluation.eval_pmu import importance_plans
from tsaboost._src.evaluation.eval_pmu import pmu_feature_subset
from tsaboost._src.evaluation.eval_pmu import pmu_study
from tsaboost._src.evaluation.eval_pmu import PMUPlan
from tsaboost._src.evaluation.eval_pmu import rank_pmu_buses
from tsaboost._src.evaluation.eval_reports import SweepAxis
from tsaboost._src.evaluation.eval_reports import SweepResult
from tsaboost._src.evaluation.eval_reports import write_gnuplot
from tsaboost._src.evaluation.eval_reports import write_json_report
from tsaboost._src.evaluation.eval_reports import write_sweep_csv
from tsaboost._src.evaluation.eval_sweeps import imbalance_experiment
from tsaboost._src.evaluation.eval_sweeps import inject_noise
from tsaboost._src.evaluation.eval_sweeps import noise_sweep
