"""PMU placement plans and feature-subset studies."""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from tsaboost._src.evaluation.eval_crossval import kfold_cv
from tsaboost._src.evaluation.eval_reports import SweepAxis
from tsaboost._src.evaluation.eval_reports import SweepResult
from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.input_checks import check_positive_int
from tsaboost._src.input_checks import check_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PMUPlan:
    """
    Buses equipped with a phasor measurement unit.

    Duplicate bus ids are dropped, keeping the first occurrence.

    Examples
    --------
    >>> from tsaboost._src.evaluation.eval_pmu import PMUPlan
    >>> PMUPlan(4, (14, 11, 9, 14)).buses
    (14, 11, 9)
    """

    scheme_id: int
    buses: Tuple[int, ...]

    def __post_init__(self):
        buses = tuple(dict.fromkeys(int(b) for b in self.buses))
        if not buses:
            raise TsaBadUserInput("a PMU plan needs at least one bus")
        object.__setattr__(self, "buses", buses)

    @property
    def name(self):
        """report label of the plan"""
        return f"scheme {self.scheme_id}"


def _published_schemes():
    groups = (
        (8, 5, 6, 7, 14),
        (9, 1, 39, 17, 12),
        (2, 13, 25, 16, 18),
        (14, 11, 9, 4, 10),
    )
    plans, buses = [], ()
    for k, group in enumerate(groups, start=1):
        buses = buses + group
        plans.append(PMUPlan(k, buses))
    return tuple(plans)


# each scheme extends the previous one; scheme 4 holds 18 distinct buses
DEFAULT_PMU_SCHEMES = _published_schemes()


def pmu_feature_subset(plan, case):
    """
    Feature indices observable by the PMUs of `plan`.

    Voltage magnitude and angle of every equipped bus plus the active and reactive
    flow of every branch incident to it, sorted ascending.

    Examples
    --------
    >>> from tsaboost._src.grid.grid_case import load_case
    >>> from tsaboost._src.evaluation.eval_pmu import PMUPlan, pmu_feature_subset
    >>> pmu_feature_subset(PMUPlan(1, (8,)), load_case()).tolist()
    [7, 46, 88, 92, 93, 134, 138, 139]
    """
    a, b = case.n_buses, case.n_branches
    pos = case.bus_position
    unknown = [u for u in plan.buses if u not in pos]
    if unknown:
        raise TsaBadUserInput(f"PMU plan {plan.scheme_id} names unknown buses {unknown}")
    at = np.array([pos[u] for u in plan.buses], dtype=int)
    ends = case.branch_ends
    touched = np.flatnonzero(np.isin(ends, at).any(axis=1))
    idx = np.concatenate([at, a + at, 2 * a + touched, 2 * a + b + touched])
    return np.unique(idx)


def pmu_study(dataset, case, schemes=None, config=None, k=None, seed=None, threads=1):
    """
    Cross-validated accuracy with the features of every PMU scheme, preceded by the
    full-feature baseline under the setting "full". All runs share one fold seed.
    """
    schemes = DEFAULT_PMU_SCHEMES if schemes is None else tuple(schemes)
    if not schemes:
        raise TsaBadUserInput("Input parameter `schemes` must not be empty.")
    if dataset.n_features != case.n_features:
        raise TsaBadUserInput(
            f"dataset has {dataset.n_features} features, the case layout {case.n_features}"
        )
    base = kfold_cv(dataset, k, config, seed, threads)
    points = [("full", base.mean)]
    details = {"full": {"n_features": dataset.n_features}}
    for plan in schemes:
        cols = pmu_feature_subset(plan, case)
        res = kfold_cv(dataset.select_columns(cols), k, config, seed, threads)
        logger.info("%s (%d buses): %s", plan.name, len(plan.buses), res.mean.row(plan.name))
        points.append((plan.name, res.mean))
        details[plan.name] = {"buses": list(plan.buses), "n_features": int(cols.size)}
    return SweepResult(SweepAxis.PMU_SCHEME, tuple(points), details)


def bus_scores(importance, case):
    """
    Feature importance aggregated per bus in case order: V and theta scores go to
    their bus, branch flow scores are split half to each end.
    """
    a, b = case.n_buses, case.n_branches
    s = np.asarray(importance.scores, dtype=float)
    if s.size != case.n_features:
        raise TsaBadUserInput(
            f"importance covers {s.size} features, the case layout {case.n_features}"
        )
    per_bus = s[:a] + s[a : 2 * a]
    flow = s[2 * a : 2 * a + b] + s[2 * a + b :]
    ends = case.branch_ends
    np.add.at(per_bus, ends[:, 0], flow / 2)
    np.add.at(per_bus, ends[:, 1], flow / 2)
    return per_bus


def rank_pmu_buses(importance, case, count, scheme_id=0):
    """
    PMUPlan of the `count` buses with the highest aggregated importance, ties
    resolved towards lower bus ids.
    """
    count = check_positive_int(count, "count")
    if count > case.n_buses:
        raise TsaBadUserInput(
            f"Input parameter `count` must be <= {case.n_buses}.\nInstead received {count}."
        )
    scores = bus_scores(importance, case)
    ids = np.array([bus.id for bus in case.buses])
    order = np.lexsort((ids, -scores))
    return PMUPlan(scheme_id, tuple(int(i) for i in ids[order[:count]]))


def importance_plans(importance, case, counts=(5, 10, 15, 20)):
    """nested plans of the top buses, one per entry of `counts`, numbered from 1"""
    return tuple(
        rank_pmu_buses(importance, case, c, scheme_id=k)
        for k, c in enumerate(counts, start=1)
    )


def random_plans(case, count, n_draws=10, seed=None):
    """`n_draws` plans of `count` distinct buses drawn uniformly, numbered from 1"""
    count = check_positive_int(count, "count")
    rng = np.random.default_rng(check_seed(seed))
    ids = np.array([bus.id for bus in case.buses])
    return tuple(
        PMUPlan(k, tuple(int(i) for i in rng.choice(ids, count, replace=False)))
        for k in range(1, check_positive_int(n_draws, "n_draws") + 1)
    )
