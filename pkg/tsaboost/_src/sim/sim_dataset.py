"""Labeled snapshot datasets: scenario simulation, generation and the CSV codec."""
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from joblib import delayed
from joblib import Parallel

from tsaboost._src.defaults.defaults_classes import default_settings
from tsaboost._src.exceptions import DatasetFormatError
from tsaboost._src.exceptions import GenerationFailure
from tsaboost._src.exceptions import OperatingPointError
from tsaboost._src.exceptions import SingularJacobianError
from tsaboost._src.exceptions import SingularNetworkError
from tsaboost._src.exceptions import TsaBadInputShape
from tsaboost._src.exceptions import TsaMissingInput
from tsaboost._src.grid.grid_case import case_digest
from tsaboost._src.grid.grid_case import islanding_branches
from tsaboost._src.grid.grid_loading import draw_operating_point
from tsaboost._src.input_checks import check_format_features
from tsaboost._src.input_checks import check_format_labels
from tsaboost._src.input_checks import check_positive_int
from tsaboost._src.input_checks import check_seed
from tsaboost._src.sim.sim_features import feature_names
from tsaboost._src.sim.sim_features import snapshot_features
from tsaboost._src.sim.sim_networks import build_stage_networks
from tsaboost._src.sim.sim_networks import FaultScenario
from tsaboost._src.sim.sim_swing import compute_tsi
from tsaboost._src.sim.sim_swing import integrate_swing

logger = logging.getLogger(__name__)

SCENARIO_COLUMNS = (
    "label",
    "tsi",
    "scenario_id",
    "fault_branch",
    "fault_pos",
    "clear_time",
)


@dataclass(frozen=True)
class ScenarioSummary:
    """fault parameters of a sample, `fault_branch=-1` when unknown"""

    fault_branch: int
    fault_position: float
    clearing_time: float


@dataclass(frozen=True, eq=False)
class SampleRecord:
    """one labeled snapshot, `label = 1` iff `tsi > 0`"""

    features: np.ndarray
    tsi: float
    label: int
    scenario: ScenarioSummary
    scenario_id: int


class Dataset:
    """
    Ordered collection of labeled snapshots generated from one case.

    The feature matrix and the per-sample columns are stored as read-only arrays;
    `samples` rebuilds the individual records.

    Parameters
    ----------
    samples: sequence of SampleRecord
    feature_names: sequence of str
        one name per feature column
    case_digest: str
        digest of the generating case, empty when unknown
    meta: dict, optional
        generation counters
    """

    def __init__(self, samples, feature_names, case_digest="", meta=None):
        samples = tuple(samples)
        names = tuple(feature_names)
        if samples:
            features = np.vstack([np.asarray(s.features, dtype=float) for s in samples])
        else:
            features = np.empty((0, len(names)))
        self._assign(
            features,
            [s.label for s in samples],
            [s.tsi for s in samples],
            [s.scenario_id for s in samples],
            [s.scenario.fault_branch for s in samples],
            [s.scenario.fault_position for s in samples],
            [s.scenario.clearing_time for s in samples],
            names,
            case_digest,
            meta,
        )

    @classmethod
    def from_arrays(
        cls,
        features,
        labels,
        tsi=None,
        scenario_ids=None,
        fault_branch=None,
        fault_position=None,
        clearing_time=None,
        feature_names=None,
        case_digest="",
        meta=None,
    ):
        """
        Build a dataset from column arrays.

        Missing `tsi` values are filled with +1 for stable and -1 for unstable samples,
        missing scenario ids with 0..n-1, missing fault parameters with -1 / 0.

        Examples
        --------
        >>> from tsaboost._src.sim.sim_dataset import Dataset
        >>> ds = Dataset.from_arrays([[0.0, 1.0], [2.0, 3.0]], [1, 0])
        >>> len(ds), ds.n_features, ds.feature_names
        (2, 2, ('x_0', 'x_1'))
        """
        features = check_format_features(features)
        n, d = features.shape
        labels = check_format_labels(labels, n)
        tsi = np.where(labels == 1, 1.0, -1.0) if tsi is None else tsi
        scenario_ids = np.arange(n) if scenario_ids is None else scenario_ids
        fault_branch = np.full(n, -1) if fault_branch is None else fault_branch
        fault_position = np.zeros(n) if fault_position is None else fault_position
        clearing_time = np.zeros(n) if clearing_time is None else clearing_time
        names = tuple(f"x_{k}" for k in range(d)) if feature_names is None else feature_names
        obj = cls.__new__(cls)
        obj._assign(
            features,
            labels,
            tsi,
            scenario_ids,
            fault_branch,
            fault_position,
            clearing_time,
            tuple(names),
            case_digest,
            meta,
        )
        return obj

    def _assign(
        self,
        features,
        labels,
        tsi,
        scenario_ids,
        fault_branch,
        fault_position,
        clearing_time,
        names,
        digest,
        meta,
    ):
        features = np.array(features, dtype=float).reshape(-1, len(names))
        n = len(features)
        columns = {
            "labels": np.array(labels, dtype=np.int64),
            "tsi": np.array(tsi, dtype=float),
            "scenario_ids": np.array(scenario_ids, dtype=np.int64),
            "fault_branch": np.array(fault_branch, dtype=np.int64),
            "fault_position": np.array(fault_position, dtype=float),
            "clearing_time": np.array(clearing_time, dtype=float),
        }
        for name, col in columns.items():
            if col.shape != (n,):
                raise TsaBadInputShape(
                    f"Input parameter `{name}` must have length {n}.\n"
                    f"Instead received shape {col.shape}."
                )
        self._features = features
        self._columns = columns
        for arr in (features, *columns.values()):
            arr.flags.writeable = False
        self._feature_names = names
        self._case_digest = str(digest)
        self._meta = dict(meta or {})

    def __len__(self):
        return len(self._features)

    def __repr__(self):
        n_stable, n_unstable = self.class_counts()
        return (
            f"Dataset(n_samples={len(self)}, n_features={self.n_features}, "
            f"stable={n_stable}, unstable={n_unstable})"
        )

    @property
    def n_features(self):
        """length of every feature vector"""
        return len(self._feature_names)

    @property
    def feature_names(self):
        """one name per feature column"""
        return self._feature_names

    @property
    def case_digest(self):
        """digest of the generating case"""
        return self._case_digest

    @property
    def meta(self):
        """generation counters, a copy"""
        return dict(self._meta)

    @property
    def features(self):
        """read-only (n, d) feature matrix"""
        return self._features

    @property
    def labels(self):
        """read-only label vector, 1 = stable"""
        return self._columns["labels"]

    @property
    def tsi(self):
        """read-only transient stability indices"""
        return self._columns["tsi"]

    @property
    def scenario_ids(self):
        """read-only scenario ids"""
        return self._columns["scenario_ids"]

    @property
    def samples(self):
        """tuple of `SampleRecord` in dataset order"""
        c = self._columns
        return tuple(
            SampleRecord(
                features=self._features[i],
                tsi=float(c["tsi"][i]),
                label=int(c["labels"][i]),
                scenario=ScenarioSummary(
                    int(c["fault_branch"][i]),
                    float(c["fault_position"][i]),
                    float(c["clearing_time"][i]),
                ),
                scenario_id=int(c["scenario_ids"][i]),
            )
            for i in range(len(self))
        )

    def class_counts(self):
        """(number of stable, number of unstable) samples"""
        n_stable = int(self.labels.sum())
        return n_stable, len(self) - n_stable

    def _derive(self, rows=slice(None), features=None, names=None):
        c = self._columns
        return Dataset.from_arrays(
            self._features[rows] if features is None else features,
            c["labels"][rows],
            tsi=c["tsi"][rows],
            scenario_ids=c["scenario_ids"][rows],
            fault_branch=c["fault_branch"][rows],
            fault_position=c["fault_position"][rows],
            clearing_time=c["clearing_time"][rows],
            feature_names=self._feature_names if names is None else names,
            case_digest=self._case_digest,
            meta=self._meta,
        )

    def subset(self, indices):
        """dataset of the rows `indices`, in the given order"""
        return self._derive(rows=np.asarray(indices, dtype=np.int64))

    def with_features(self, features):
        """same samples with a replaced feature matrix of identical shape"""
        features = np.asarray(features, dtype=float)
        if features.shape != self._features.shape:
            raise TsaBadInputShape(
                f"Input parameter `features` must have shape {self._features.shape}.\n"
                f"Instead received shape {features.shape}."
            )
        return self._derive(features=features)

    def select_columns(self, columns):
        """dataset restricted to the feature columns `columns`"""
        columns = np.asarray(columns, dtype=np.int64)
        names = tuple(self._feature_names[k] for k in columns)
        return self._derive(features=self._features[:, columns], names=names)


def simulate_scenario(case, solution, scenario, scenario_id=0, dt=None):
    """
    Simulate one fault scenario from a solved operating point.

    Returns
    -------
    SampleRecord

    Raises
    ------
    SingularNetworkError
    """
    dt = default_settings.sim.dt if dt is None else dt
    nets, init = build_stage_networks(case, solution, scenario)
    trajectory = integrate_swing(init, nets, scenario, dt)
    tsi = compute_tsi(trajectory, scenario.clearing_time)
    features = snapshot_features(case, nets, trajectory.clearing_state)
    summary = ScenarioSummary(
        -1 if scenario.fault_branch is None else int(scenario.fault_branch),
        float(scenario.fault_position),
        float(scenario.clearing_time),
    )
    return SampleRecord(features, tsi, int(tsi > 0), summary, int(scenario_id))


def _run_scenario(case, seed, scenario_id, dt, candidates, sim_cfg, grid_cfg):
    """simulate scenario `scenario_id`, returns a SampleRecord or the failure reason"""
    child = np.random.SeedSequence([seed, scenario_id])
    op_seed = int(child.generate_state(1)[0])
    rng = np.random.default_rng(child)
    try:
        loading, solution = draw_operating_point(case, op_seed, grid_cfg)
        scenario = FaultScenario(
            loading=loading,
            fault_branch=int(rng.choice(candidates)),
            fault_position=float(
                rng.uniform(sim_cfg.fault_position_min, sim_cfg.fault_position_max)
            ),
            clearing_time=float(
                rng.uniform(sim_cfg.clearing_time_min, sim_cfg.clearing_time_max)
            ),
            sim_horizon=sim_cfg.horizon,
            rng_seed=op_seed,
        )
        return simulate_scenario(case, solution, scenario, scenario_id, dt)
    except (OperatingPointError, SingularJacobianError, SingularNetworkError) as err:
        logger.warning("scenario %d skipped: %s", scenario_id, err)
        return str(err)


def fault_candidates(case, config=None):
    """
    Branch indices a fault may be drawn on.

    With `config.skip_islanding_faults` set, branches whose loss splits the network
    are left out unless no other branch remains.
    """
    cfg = default_settings.sim if config is None else config
    mask = case.in_service_mask()
    if cfg.skip_islanding_faults:
        meshed = mask & ~islanding_branches(case, mask)
        if meshed.any():
            mask = meshed
    return np.flatnonzero(mask)


def generate_dataset(
    case, n_scenarios, dt=None, seed=None, threads=1, config=None, grid_config=None
):
    """
    Draw, simulate and label `n_scenarios` fault scenarios.

    Every scenario draws its operating point and fault from a seed derived from
    `(seed, scenario_id)` only, so the output does not depend on `threads`. While
    the accepted samples hold a single class, up to `config.max_class_rounds`
    further rounds of `n_scenarios` fresh scenario ids are appended.

    Parameters
    ----------
    case: GridCase
    n_scenarios: int
    dt: float, optional
        integration step, default `defaults.sim.dt`
    seed: int
    threads: int, default=1
        worker threads
    config: SimConfig, optional
        fault protocol, default `defaults.sim`
    grid_config: GridConfig, optional
        loading protocol, default `defaults.grid`

    Returns
    -------
    Dataset
        skipped scenarios are missing, `meta` holds the counters

    Raises
    ------
    GenerationFailure
        more than `config.max_failure_fraction` of the scenarios failed
    """
    if seed is None:
        raise TsaMissingInput("Input parameter `seed` is required for dataset generation.")
    seed = check_seed(seed)
    n_scenarios = check_positive_int(n_scenarios, "n_scenarios")
    threads = check_positive_int(threads, "threads")
    sim_cfg = default_settings.sim if config is None else config
    dt = sim_cfg.dt if dt is None else dt
    candidates = fault_candidates(case, sim_cfg)

    records = []
    n_rounds = 0
    while True:
        first = n_rounds * n_scenarios
        results = Parallel(n_jobs=threads, prefer="threads")(
            delayed(_run_scenario)(case, seed, k, dt, candidates, sim_cfg, grid_config)
            for k in range(first, first + n_scenarios)
        )
        n_rounds += 1
        records += [r for r in results if isinstance(r, SampleRecord)]
        n_total = n_rounds * n_scenarios
        n_failed = n_total - len(records)
        if n_failed > sim_cfg.max_failure_fraction * n_total:
            raise GenerationFailure(n_failed, n_total, sim_cfg.max_failure_fraction)
        n_stable = sum(r.label for r in records)
        if 0 < n_stable < len(records) or n_rounds > sim_cfg.max_class_rounds:
            break
        logger.info("round %d gave a single class, drawing %d more", n_rounds, n_scenarios)

    meta = {
        "seed": seed,
        "dt": dt,
        "n_requested": n_scenarios,
        "n_rounds": n_rounds,
        "n_accepted": len(records),
        "n_failed": n_failed,
        "n_stable": n_stable,
        "n_unstable": len(records) - n_stable,
    }
    logger.info(
        "generated %d of %d scenarios (%d skipped): %d stable, %d unstable",
        len(records),
        n_total,
        n_failed,
        n_stable,
        len(records) - n_stable,
    )
    if n_stable in (0, len(records)):
        logger.warning("dataset holds a single class after %d rounds", n_rounds)
    return Dataset(records, feature_names(case), case_digest(case), meta)


def _sidecar(path):
    return path.with_name(path.name + ".meta.json")


def write_dataset(dataset, path):
    """
    Write `dataset` as CSV, reals with 9 significant digits, plus the
    `<path>.meta.json` sidecar holding the case digest and the counters.
    """
    path = Path(path)
    c = dataset._columns  # pylint: disable=protected-access
    df = pd.DataFrame(dataset.features, columns=list(dataset.feature_names))
    df["label"] = c["labels"]
    df["tsi"] = c["tsi"]
    df["scenario_id"] = c["scenario_ids"]
    df["fault_branch"] = c["fault_branch"]
    df["fault_pos"] = c["fault_position"]
    df["clear_time"] = c["clearing_time"]
    df.to_csv(path, index=False, float_format="%.9g", lineterminator="\n")
    side = {"case_digest": dataset.case_digest, "meta": dataset.meta}
    _sidecar(path).write_text(json.dumps(side, indent=2, sort_keys=True) + "\n")
    return path


def read_dataset(path):
    """
    Read a dataset CSV written by `write_dataset`.

    Raises
    ------
    DatasetFormatError
        malformed content, `row` is the 1-based data row of the first bad cell
    """
    path = Path(path)
    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as err:
        raise DatasetFormatError(f"cannot parse {path}: {err}") from err
    columns = list(raw.columns)
    n_meta = len(SCENARIO_COLUMNS)
    if len(columns) <= n_meta or tuple(columns[-n_meta:]) != SCENARIO_COLUMNS:
        raise DatasetFormatError(
            f"header must end with {','.join(SCENARIO_COLUMNS)} after the feature columns"
        )

    values = raw.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise DatasetFormatError(
            f"non-numeric cell {raw.iat[row, col]!r} in column {columns[col]}", row + 1
        )
    label_col = len(columns) - n_meta
    labels, tsi = values[:, label_col], values[:, label_col + 1]
    bad_rows = np.flatnonzero(~np.isin(labels, (0, 1)) | ((labels == 1) != (tsi > 0)))
    if bad_rows.size:
        row = bad_rows[0]
        raise DatasetFormatError(
            f"label {raw.iat[row, label_col]!r} does not match "
            f"tsi {raw.iat[row, label_col + 1]!r}",
            row + 1,
        )

    digest, meta = "", {}
    side = _sidecar(path)
    if side.exists():
        try:
            info = json.loads(side.read_text())
        except json.JSONDecodeError as err:
            raise DatasetFormatError(f"cannot parse {side}: {err}") from err
        digest, meta = info.get("case_digest", ""), info.get("meta", {})
    return Dataset.from_arrays(
        values[:, :label_col],
        labels.astype(np.int64),
        tsi=tsi,
        scenario_ids=values[:, label_col + 2],
        fault_branch=values[:, label_col + 3],
        fault_position=values[:, label_col + 4],
        clearing_time=values[:, label_col + 5],
        feature_names=columns[:label_col],
        case_digest=digest,
        meta=meta,
    )
