"""`tsa` command line tool: dataset generation, training, evaluation and reports."""
import argparse
import logging
import re
import sys
import time
from pathlib import Path

import numpy as np

from tsaboost import __version__
from tsaboost._src.boost.boost_ensemble import fit
from tsaboost._src.boost.boost_importance import feature_importance
from tsaboost._src.boost.boost_io import load_model
from tsaboost._src.boost.boost_io import save_model
from tsaboost._src.cli.cli_config import load_run_config
from tsaboost._src.defaults.defaults_classes import default_settings
from tsaboost._src.evaluation.eval_crossval import compare_configs
from tsaboost._src.evaluation.eval_crossval import holdout_split
from tsaboost._src.evaluation.eval_metrics import confusion_and_metrics
from tsaboost._src.evaluation.eval_pmu import DEFAULT_PMU_SCHEMES
from tsaboost._src.evaluation.eval_pmu import pmu_study
from tsaboost._src.evaluation.eval_pmu import PMUPlan
from tsaboost._src.evaluation.eval_pmu import rank_pmu_buses
from tsaboost._src.evaluation.eval_reports import SweepAxis
from tsaboost._src.evaluation.eval_reports import SweepResult
from tsaboost._src.evaluation.eval_reports import write_gnuplot
from tsaboost._src.evaluation.eval_reports import write_json_report
from tsaboost._src.evaluation.eval_reports import write_sweep_csv
from tsaboost._src.evaluation.eval_sweeps import imbalance_experiment
from tsaboost._src.evaluation.eval_sweeps import noise_sweep
from tsaboost._src.exceptions import CaseParseError
from tsaboost._src.exceptions import CaseValidationError
from tsaboost._src.exceptions import DatasetFormatError
from tsaboost._src.exceptions import GenerationFailure
from tsaboost._src.exceptions import ModelFormatError
from tsaboost._src.exceptions import OperatingPointError
from tsaboost._src.exceptions import SingularJacobianError
from tsaboost._src.exceptions import SingularNetworkError
from tsaboost._src.exceptions import TsaBadInputShape
from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.exceptions import TsaMissingInput
from tsaboost._src.exceptions import TsaUsageError
from tsaboost._src.grid.grid_case import case_digest
from tsaboost._src.grid.grid_case import load_case
from tsaboost._src.input_checks import check_format_features
from tsaboost._src.sim.sim_dataset import generate_dataset
from tsaboost._src.sim.sim_dataset import read_dataset
from tsaboost._src.sim.sim_dataset import SCENARIO_COLUMNS
from tsaboost._src.sim.sim_dataset import write_dataset

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA = 2
EXIT_GENERATION = 3
EXIT_USAGE = 64

DATA_ERRORS = (
    CaseParseError,
    CaseValidationError,
    DatasetFormatError,
    ModelFormatError,
    OperatingPointError,
    SingularJacobianError,
    SingularNetworkError,
    TsaBadInputShape,
    TsaBadUserInput,
    TsaMissingInput,
    OSError,
)

CONFIG_NAMES = {True: "GHM-CatBoost", False: "CatBoost"}
CONFIG_SLUGS = {"GHM-CatBoost": "ghm", "CatBoost": "plain"}
TABLE_ROWS = 10

# command line flag -> library setting
SETTING_FLAGS = {
    "iterations": "training.n_iterations",
    "depth": "training.depth",
    "lr": "training.learning_rate",
    "zbins": "training.ghm.z_bins",
    "mode": "training.boosting_mode",
    "k": "sweep.k_folds",
    "holdout": "sweep.holdout_fraction",
    "top": "sweep.pmu_top",
    "n": "sim.n_scenarios",
    "dt": "sim.dt",
}
RUN_FLAGS = ("case", "dataset", "model", "out", "seed", "threads")


class CliParser(argparse.ArgumentParser):
    """ArgumentParser exiting with the usage error code"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_flags():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--case", help="case file, default the bundled 39-bus case")
    p.add_argument("--dataset", help="dataset CSV")
    p.add_argument("--model", help="model file")
    p.add_argument("--out", help="output directory, default the working directory")
    p.add_argument("--seed", type=int, help="random seed")
    p.add_argument("--threads", type=int, help="worker count")
    p.add_argument("--config", help="key=value settings file")
    verbosity = p.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug output")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    return p


def _training_flags():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--ghm", choices=("on", "off", "both"), help="gradient harmonizing")
    p.add_argument("--mode", choices=("plain", "ordered"), help="boosting mode")
    p.add_argument("--iterations", type=int, help="number of trees")
    p.add_argument("--depth", type=int, help="tree depth")
    p.add_argument("--lr", type=float, help="learning rate")
    p.add_argument("--zbins", type=int, help="GHM gradient density bins")
    p.add_argument("--k", type=int, help="cross-validation folds")
    return p


def build_parser():
    """the `tsa` argument parser"""
    parser = CliParser(
        prog="tsa", description="Transient stability assessment with GHM boosted trees."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)
    common, training = _common_flags(), _training_flags()

    p = sub.add_parser("generate", parents=[common], help="simulate a labeled dataset")
    p.add_argument("--n", type=int, help="number of fault scenarios")
    p.add_argument("--dt", type=float, help="integration step in s")

    p = sub.add_parser("train", parents=[common, training], help="train and save a model")
    p.add_argument("--holdout", type=float, help="held out share of the samples")

    sub.add_parser("eval", parents=[common, training], help="evaluate a model or cross-validate")
    sub.add_parser("sweep-noise", parents=[common, training], help="accuracy under noise")
    sub.add_parser(
        "sweep-imbalance", parents=[common, training], help="accuracy under class imbalance"
    )

    p = sub.add_parser("importance", parents=[common], help="feature importance ranking")
    p.add_argument("--top", type=int, help="buses in the PMU ranking")

    p = sub.add_parser("pmu-study", parents=[common, training], help="PMU placement study")
    p.add_argument("--schemes", help="bus lists, e.g. '8,5,6,7,14;9,1,39'")

    p = sub.add_parser("predict", parents=[common], help="score feature rows")
    p.add_argument("input", nargs="?", default="-", help="feature rows, '-' for stdin")
    return parser


def _overrides(args):
    over = {k: getattr(args, k, None) for k in RUN_FLAGS}
    for flag, key in SETTING_FLAGS.items():
        over[key] = getattr(args, flag, None)
    ghm = getattr(args, "ghm", None)
    if ghm in ("on", "off"):
        over["training.ghm.enabled"] = ghm == "on"
    return over


def _configure_logging(args):
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger()
    root.setLevel(min(level, logging.INFO))
    root.addHandler(handler)
    return handler


def training_configs(run, ghm=None):
    """name -> TrainingConfig of the requested GHM variants"""
    base = run.settings.training
    if ghm == "both":
        variants = (True, False)
    else:
        variants = (base.ghm.enabled,)
    configs = {}
    for enabled in variants:
        cfg = base.copy()
        cfg.ghm.enabled = enabled
        configs[CONFIG_NAMES[enabled]] = cfg
    return configs


def _load_dataset(run):
    return read_dataset(run.require("dataset_path", "--dataset"))


def _write_sweep(run, result, stem, title):
    write_sweep_csv(result, run.out(f"{stem}.csv"))
    write_gnuplot(result, run.out(f"{stem}.dat"), title)


def _print_rows(result):
    for setting, rep in result.points:
        print(rep.row(setting))


def cmd_generate(run, args):
    """simulate the dataset and log the generation counters next to it"""
    seed = run.require_seed()
    case = load_case(run.case_path)
    sim = run.settings.sim
    path = run.dataset_path or run.out("dataset.csv")
    path.parent.mkdir(parents=True, exist_ok=True)
    log_handler = logging.FileHandler(path.with_name(path.name + ".log"), mode="w")
    log_handler.setLevel(logging.INFO)
    log_handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logging.getLogger().addHandler(log_handler)
    try:
        data = generate_dataset(
            case,
            sim.n_scenarios,
            seed=seed,
            threads=run.threads,
            config=sim,
            grid_config=run.settings.grid,
        )
        write_dataset(data, path)
        stable, unstable = data.class_counts()
        logger.info("wrote %s: %d stable, %d unstable samples", path, stable, unstable)
    finally:
        logging.getLogger().removeHandler(log_handler)
        log_handler.close()
    print(f"{path}: {len(data)} samples ({stable} stable, {unstable} unstable)")


def _model_path(run, name, n_configs):
    path = run.model_path or run.out("model.json")
    if n_configs == 1:
        return path
    return path.with_name(f"{path.stem}-{CONFIG_SLUGS[name]}{path.suffix}")


def cmd_train(run, args):
    """train on the stratified training part, report training and held-out metrics"""
    seed = run.require_seed()
    data = _load_dataset(run)
    train, test = holdout_split(data, run.settings.sweep.holdout_fraction, seed)
    configs = training_configs(run, args.ghm)
    points, details = [], {}
    for name, cfg in configs.items():
        start = time.perf_counter()
        model = fit(train, config=cfg)
        wall = time.perf_counter() - start
        path = _model_path(run, name, len(configs))
        path.parent.mkdir(parents=True, exist_ok=True)
        save_model(model, path)
        on_train = confusion_and_metrics(model.predict_labels(train.features), train.labels, wall)
        info = {"model": str(path), "train": on_train, "flags": list(model.flags)}
        report = on_train
        if len(test):
            report = confusion_and_metrics(model.predict_labels(test.features), test.labels, wall)
            info["holdout"] = report
            if on_train.acc < report.acc:
                logger.warning("%s: training accuracy below held-out accuracy", name)
        points.append((name, report))
        details[name] = info
        logger.info("%s trained in %.2fs, saved to %s", name, wall, path)
    result = SweepResult(SweepAxis.CONFIG, tuple(points), details)
    write_sweep_csv(result, run.out("train_report.csv"))
    write_json_report(
        run.out("train_report.json"), "train", result, run.echo(), data.case_digest
    )
    _print_rows(result)


def cmd_eval(run, args):
    """evaluate `--model` on the dataset, or cross-validate the training setup"""
    data = _load_dataset(run)
    if run.model_path is not None:
        model = load_model(run.model_path)
        rep = confusion_and_metrics(model.predict_labels(data.features), data.labels)
        result = SweepResult(SweepAxis.CONFIG, ((run.model_path.stem, rep),))
        details = {}
    else:
        seed = run.require_seed()
        result, cv = compare_configs(
            data,
            training_configs(run, args.ghm),
            run.settings.sweep.k_folds,
            seed,
            run.threads,
        )
        details = {name: {"folds": list(res.folds)} for name, res in cv.items()}
    write_sweep_csv(result, run.out("eval_report.csv"))
    write_json_report(
        run.out("eval_report.json"),
        "eval",
        {"table": result, "details": details},
        run.echo(),
        data.case_digest,
    )
    _print_rows(result)


def cmd_sweep_noise(run, args):
    """k-fold accuracy per noise level, one table per GHM variant"""
    seed = run.require_seed()
    data = _load_dataset(run)
    results = {}
    for name, cfg in training_configs(run, args.ghm).items():
        res = noise_sweep(
            data,
            run.settings.sweep.noise_levels,
            cfg,
            run.settings.sweep.k_folds,
            seed,
            run.threads,
        )
        _write_sweep(run, res, f"sweep_noise_{CONFIG_SLUGS[name]}", f"{name} noise sweep")
        results[name] = res
        for setting, rep in res.points:
            print(rep.row(f"{name} {setting}"))
    write_json_report(
        run.out("sweep_noise.json"), "sweep-noise", results, run.echo(), data.case_digest
    )


def cmd_sweep_imbalance(run, args):
    """training composition sweep, by default with and without GHM"""
    seed = run.require_seed()
    data = _load_dataset(run)
    sweep = run.settings.sweep
    results = imbalance_experiment(
        data,
        training_configs(run, args.ghm or "both"),
        sweep.train_size,
        sweep.test_size,
        sweep.stable_ratios,
        seed,
    )
    for name, res in results.items():
        _write_sweep(
            run, res, f"sweep_imbalance_{CONFIG_SLUGS[name]}", f"{name} imbalance sweep"
        )
        for setting, rep in res.points:
            print(rep.row(f"{name} {setting}"))
    write_json_report(
        run.out("sweep_imbalance.json"),
        "sweep-imbalance",
        results,
        run.echo(),
        data.case_digest,
    )


def cmd_importance(run, args):
    """ranking table of the model features and the importance-ranked PMU buses"""
    model = load_model(run.require("model_path", "--model"))
    case = load_case(run.case_path)
    report = feature_importance(model)
    if model.feature_count != case.n_features:
        logger.warning(
            "model has %d features, the case layout %d: no bus names or PMU ranking",
            model.feature_count,
            case.n_features,
        )
        case = None
    report.write_csv(run.out("importance.csv"), case)
    run.out("importance.txt").write_text(report.to_text(case))
    doc = {"ranking": report.to_frame(case).to_dict(orient="records")}
    if case is not None and report.ranking.size:
        plan = rank_pmu_buses(report, case, run.settings.sweep.pmu_top)
        doc["pmu_buses"] = list(plan.buses)
    write_json_report(
        run.out("importance.json"),
        "importance",
        doc,
        run.echo(),
        "" if case is None else case_digest(case),
    )
    sys.stdout.write(report.to_text(case, top=TABLE_ROWS))
    if "pmu_buses" in doc:
        print("PMU buses: " + ", ".join(str(b) for b in doc["pmu_buses"]))


def parse_schemes(text):
    """
    PMU plans of a `;`-separated list of comma-separated bus ids.

    Examples
    --------
    >>> from tsaboost._src.cli.cli_main import parse_schemes
    >>> [p.buses for p in parse_schemes("8,5,6;9, 1")]
    [(8, 5, 6), (9, 1)]
    """
    plans = []
    for k, group in enumerate((g for g in text.split(";") if g.strip()), start=1):
        try:
            buses = tuple(int(b) for b in group.split(",") if b.strip())
        except ValueError as err:
            raise TsaUsageError(f"--schemes: bad bus list {group!r}") from err
        if not buses:
            raise TsaUsageError(f"--schemes: empty bus list in scheme {k}")
        plans.append(PMUPlan(k, buses))
    if not plans:
        raise TsaUsageError("--schemes: no scheme given")
    return tuple(plans)


def cmd_pmu_study(run, args):
    """full-feature baseline against the PMU schemes"""
    seed = run.require_seed()
    data = _load_dataset(run)
    case = load_case(run.case_path)
    schemes = DEFAULT_PMU_SCHEMES if args.schemes is None else parse_schemes(args.schemes)
    results = {}
    for name, cfg in training_configs(run, args.ghm).items():
        res = pmu_study(
            data, case, schemes, cfg, run.settings.sweep.k_folds, seed, run.threads
        )
        _write_sweep(run, res, f"pmu_study_{CONFIG_SLUGS[name]}", f"{name} PMU study")
        results[name] = res
        for setting, rep in res.points:
            print(rep.row(f"{name} {setting}"))
    write_json_report(
        run.out("pmu_study.json"), "pmu-study", results, run.echo(), case_digest(case)
    )


def read_feature_rows(lines, n_features):
    """
    Feature matrix of text rows separated by commas or whitespace. A leading header
    row is skipped; when it ends with the dataset scenario columns those trailing
    columns are dropped from every row.
    """
    rows, keep, first = [], None, True
    n_meta = len(SCENARIO_COLUMNS)
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [t for t in re.split(r"[,\s]+", line) if t]
        if first:
            first = False
            if any(re.match(r"^[A-Za-z_]", t) for t in tokens):
                if tuple(tokens[-n_meta:]) == SCENARIO_COLUMNS:
                    keep = len(tokens) - n_meta
                continue
        if keep is not None:
            tokens = tokens[:keep]
        try:
            values = [float(t) for t in tokens]
        except ValueError as err:
            raise DatasetFormatError(f"non-numeric feature value: {err}", len(rows) + 1) from err
        rows.append(check_format_features(values, n_features)[0])
    if not rows:
        raise TsaMissingInput("no feature rows to score")
    return np.array(rows)


def cmd_predict(run, args):
    """probability and label at 0.5 per input row"""
    model = load_model(run.require("model_path", "--model"))
    if args.input == "-":
        lines = sys.stdin.read().splitlines()
    else:
        lines = Path(args.input).read_text().splitlines()
    x = read_feature_rows(lines, model.feature_count)
    for k, row in enumerate(x):
        start = time.perf_counter()
        p = model.predict_proba(row)
        logger.debug("row %d scored in %.3f ms", k + 1, 1e3 * (time.perf_counter() - start))
        print(f"{p:.6f},{int(p >= 0.5)}")


COMMANDS = {
    "generate": cmd_generate,
    "train": cmd_train,
    "eval": cmd_eval,
    "sweep-noise": cmd_sweep_noise,
    "sweep-imbalance": cmd_sweep_imbalance,
    "importance": cmd_importance,
    "pmu-study": cmd_pmu_study,
    "predict": cmd_predict,
}


def main(argv=None):
    """
    Run the `tsa` command line tool, returns the exit code: 0 success, 2 data or
    model error, 3 too many failed scenarios, 64 usage error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code
    handler = _configure_logging(args)
    previous = default_settings.copy()
    try:
        run = load_run_config(args.config, _overrides(args))
        default_settings.update(run.settings.as_dict())
        COMMANDS[args.command](run, args)
    except TsaUsageError as err:
        print(f"tsa {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except GenerationFailure as err:
        print(f"tsa {args.command}: error: {err}", file=sys.stderr)
        return EXIT_GENERATION
    except DATA_ERRORS as err:
        print(f"tsa {args.command}: error: {err}", file=sys.stderr)
        return EXIT_DATA
    finally:
        default_settings.update(previous.as_dict())
        logging.getLogger().removeHandler(handler)
    return EXIT_OK


def run_cli():
    """console script entry point"""
    sys.exit(main())
