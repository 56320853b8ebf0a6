import json

import numpy as np
import pytest

from tsaboost._src.evaluation.eval_metrics import confusion_and_metrics
from tsaboost._src.evaluation.eval_metrics import ConfusionMatrix
from tsaboost._src.evaluation.eval_metrics import mean_report
from tsaboost._src.evaluation.eval_metrics import metrics_from_counts
from tsaboost._src.evaluation.eval_reports import SweepAxis
from tsaboost._src.evaluation.eval_reports import SweepResult
from tsaboost._src.evaluation.eval_reports import write_gnuplot
from tsaboost._src.evaluation.eval_reports import write_json_report
from tsaboost._src.evaluation.eval_reports import write_sweep_csv
from tsaboost._src.exceptions import TsaBadInputShape
from tsaboost._src.exceptions import TsaBadUserInput


def test_confusion_and_metrics():
    """stable is the positive class"""
    rep = confusion_and_metrics([1, 1, 0, 0, 1], [1, 0, 0, 1, 1], wall_time_s=1.5)
    assert rep.counts == ConfusionMatrix(tp=2, fp=1, fn=1, tn=1)
    np.testing.assert_allclose([rep.acc, rep.far, rep.frr], [0.6, 0.5, 1 / 3])
    assert rep.row("x") == "x, 60.00%, 50.00%, 33.33%, 1.50s"


def test_undefined_rates():
    """rates without a denominator are None and print as n/a"""
    rep = confusion_and_metrics([1, 0, 1], [1, 1, 1])
    assert rep.far is None
    np.testing.assert_allclose(rep.frr, 1 / 3)
    assert rep.row("only stable") == "only stable, 66.67%, n/a, 33.33%, 0.00s"
    rep = confusion_and_metrics([0, 0], [0, 0])
    assert rep.frr is None and rep.far == 0.0 and rep.acc == 1.0


def test_metrics_bad_inputs():
    """empty or mismatched evaluations raise"""
    with pytest.raises(TsaBadUserInput):
        confusion_and_metrics([], [])
    with pytest.raises(TsaBadInputShape):
        confusion_and_metrics([1, 0], [1])
    with pytest.raises(TsaBadUserInput):
        metrics_from_counts(ConfusionMatrix(0, 0, 0, 0))


def test_mean_report():
    """rates are averaged over the folds where they are defined"""
    a = metrics_from_counts(ConfusionMatrix(tp=5, fp=1, fn=0, tn=1), 2.0)
    b = metrics_from_counts(ConfusionMatrix(tp=4, fp=0, fn=1, tn=0), 4.0)
    m = mean_report([a, b])
    np.testing.assert_allclose(m.acc, (6 / 7 + 4 / 5) / 2)
    np.testing.assert_allclose(m.far, 0.5)
    np.testing.assert_allclose(m.frr, (0 + 0.2) / 2)
    assert m.wall_time_s == 3.0
    assert m.counts == ConfusionMatrix(tp=9, fp=1, fn=1, tn=1)
    with pytest.raises(TsaBadUserInput):
        mean_report([])


def _sweep():
    a = metrics_from_counts(ConfusionMatrix(tp=8, fp=1, fn=1, tn=0))
    b = metrics_from_counts(ConfusionMatrix(tp=5, fp=0, fn=0, tn=5), 0.25)
    return SweepResult(SweepAxis.NOISE_LEVEL, (("0%", a), ("1%", b)), {"levels": [0.0, 1.0]})


def test_sweep_result_access():
    """settings keep their order and must be unique"""
    res = _sweep()
    assert res.settings == ("0%", "1%")
    assert res.report("1%").acc == 1.0
    with pytest.raises(TsaBadUserInput):
        SweepResult(SweepAxis.CONFIG, ())
    with pytest.raises(TsaBadUserInput):
        SweepResult(SweepAxis.CONFIG, (("a", res.report("0%")), ("a", res.report("1%"))))


def test_write_sweep_csv(tmp_path):
    """undefined rates become empty cells"""
    path = write_sweep_csv(_sweep(), tmp_path / "s.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "setting,acc,far,frr,wall_time_s"
    assert lines[1] == "0%,0.8,1,0.111111,0"
    assert lines[2] == "1%,1,0,0,0.25"


def test_write_gnuplot(tmp_path):
    """numbered rows with NaN for undefined rates"""
    res = SweepResult(
        SweepAxis.CONFIG,
        (("a", metrics_from_counts(ConfusionMatrix(tp=3, fp=0, fn=1, tn=0))),),
    )
    lines = write_gnuplot(res, tmp_path / "s.dat", "title").read_text().splitlines()
    assert lines[0] == "# title"
    assert lines[2] == '0 "a" 0.75 NaN 0.25 0'


def test_write_json_report(tmp_path):
    """counts, config echo and digest end up in the report"""
    path = write_json_report(
        tmp_path / "r.json",
        "sweep-noise",
        {"ghm": _sweep(), "extra": np.int64(3)},
        {"seed": 7},
        "abc",
    )
    doc = json.loads(path.read_text())
    assert doc["command"] == "sweep-noise"
    assert doc["case_digest"] == "abc"
    assert doc["config"] == {"seed": 7}
    assert doc["results"]["extra"] == 3
    point = doc["results"]["ghm"]["points"][0]
    assert point["setting"] == "0%"
    assert point["counts"] == {"tp": 8, "fp": 1, "fn": 1, "tn": 0}
    assert doc["results"]["ghm"]["axis"] == "NoiseLevel"
