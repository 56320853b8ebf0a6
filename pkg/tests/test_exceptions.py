import unittest

import numpy as np

from tsaboost._src.boost.boost_ensemble import fit
from tsaboost._src.cli.cli_main import parse_schemes
from tsaboost._src.cli.cli_main import read_feature_rows
from tsaboost._src.evaluation.eval_metrics import confusion_and_metrics
from tsaboost._src.evaluation.eval_pmu import PMUPlan
from tsaboost._src.exceptions import CaseParseError
from tsaboost._src.exceptions import DatasetFormatError
from tsaboost._src.exceptions import GenerationFailure
from tsaboost._src.exceptions import ModelChecksumError
from tsaboost._src.exceptions import ModelFormatError
from tsaboost._src.exceptions import ModelTruncatedError
from tsaboost._src.exceptions import ModelVersionError
from tsaboost._src.exceptions import TsaBadInputShape
from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.exceptions import TsaMissingInput
from tsaboost._src.exceptions import TsaUsageError
from tsaboost._src.grid.grid_case import parse_case
from tsaboost._src.input_checks import check_format_features
from tsaboost._src.input_checks import check_format_labels
from tsaboost._src.sim.sim_dataset import Dataset


def case_unknown_section():
    """unknown section header"""
    parse_case("[NOPE]\n1 2 3\n")


def dataset_bad_labels():
    """labels outside {0, 1}"""
    Dataset.from_arrays([[1.0], [2.0]], [1, 3])


def dataset_label_length():
    """label count differs from the row count"""
    Dataset.from_arrays([[1.0], [2.0]], [1])


def features_wrong_width():
    """feature vector of the wrong length"""
    check_format_features([1.0, 2.0, 3.0], n_features=2)


def features_not_numeric():
    """feature cell that is no number"""
    check_format_features([["a", 1.0]])


def labels_2d():
    """label matrix"""
    check_format_labels([[1, 0]])


def metrics_empty():
    """nothing to evaluate"""
    confusion_and_metrics([], [])


def fit_one_sample():
    """a single training sample"""
    fit(np.array([[1.0, 2.0]]), [1])


def pmu_plan_empty():
    """plan without buses"""
    PMUPlan(1, ())


def rows_missing():
    """no rows to score"""
    read_feature_rows([], 3)


def schemes_garbled():
    """scheme list that is no bus list"""
    parse_schemes("8,5;x")


class TestExceptions(unittest.TestCase):
    """test class for exception testing"""

    def test_except_grid(self):
        """case files"""
        self.assertRaises(CaseParseError, case_unknown_section)

    def test_except_bad_user_input(self):
        """bad values"""
        self.assertRaises(TsaBadUserInput, dataset_bad_labels)
        self.assertRaises(TsaBadUserInput, features_not_numeric)
        self.assertRaises(TsaBadUserInput, metrics_empty)
        self.assertRaises(TsaBadUserInput, fit_one_sample)
        self.assertRaises(TsaBadUserInput, pmu_plan_empty)

    def test_except_bad_input_shape(self):
        """bad shapes"""
        self.assertRaises(TsaBadInputShape, dataset_label_length)
        self.assertRaises(TsaBadInputShape, features_wrong_width)
        self.assertRaises(TsaBadInputShape, labels_2d)

    def test_except_missing_input(self):
        """missing inputs"""
        self.assertRaises(TsaMissingInput, rows_missing)

    def test_except_usage(self):
        """command line input"""
        self.assertRaises(TsaUsageError, schemes_garbled)

    def test_messages(self):
        """location prefixes and counters"""
        err = CaseParseError("bad bus kind", 7)
        self.assertEqual(str(err), "line 7: bad bus kind")
        self.assertEqual(err.line_number, 7)
        self.assertEqual(str(CaseParseError("empty file")), "empty file")
        err = DatasetFormatError("non-numeric cell", row=3)
        self.assertEqual(str(err), "row 3: non-numeric cell")
        self.assertEqual(err.row, 3)
        err = GenerationFailure(30, 100, 0.2)
        self.assertEqual(str(err), "30 of 100 scenarios failed, more than the tolerated 20%")
        self.assertEqual((err.n_failed, err.n_total), (30, 100))

    def test_model_errors_share_a_base(self):
        """all model file problems are ModelFormatError"""
        for cls in (ModelVersionError, ModelTruncatedError, ModelChecksumError):
            self.assertTrue(issubclass(cls, ModelFormatError))
