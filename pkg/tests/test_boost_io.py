import json

import numpy as np
import pytest

from tsaboost._src.boost.boost_ensemble import fit
from tsaboost._src.boost.boost_io import ensemble_to_dict
from tsaboost._src.boost.boost_io import load_model
from tsaboost._src.boost.boost_io import model_checksum
from tsaboost._src.boost.boost_io import save_model
from tsaboost._src.exceptions import ModelChecksumError
from tsaboost._src.exceptions import ModelFormatError
from tsaboost._src.exceptions import ModelTruncatedError
from tsaboost._src.exceptions import ModelVersionError


@pytest.fixture
def model(separable, small_config):
    """small trained ensemble"""
    return fit(separable, config=small_config)


def _rewrite(path, change):
    doc = json.loads(path.read_text())
    change(doc)
    path.write_text(json.dumps(doc))


def test_save_load_exact(tmp_path, model, separable):
    """a reloaded model predicts bit for bit"""
    path = save_model(model, tmp_path / "m.json")
    back = load_model(path)
    np.testing.assert_array_equal(
        back.predict_raw(separable.features), model.predict_raw(separable.features)
    )
    assert back.feature_count == model.feature_count
    assert back.training_meta == model.training_meta
    for a, b in zip(back.trees, model.trees):
        assert a.levels == b.levels and a.gains == b.gains


def test_save_is_deterministic(tmp_path, model):
    """the same model writes the same bytes"""
    a = save_model(model, tmp_path / "a.json").read_bytes()
    b = save_model(model, tmp_path / "b.json").read_bytes()
    assert a == b


def test_checksum_mismatch(tmp_path, model):
    """any edited value breaks the checksum"""
    path = save_model(model, tmp_path / "m.json")

    def edit(doc):
        doc["trees"][0]["leaf_values"][0] += 1.0

    _rewrite(path, edit)
    with pytest.raises(ModelChecksumError):
        load_model(path)


def test_version_mismatch(tmp_path, model):
    """other format versions are refused"""
    path = save_model(model, tmp_path / "m.json")
    _rewrite(path, lambda doc: doc.update(format_version=2))
    with pytest.raises(ModelVersionError):
        load_model(path)
    assert issubclass(ModelVersionError, ModelFormatError)


@pytest.mark.parametrize("cut", [0.0, 0.13, 0.5, 0.77, 0.99])
def test_truncated(tmp_path, model, cut):
    """cut files cannot be parsed"""
    path = save_model(model, tmp_path / "m.json")
    text = path.read_text()
    path.write_text(text[: int(len(text) * cut)])
    with pytest.raises(ModelTruncatedError):
        load_model(path)


@pytest.mark.parametrize(
    "old, new", [('"trees":', '"trees";'), ('"levels":[[', '"levels":[[@')]
)
def test_corrupt_middle(tmp_path, model, old, new):
    """a broken byte before the end is a format error, not a cut file"""
    path = save_model(model, tmp_path / "m.json")
    text = path.read_text()
    assert old in text
    path.write_text(text.replace(old, new, 1))
    with pytest.raises(ModelFormatError) as excinfo:
        load_model(path)
    assert not isinstance(excinfo.value, ModelTruncatedError)


def test_missing_fields(tmp_path, model):
    """required fields must be present"""
    path = save_model(model, tmp_path / "m.json")
    _rewrite(path, lambda doc: doc.pop("trees"))
    with pytest.raises(ModelTruncatedError, match="trees"):
        load_model(path)
    path.write_text("[1, 2]")
    with pytest.raises(ModelTruncatedError):
        load_model(path)


def test_malformed_tree(tmp_path, model):
    """a checksummed but inconsistent tree is a format error"""
    doc = ensemble_to_dict(model)
    doc.pop("checksum")
    doc["trees"][0]["leaf_values"] = doc["trees"][0]["leaf_values"][:-1]
    doc["checksum"] = model_checksum(doc)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ModelFormatError):
        load_model(path)
