"""Versioned, checksummed JSON persistence of ensembles."""
import json
import zlib
from pathlib import Path

import numpy as np

from tsaboost._src.boost.boost_ensemble import Ensemble
from tsaboost._src.boost.boost_tree import ObliviousTree
from tsaboost._src.exceptions import ModelChecksumError
from tsaboost._src.exceptions import ModelFormatError
from tsaboost._src.exceptions import ModelTruncatedError
from tsaboost._src.exceptions import ModelVersionError
from tsaboost._src.exceptions import TsaBadInputShape

FORMAT_VERSION = 1
_REQUIRED = ("base_score", "learning_rate", "feature_count", "trees", "checksum")
_DELIMITERS = frozenset(",:[]{}")


def _canonical(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def model_checksum(payload):
    """CRC-32 of the canonical JSON text of `payload`"""
    return zlib.crc32(_canonical(payload).encode("utf-8"))


def ensemble_to_dict(ensemble):
    """JSON-ready dict of `ensemble` including its checksum"""
    payload = {
        "format_version": FORMAT_VERSION,
        "base_score": float(ensemble.base_score),
        "learning_rate": float(ensemble.learning_rate),
        "feature_count": int(ensemble.feature_count),
        "trees": [
            {
                "levels": [[int(f), float(t)] for f, t in tree.levels],
                "leaf_values": [float(v) for v in tree.leaf_values],
                "gains": [float(g) for g in tree.gains],
            }
            for tree in ensemble.trees
        ],
        "training_meta": ensemble.training_meta,
        "flags": list(ensemble.flags),
    }
    payload["checksum"] = model_checksum(payload)
    return payload


def save_model(ensemble, path):
    """
    Write `ensemble` as compact JSON. Reals are written in their shortest exact
    representation, so loading reproduces every prediction bit for bit.
    """
    path = Path(path)
    text = json.dumps(ensemble_to_dict(ensemble), separators=(",", ":"), allow_nan=False)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def _read_document(path):
    """
    Parse the JSON text at `path`. An error confined to the unfinished tail of the
    text means a cut file, an error followed by further structure a corrupt one.
    """
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as err:
        if err.reason == "unexpected end of data":
            raise ModelTruncatedError(f"model file {path} ends inside a character") from err
        raise ModelFormatError(f"model file {path} is not UTF-8 text: {err}") from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        tail = text[err.pos :].rstrip()
        if err.msg.startswith("Unterminated string") or not _DELIMITERS.intersection(tail):
            raise ModelTruncatedError(f"cannot parse model file {path}: {err}") from err
        raise ModelFormatError(f"corrupt model file {path}: {err}") from err


def load_model(path):
    """
    Read a model file written by `save_model`.

    Raises
    ------
    ModelTruncatedError
        the file is cut short or lacks required fields
    ModelFormatError
        the file is corrupt before its end
    ModelVersionError
        the file was written by another format version
    ModelChecksumError
        the content does not match the stored checksum
    """
    path = Path(path)
    doc = _read_document(path)
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise ModelTruncatedError(f"model file {path} lacks `format_version`")
    if doc["format_version"] != FORMAT_VERSION:
        raise ModelVersionError(
            f"model file {path} has format version {doc['format_version']!r}, "
            f"supported is {FORMAT_VERSION}"
        )
    missing = [k for k in _REQUIRED if k not in doc]
    if missing:
        raise ModelTruncatedError(f"model file {path} lacks {', '.join(missing)}")

    stored = doc.pop("checksum")
    if stored != model_checksum(doc):
        raise ModelChecksumError(f"checksum mismatch in model file {path}")

    try:
        trees = tuple(
            ObliviousTree(
                tuple((int(f), float(t)) for f, t in tree["levels"]),
                np.array(tree["leaf_values"], dtype=float),
                tuple(float(g) for g in tree.get("gains", [0.0] * len(tree["levels"]))),
            )
            for tree in doc["trees"]
        )
        return Ensemble(
            trees=trees,
            learning_rate=float(doc["learning_rate"]),
            base_score=float(doc["base_score"]),
            feature_count=int(doc["feature_count"]),
            training_meta=doc.get("training_meta", {}),
            flags=tuple(doc.get("flags", ())),
        )
    except (KeyError, TypeError, ValueError, TsaBadInputShape) as err:
        raise ModelFormatError(f"malformed tree in model file {path}: {err}") from err
