"""
The `tsaboost.boost` subpackage contains the oblivious-tree boosting classifier
with gradient harmonizing sample weights.
"""

__all__ = [
    "Quantizer",
    "ObliviousTree",
    "build_oblivious_tree",
    "Ensemble",
    "fit",
    "predict_proba",
    "ghm_weights",
    "gradient_modulus",
    "ce_loss",
    "harmonized_loss",
    "FeatureImportanceReport",
    "feature_importance",
    "save_model",
    "load_model",
]

from tsaboost._src.boost.boost_ensemble import Ensemble
from tsaboost._src.boost.boost_ensemble import fit
from tsaboost._src.boost.boost_ensemble import predict_proba
from tsaboost._src.boost.boost_ghm import ce_loss
from tsaboost._src.boost.boost_ghm import ghm_weights
from tsaboost._src.boost.boost_ghm import gradient_modulus
from tsaboost._src.boost.boost_ghm import harmonized_loss
from tsaboost._src.boost.boost_importance import feature_importance
from tsaboost._src.boost.boost_importance import FeatureImportanceReport
from tsaboost._src.boost.boost_io import load_model
from tsaboost._src.boost.boost_io import save_model
from tsaboost._src.boost.boost_tree import build_oblivious_tree
from tsaboost._src.boost.boost_tree import ObliviousTree
from tsaboost._src.boost.boost_tree import Quantizer
