"""Gradient-boosted oblivious trees with cross-entropy loss and GHM reweighting."""
import logging
from dataclasses import dataclass
from dataclasses import field
from typing import Tuple

import numpy as np

from tsaboost._src.boost.boost_ghm import ce_loss
from tsaboost._src.boost.boost_ghm import logistic_gradient_stats
from tsaboost._src.boost.boost_ghm import P_CLAMP
from tsaboost._src.boost.boost_ghm import sigmoid
from tsaboost._src.boost.boost_tree import grow_tree
from tsaboost._src.boost.boost_tree import leaf_means
from tsaboost._src.boost.boost_tree import ObliviousTree
from tsaboost._src.boost.boost_tree import Quantizer
from tsaboost._src.defaults.defaults_classes import default_settings
from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.input_checks import check_finite_features
from tsaboost._src.input_checks import check_format_features
from tsaboost._src.input_checks import check_format_labels

logger = logging.getLogger(__name__)

FLAG_SINGLE_CLASS = "single_class"


@dataclass(frozen=True, eq=False)
class Ensemble:
    """
    Additive model F(x) = base_score + learning_rate * sum of tree outputs.

    Examples
    --------
    >>> import math
    >>> from tsaboost._src.boost.boost_ensemble import Ensemble
    >>> e = Ensemble(trees=(), learning_rate=0.1, base_score=math.log(3), feature_count=2)
    >>> round(e.predict_proba([0.0, 0.0]), 12)
    0.75
    """

    trees: Tuple[ObliviousTree, ...]
    learning_rate: float
    base_score: float
    feature_count: int
    training_meta: dict = field(default_factory=dict)
    flags: Tuple[str, ...] = ()

    def predict_raw(self, features):
        """raw scores F(x) of a vector (returns float) or an (n, d) matrix"""
        x = np.asarray(features, dtype=float)
        arr = check_format_features(x, self.feature_count)
        raw = np.full(len(arr), self.base_score)
        if self.trees:
            total = np.zeros(len(arr))
            for tree in self.trees:
                total += tree.predict(arr)
            raw += self.learning_rate * total
        return float(raw[0]) if x.ndim == 1 else raw

    def predict_proba(self, features):
        """probability of the stable class"""
        raw = self.predict_raw(features)
        return float(sigmoid(raw)) if np.ndim(raw) == 0 else sigmoid(raw)

    def predict_labels(self, features, threshold=0.5):
        """1 where the stable-class probability is at least `threshold`"""
        p = self.predict_proba(features)
        return int(p >= threshold) if np.ndim(p) == 0 else (p >= threshold).astype(np.int64)


def predict_proba(ensemble, features):
    """p = 1 / (1 + exp(-F(x))) for a feature vector or matrix"""
    return ensemble.predict_proba(features)


def _split_input(data, labels):
    if labels is None:
        if not hasattr(data, "features"):
            raise TsaBadUserInput(
                "Input parameter `labels` is required unless a Dataset is given."
            )
        return data.features, data.labels
    return data, labels


def _prefix_update(order, leaf, residual, weights, n_leaves):
    """
    Exclusive weighted running mean of `residual` per leaf, in the sample order
    `order`; samples without a predecessor in their leaf get 0.
    """
    lo = leaf[order]
    srt = np.argsort(lo, kind="stable")
    lo_s = lo[srt]
    ws = weights[order][srt]
    rs = residual[order][srt] * ws
    excl_s = np.cumsum(rs) - rs
    excl_w = np.cumsum(ws) - ws
    starts = np.searchsorted(lo_s, np.arange(n_leaves), side="left")
    group_start = starts[lo_s]
    excl_s -= excl_s[group_start]
    excl_w -= excl_w[group_start]
    mean_s = np.divide(excl_s, excl_w, out=np.zeros_like(excl_s), where=excl_w > 0)
    out = np.empty(len(order))
    out[order[srt]] = mean_s
    return out


def fit(data, labels=None, config=None):
    """
    Train a boosted ensemble of oblivious trees.

    Every iteration computes p from the current raw scores, uses the residuals
    y - p as regression targets and, when GHM is enabled, the coordination
    parameters of the gradient moduli |p - y| as sample weights. In 'ordered' mode
    the tree structure is chosen on residuals of prefix models that never saw the
    sample itself, while the leaf values are fitted on the full set.

    Parameters
    ----------
    data: Dataset or array_like, shape (n, d)
    labels: array_like, shape (n,), optional
        required when `data` is a feature matrix
    config: TrainingConfig, optional
        default `defaults.training`

    Returns
    -------
    Ensemble
        single-class input yields a tree-less ensemble flagged `single_class`
    """
    cfg = default_settings.training if config is None else config
    features, labels = _split_input(data, labels)
    x = check_format_features(features)
    check_finite_features(x)
    n = len(x)
    if n < 2:
        raise TsaBadUserInput(
            f"Input parameter `features` must hold at least 2 samples.\nInstead received {n}."
        )
    y = check_format_labels(labels, n)
    n_pos = int(y.sum())
    meta = {
        "config": cfg.as_dict(),
        "n_samples": n,
        "n_positive": n_pos,
        "train_loss": [],
    }

    if n_pos in (0, n):
        prior = min(max(n_pos / n, P_CLAMP), 1 - P_CLAMP)
        base = float(np.log(prior / (1 - prior)))
        meta["train_loss"] = [float(np.mean(ce_loss(sigmoid(base), y)))]
        logger.warning("training data holds a single class, returning the prior only")
        return Ensemble((), cfg.learning_rate, base, x.shape[1], meta, (FLAG_SINGLE_CLASS,))

    base = float(np.log(n_pos / (n - n_pos)))
    quantizer = Quantizer.fit(x, cfg.threshold_candidates_per_feature)
    binned = quantizer.transform(x)
    ghm = cfg.ghm
    lr, depth = cfg.learning_rate, cfg.depth
    n_leaves = 2**depth
    ordered = cfg.boosting_mode == "ordered"

    raw = np.full(n, base)
    counts = None
    if ordered:
        rng = np.random.default_rng(cfg.rng_seed)
        perms = [rng.permutation(n) for _ in range(cfg.n_permutations)]
        prefix_raw = [raw.copy() for _ in perms]

    def weights_of(raw_scores, previous):
        if not ghm.enabled:
            return np.ones(n), previous
        stats = logistic_gradient_stats(raw_scores, y, ghm.z_bins, ghm.momentum, previous)
        return stats.beta, stats.bin_counts

    trees = []
    for it in range(cfg.n_iterations):
        if ordered:
            r = int(rng.integers(len(perms)))
            w_struct, _ = weights_of(prefix_raw[r], counts)
            residual = y - sigmoid(prefix_raw[r])
            structure, leaf = grow_tree(
                binned, quantizer, residual, w_struct, depth, cfg.min_samples_per_leaf
            )
            w, counts = weights_of(raw, counts)
            values = leaf_means(leaf, y - sigmoid(raw), w, n_leaves)
            tree = ObliviousTree(structure.levels, values, structure.gains)
            for k, order in enumerate(perms):
                res_k = y - sigmoid(prefix_raw[k])
                prefix_raw[k] = prefix_raw[k] + lr * _prefix_update(
                    order, leaf, res_k, w, n_leaves
                )
        else:
            w, counts = weights_of(raw, counts)
            tree, leaf = grow_tree(
                binned, quantizer, y - sigmoid(raw), w, depth, cfg.min_samples_per_leaf
            )
        raw = raw + lr * tree.leaf_values[leaf]
        trees.append(tree)
        loss = float(np.mean(ce_loss(sigmoid(raw), y)))
        meta["train_loss"].append(loss)
        if (it + 1) % 100 == 0:
            logger.debug("iteration %d, mean training loss %.6f", it + 1, loss)

    logger.info(
        "trained %d trees of depth %d (%s, GHM %s), final loss %.6f",
        len(trees),
        depth,
        cfg.boosting_mode,
        "on" if ghm.enabled else "off",
        meta["train_loss"][-1],
    )
    return Ensemble(tuple(trees), lr, base, x.shape[1], meta)
