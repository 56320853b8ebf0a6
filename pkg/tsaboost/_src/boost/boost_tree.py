"""Quantile binning and level-wise growth of oblivious (symmetric) trees."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from tsaboost._src.defaults.defaults_classes import default_settings
from tsaboost._src.exceptions import TsaBadInputShape
from tsaboost._src.exceptions import TsaBadUserInput
from tsaboost._src.input_checks import check_finite_features
from tsaboost._src.input_checks import check_format_features

# histogram cells evaluated per chunk of features
_CHUNK_CELLS = 4_000_000
# relative score margin within which split candidates count as tied
_TIE_TOLERANCE = 1e-12


class Quantizer:
    """
    Per-feature candidate thresholds ("borders").

    A feature with at most `max_borders + 1` distinct values gets the midpoints
    between consecutive distinct values, otherwise the inner quantiles of an even
    grid. A value `x` falls into bin `k` = number of borders strictly below `x`,
    so `bin > k` is equivalent to `x > borders[k]`. `upper` holds the largest
    training value of every feature.

    Examples
    --------
    >>> import numpy as np
    >>> from tsaboost._src.boost.boost_tree import Quantizer
    >>> q = Quantizer.fit(np.array([[1.0], [2.0], [3.0], [4.0]]))
    >>> print(q.borders[0])
    [1.5 2.5 3.5]
    """

    def __init__(self, borders, upper=None):
        self.borders = tuple(np.asarray(b, dtype=float) for b in borders)
        if upper is None:
            upper = [b[-1] if len(b) else 0.0 for b in self.borders]
        self.upper = np.asarray(upper, dtype=float)

    @classmethod
    def fit(cls, features, max_borders=32):
        """borders of every column of the (n, d) matrix `features`"""
        features = np.asarray(features, dtype=float)
        borders = []
        for col in features.T:
            uniq = np.unique(col)
            if len(uniq) <= max_borders + 1:
                b = (uniq[:-1] + uniq[1:]) / 2
            else:
                levels = np.linspace(0, 1, max_borders + 2)[1:-1]
                b = np.unique(np.quantile(col, levels))
                b = b[(b >= uniq[0]) & (b < uniq[-1])]
            borders.append(b)
        upper = features.max(axis=0) if len(features) else np.zeros(features.shape[1])
        return cls(borders, upper)

    @property
    def n_borders(self):
        """number of borders per feature"""
        return np.array([len(b) for b in self.borders], dtype=np.int64)

    def transform(self, features):
        """(n, d) integer bin matrix"""
        features = np.asarray(features, dtype=float)
        if features.shape[1] != len(self.borders):
            raise TsaBadInputShape(f"expected {len(self.borders)}, got {features.shape[1]}")
        binned = np.empty(features.shape, dtype=np.int64)
        for f, b in enumerate(self.borders):
            binned[:, f] = np.searchsorted(b, features[:, f], side="left")
        return binned


@dataclass(frozen=True, eq=False)
class ObliviousTree:
    """
    Decision tree sharing one (feature, threshold) split per level.

    A sample goes right at level `l` when `x[feature_l] > threshold_l`; the outcome
    of the first level is the most significant bit of the leaf index.
    `gains` holds the weighted squared-error reduction of every level.
    """

    levels: Tuple[Tuple[int, float], ...]
    leaf_values: np.ndarray
    gains: Tuple[float, ...]

    def __post_init__(self):
        if len(self.leaf_values) != 2 ** len(self.levels):
            raise TsaBadInputShape(
                f"tree of depth {len(self.levels)} needs {2 ** len(self.levels)} leaf "
                f"values, got {len(self.leaf_values)}"
            )

    @property
    def depth(self):
        """number of levels"""
        return len(self.levels)

    def leaf_index(self, features):
        """leaf of every row of the (n, d) matrix `features`"""
        features = np.asarray(features, dtype=float)
        idx = np.zeros(len(features), dtype=np.int64)
        for f, t in self.levels:
            idx = 2 * idx + (features[:, f] > t)
        return idx

    def predict(self, features):
        """leaf value of every row"""
        return self.leaf_values[self.leaf_index(features)]


def leaf_means(leaf, targets, weights, n_leaves):
    """weighted target mean per leaf, empty leaves get 0"""
    s = np.bincount(leaf, weights=weights * targets, minlength=n_leaves)
    w = np.bincount(leaf, weights=weights, minlength=n_leaves)
    return np.divide(s, w, out=np.zeros(n_leaves), where=w > 0)


def _level_scores(binned, leaf, n_leaves, wt, w, n_bins):
    """
    score[f, k] = sum over leaves of S_left^2/W_left + S_right^2/W_right when splitting
    at border k of feature f, plus the smallest populated child per candidate
    """
    n, d = binned.shape
    scores = np.empty((d, n_bins - 1))
    smallest = np.empty((d, n_bins - 1))
    chunk = max(1, _CHUNK_CELLS // (n_leaves * n_bins))
    for start in range(0, d, chunk):
        cols = slice(start, min(d, start + chunk))
        width = cols.stop - start
        size = n_leaves * width * n_bins
        flat = (leaf[:, None] * width + np.arange(width)[None, :]) * n_bins + binned[:, cols]
        flat = flat.ravel()
        shape = (n_leaves, width, n_bins)
        hs = np.bincount(flat, weights=np.repeat(wt, width), minlength=size).reshape(shape)
        hw = np.bincount(flat, weights=np.repeat(w, width), minlength=size).reshape(shape)
        hc = np.bincount(flat, minlength=size).reshape(shape)

        ls, lw, lc = (np.cumsum(h, axis=2)[:, :, :-1] for h in (hs, hw, hc))
        rs = hs.sum(axis=2, keepdims=True) - ls
        rw = hw.sum(axis=2, keepdims=True) - lw
        rc = hc.sum(axis=2, keepdims=True) - lc
        left = np.divide(ls**2, lw, out=np.zeros_like(ls), where=lc > 0)
        right = np.divide(rs**2, rw, out=np.zeros_like(rs), where=rc > 0)
        scores[cols] = (left + right).sum(axis=0)
        big = np.iinfo(np.int64).max
        lc_pop = np.where(lc > 0, lc, big).min(axis=0)
        rc_pop = np.where(rc > 0, rc, big).min(axis=0)
        smallest[cols] = np.minimum(lc_pop, rc_pop)
    return scores, smallest


def grow_tree(binned, quantizer, targets, weights, depth, min_samples_per_leaf=1):
    """
    Grow an oblivious tree on pre-binned features.

    At every level the single (feature, border) pair maximizing the summed
    S^2/W over all children is chosen, which minimizes the weighted squared error
    of the leaf means. Ties go to the lowest feature index, then the lowest border.
    When no feature offers a valid border, the level splits feature 0 at its
    training maximum and sends every training sample left.

    Returns
    -------
    (ObliviousTree, ndarray)
        the tree and the leaf index of every sample
    """
    n = len(binned)
    n_borders = quantizer.n_borders
    n_bins = int(n_borders.max(initial=0)) + 1
    wt = weights * targets
    leaf = np.zeros(n, dtype=np.int64)
    levels, gains = [], []

    for level in range(depth):
        n_leaves = 2**level
        base_s = np.bincount(leaf, weights=wt, minlength=n_leaves)
        base_w = np.bincount(leaf, weights=weights, minlength=n_leaves)
        base = np.divide(base_s**2, base_w, out=np.zeros(n_leaves), where=base_w > 0).sum()

        best = None
        if n_bins > 1:
            scores, smallest = _level_scores(binned, leaf, n_leaves, wt, weights, n_bins)
            valid = np.arange(n_bins - 1)[None, :] < n_borders[:, None]
            valid &= smallest >= min_samples_per_leaf
            if valid.any():
                scores = np.where(valid, scores, -np.inf)
                top = scores.max()
                tied = scores >= top - _TIE_TOLERANCE * max(1.0, abs(top))
                f, k = np.unravel_index(np.argmax(tied), tied.shape)
                best = (int(f), int(k), float(scores[f, k]))

        if best is None:
            levels.append((0, float(quantizer.upper[0])))
            gains.append(0.0)
            leaf = 2 * leaf
            continue
        f, k, score = best
        levels.append((f, float(quantizer.borders[f][k])))
        gains.append(max(0.0, score - base))
        leaf = 2 * leaf + (binned[:, f] > k)

    values = leaf_means(leaf, targets, weights, 2**depth)
    return ObliviousTree(tuple(levels), values, tuple(gains)), leaf


def build_oblivious_tree(features, targets, weights, depth, config=None, quantizer=None):
    """
    Fit an oblivious tree of `depth` levels to `targets` by weighted least squares.

    Parameters
    ----------
    features: array_like, shape (n, d)
    targets: array_like, shape (n,)
        negative gradients
    weights: array_like, shape (n,)
        positive sample weights
    depth: int
    config: TrainingConfig, optional
        supplies `threshold_candidates_per_feature` and `min_samples_per_leaf`,
        default `defaults.training`
    quantizer: Quantizer, optional
        precomputed borders

    Returns
    -------
    ObliviousTree

    Examples
    --------
    >>> import numpy as np
    >>> from tsaboost._src.boost.boost_tree import build_oblivious_tree
    >>> tree = build_oblivious_tree([[1.0], [2.0], [3.0], [4.0]], [0, 0, 1, 1], np.ones(4), 1)
    >>> tree.levels, tree.leaf_values.tolist()
    (((0, 2.5),), [0.0, 1.0])
    """
    cfg = default_settings.training if config is None else config
    features = check_format_features(features)
    check_finite_features(features)
    n = len(features)
    targets = np.asarray(targets, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if targets.shape != (n,) or weights.shape != (n,):
        raise TsaBadInputShape(
            f"Input parameters `targets` and `weights` must have length {n}.\n"
            f"Instead received shapes {targets.shape} and {weights.shape}."
        )
    if np.any(weights <= 0):
        raise TsaBadUserInput("Input parameter `weights` must be positive.")
    if quantizer is None:
        quantizer = Quantizer.fit(features, cfg.threshold_candidates_per_feature)
    binned = quantizer.transform(features)
    tree, _ = grow_tree(
        binned, quantizer, targets, weights, depth, cfg.min_samples_per_leaf
    )
    return tree
