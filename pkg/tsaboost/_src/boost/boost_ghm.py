"""Cross-entropy loss and the gradient harmonizing sample weights."""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import expit

from tsaboost._src.exceptions import TsaBadUserInput

P_CLAMP = 1e-12


@dataclass(frozen=True, eq=False)
class GradientStats:
    """per-sample gradient moduli and coordination parameters, plus the bin occupancy"""

    p: Optional[np.ndarray]
    g: np.ndarray
    beta: np.ndarray
    bin_counts: np.ndarray
    bins: np.ndarray

    @property
    def gradient_density(self):
        """GD(g_i) = occupancy of the bin of sample i times the bin count Z"""
        return self.bin_counts[self.bins] * len(self.bin_counts)


def sigmoid(raw):
    """logistic function of raw scores"""
    return expit(raw)


def ce_loss(p, y):
    """
    Binary cross-entropy, probabilities clamped to [1e-12, 1-1e-12].

    Examples
    --------
    >>> from tsaboost._src.boost.boost_ghm import ce_loss
    >>> print(round(float(ce_loss(0.9, 0)), 6))
    2.302585
    """
    p = np.clip(np.asarray(p, dtype=float), P_CLAMP, 1 - P_CLAMP)
    y = np.asarray(y)
    return np.where(y == 1, -np.log(p), -np.log1p(-p))


def gradient_modulus(p, y):
    """
    Gradient modulus g = |p - y| of the cross-entropy loss with respect to the raw score.

    Examples
    --------
    >>> from tsaboost._src.boost.boost_ghm import gradient_modulus
    >>> print(gradient_modulus([0.7, 0.7, 1.0], [1, 0, 1]).round(12))
    [0.3 0.7 0. ]
    """
    return np.abs(np.asarray(p, dtype=float) - np.asarray(y, dtype=float))


def ghm_weights(g, z_bins, p=None, momentum=0.0, previous_counts=None):
    """
    Coordination parameters of the gradient harmonizing mechanism.

    The modulus range [0, 1] is cut into `z_bins` unit regions; sample i falls into
    region min(floor(g_i Z), Z-1). With R the occupancy of that region the gradient
    density is GD(g_i) = R Z and the coordination parameter is beta_i = n / GD(g_i).
    Samples in crowded regions are down-weighted.

    Parameters
    ----------
    g: array_like, shape (n,)
        gradient moduli within [0, 1]
    z_bins: int
        number of regions Z >= 1
    p: array_like, optional
        predicted probabilities, only stored
    momentum: float, default=0.0
        exponential moving average factor applied to the occupancy, 0 disables it
    previous_counts: ndarray, optional
        smoothed occupancy of the previous call

    Returns
    -------
    GradientStats

    Examples
    --------
    >>> from tsaboost._src.boost.boost_ghm import ghm_weights
    >>> stats = ghm_weights([0.05, 0.06, 0.55, 0.95], 10)
    >>> print(stats.beta)
    [0.2 0.2 0.4 0.4]
    """
    if isinstance(z_bins, bool) or int(z_bins) != z_bins or z_bins < 1:
        raise TsaBadUserInput(
            f"Input parameter `z_bins` must be an integer >=1.\nInstead received {z_bins!r}."
        )
    z_bins = int(z_bins)
    g = np.asarray(g, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise TsaBadUserInput("Input parameter `g` must be a non-empty 1D array.")
    if np.any((g < 0) | (g > 1)) or not np.all(np.isfinite(g)):
        raise TsaBadUserInput("Input parameter `g` must lie within [0, 1].")

    bins = np.minimum(np.floor(g * z_bins).astype(np.int64), z_bins - 1)
    counts = np.bincount(bins, minlength=z_bins).astype(float)
    if momentum and previous_counts is not None:
        counts = momentum * np.asarray(previous_counts, dtype=float) + (1 - momentum) * counts
    beta = len(g) / (counts[bins] * z_bins)
    return GradientStats(
        p=None if p is None else np.asarray(p, dtype=float),
        g=g,
        beta=beta,
        bin_counts=counts,
        bins=bins,
    )


def harmonized_loss(p, y, stats):
    """mean of beta_i times the cross-entropy of sample i"""
    return float(np.mean(stats.beta * ce_loss(p, y)))


def logistic_gradient_stats(raw, y, z_bins, momentum=0.0, previous_counts=None):
    """probabilities, moduli and coordination parameters of raw scores `raw`"""
    p = sigmoid(raw)
    g = np.clip(gradient_modulus(p, y), 0.0, 1.0)
    return ghm_weights(g, z_bins, p=p, momentum=momentum, previous_counts=previous_counts)
