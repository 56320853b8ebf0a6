"""Split-gain feature importance of a trained ensemble."""
from dataclasses import dataclass

import numpy as np
import pandas as pd

from tsaboost._src.sim.sim_features import describe_feature


@dataclass(frozen=True, eq=False)
class FeatureImportanceReport:
    """per-feature scores normalized to sum 100, `ranking` holds indices by descending score"""

    scores: np.ndarray
    ranking: np.ndarray

    def to_frame(self, case=None, top=None):
        """
        Ranking table with columns rank, feature, name, score.

        Names come from `case` when given ("theta bus 8"), else "x_<index>".
        """
        idx = self.ranking if top is None else self.ranking[:top]
        if case is None:
            names = [f"x_{k}" for k in idx]
        else:
            names = [describe_feature(k, case) for k in idx]
        return pd.DataFrame(
            {
                "rank": np.arange(1, len(idx) + 1),
                "feature": np.asarray(idx, dtype=np.int64),
                "name": names,
                "score": self.scores[idx],
            }
        )

    def to_text(self, case=None, top=None):
        """fixed-width ranking table, scores with 2 decimals"""
        df = self.to_frame(case, top)
        lines = [f"{'rank':>4}  {'feature':>7}  {'name':<16}  {'score':>7}"]
        for row in df.itertuples(index=False):
            lines.append(f"{row.rank:>4}  {row.feature:>7}  {row.name:<16}  {row.score:>7.2f}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path, case=None, top=None):
        """write the ranking table as CSV"""
        self.to_frame(case, top).to_csv(
            path, index=False, float_format="%.6g", lineterminator="\n"
        )


def feature_importance(ensemble):
    """
    Sum of the squared-error reductions of every level splitting on a feature,
    accumulated over all trees and normalized to 100.

    Examples
    --------
    >>> from tsaboost._src.boost.boost_ensemble import Ensemble
    >>> from tsaboost._src.boost.boost_importance import feature_importance
    >>> rep = feature_importance(Ensemble((), 0.1, 0.0, 3))
    >>> rep.scores.tolist(), rep.ranking.tolist()
    ([0.0, 0.0, 0.0], [])
    """
    scores = np.zeros(ensemble.feature_count)
    for tree in ensemble.trees:
        for (f, _), gain in zip(tree.levels, tree.gains):
            scores[f] += gain
    total = scores.sum()
    if total <= 0:
        return FeatureImportanceReport(np.zeros(ensemble.feature_count), np.array([], dtype=np.int64))
    scores = 100 * scores / total
    ranking = np.lexsort((np.arange(len(scores)), -scores))
    return FeatureImportanceReport(scores, ranking[scores[ranking] > 0])
