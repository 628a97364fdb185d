"""Comparison selectors (chi-squared, ANOVA F) and a k-NN evaluation classifier."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import LabeledDataset
from .errors import DatasetError, DimensionError
from .fema import one_hot

#: Stand-in score for features whose within-class variance is zero.
F_SENTINEL = 1e300


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """Per-feature filter scores; larger is better.

    `degenerate` marks features whose statistic is undefined (zero expected
    counts for chi-squared, zero within-class variance for ANOVA).
    """

    scores: np.ndarray
    degenerate: np.ndarray = field(default=None)
    direction: str = "higher"

    def __post_init__(self):
        if self.degenerate is None:
            object.__setattr__(self, "degenerate", np.zeros(self.scores.shape, dtype=bool))

    @property
    def order(self) -> list[int]:
        """Feature indices by descending score, ties to the lower index."""
        return np.lexsort((np.arange(self.scores.size), -self.scores)).tolist()


def chi2_scores(train: LabeledDataset) -> ScoreVector:
    """Chi-squared statistic from class-wise feature sums.

    Observed counts are the per-class sums of each feature; expected counts
    are the class prior times the feature's column total.
    """
    X = train.features
    if X.min() < 0:
        raise DatasetError("chi-squared scores need non-negative features")
    Y = one_hot(train.labels, train.class_count)
    observed = Y.T @ X
    expected = np.outer(Y.mean(axis=0), X.sum(axis=0))
    empty = expected <= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(empty, 0.0, (observed - expected) ** 2 / np.where(empty, 1.0, expected))
    return ScoreVector(terms.sum(axis=0), degenerate=empty.all(axis=0))


def anova_f_scores(train: LabeledDataset) -> ScoreVector:
    """One-way ANOVA F statistic per feature.

    Features with zero within-class variance get :data:`F_SENTINEL` (or 0.0
    when the class means agree as well) and are flagged degenerate.
    """
    X, y, c = train.features, train.labels, train.class_count
    m = X.shape[0]
    counts = np.bincount(y, minlength=c + 1)[1:]
    if np.any(counts < 2):
        raise DatasetError("ANOVA needs at least two samples per class")
    if m <= c:
        raise DatasetError("ANOVA needs more samples than classes")
    grand = X.mean(axis=0)
    ss_between = np.zeros(X.shape[1])
    ss_within = np.zeros(X.shape[1])
    for cls in range(1, c + 1):
        group = X[y == cls]
        mean = group.mean(axis=0)
        ss_between += group.shape[0] * (mean - grand) ** 2
        ss_within += ((group - mean) ** 2).sum(axis=0)
    ms_between = ss_between / (c - 1)
    ms_within = ss_within / (m - c)
    scale = np.maximum(np.abs(X).max(axis=0), 1.0) ** 2
    zero_within = ms_within <= 1e-24 * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        F = np.where(zero_within, 0.0, ms_between / np.where(zero_within, 1.0, ms_within))
    F = np.where(zero_within & (ms_between > 1e-24 * scale), F_SENTINEL, F)
    return ScoreVector(F, degenerate=zero_within)


def knn_predict(train: LabeledDataset, query, neighbors: int = 1):
    """Majority label among the `neighbors` nearest training samples.

    Distance ties go to the lower sample index and vote ties to the lower
    class id. Accepts a single query (n,) or a batch (q, n).
    """
    X, y = train.features, train.labels
    if neighbors < 1:
        raise ValueError("neighbors must be >= 1")
    if neighbors > X.shape[0]:
        raise ValueError(f"neighbors={neighbors} exceeds training size {X.shape[0]}")
    Q = np.asarray(query, dtype=float)
    single = Q.ndim == 1
    Q = np.atleast_2d(Q)
    if Q.shape[1] != X.shape[1]:
        raise DimensionError(f"query has {Q.shape[1]} features, training set {X.shape[1]}")
    step = max(1, (1 << 22) // max(1, X.shape[0] * X.shape[1]))
    out = np.empty(Q.shape[0], dtype=np.int64)
    for start in range(0, Q.shape[0], step):
        block = Q[start:start + step]
        d2 = ((block[:, None, :] - X[None, :, :]) ** 2).sum(axis=-1)
        nearest = np.argsort(d2, axis=1, kind="stable")[:, :neighbors]
        for r, idx in enumerate(nearest):
            votes = np.bincount(y[idx], minlength=train.class_count + 1)
            out[start + r] = int(np.argmax(votes))
    return int(out[0]) if single else out
