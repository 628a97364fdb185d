"""FEMa-FS: rank features by how much their per-class probability curves overlap.

For each feature a one-dimensional FEMa manifold is sampled on a grid over
[0, 1]; the score is the mean, over class pairs and grid points, of the
pointwise minimum of the two class curves. Lower scores mean better
separated classes.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .basis import check_smoothness, shepard_basis_feature
from .dataset import LabeledDataset
from .errors import DimensionError
from .fema import check_normalized, class_sums

DEFAULT_GRID = 101
DEFAULT_K = 2.0


@dataclass(frozen=True, eq=False)
class SamplingGrid:
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("a sampling grid needs at least two points")
        if pts[0] != 0.0 or pts[-1] != 1.0 or np.any(np.diff(pts) <= 0):
            raise ValueError("grid must increase strictly from 0.0 to 1.0")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size


@dataclass(frozen=True, eq=False)
class FeatureManifold:
    """Class curves of one feature: ``curves[i, t]`` is P(class i+1 | q_t)."""

    feature_index: int
    curves: np.ndarray


@dataclass(frozen=True)
class RankEntry:
    index: int
    score: float
    constant: bool = False


@dataclass(frozen=True)
class FeatureRanking:
    entries: tuple[RankEntry, ...]

    @property
    def order(self) -> list[int]:
        return [e.index for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def build_grid(p: int = DEFAULT_GRID) -> SamplingGrid:
    """Uniform grid ``t / (p - 1)`` for ``t = 0..p-1``."""
    if int(p) != p or p < 2:
        raise ValueError(f"grid size must be an integer >= 2, got {p}")
    p = int(p)
    return SamplingGrid(np.array([t / (p - 1) for t in range(p)]))


def feature_manifold(train: LabeledDataset, j: int, grid: SamplingGrid,
                     k: float = DEFAULT_K) -> FeatureManifold:
    k = check_smoothness(k)
    if not 0 <= j < train.n_features:
        raise IndexError(f"feature index {j} out of range 0..{train.n_features - 1}")
    phi = shepard_basis_feature(grid.points, train.features, j, k)
    return FeatureManifold(j, class_sums(phi, train.labels, train.class_count).T)


def overlap_score(manifold: FeatureManifold) -> float:
    """Mean over class pairs of the grid-averaged pointwise minimum."""
    P = manifold.curves
    c = P.shape[0]
    if c < 2:
        return 0.0
    pair_means = [float(np.minimum(P[a], P[b]).mean())
                  for a, b in combinations(range(c), 2)]
    return math.fsum(pair_means) / len(pair_means)


def default_workers() -> int:
    env = os.environ.get("FEMAFS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"FEMAFS_THREADS must be an integer, got {env!r}") from None
    return min(8, os.cpu_count() or 1)


def rank_features(train: LabeledDataset, grid: SamplingGrid | None = None,
                  k: float = DEFAULT_K, workers: int | None = None) -> FeatureRanking:
    """Order features by ascending overlap score.

    Features constant over the training set are flagged and placed last.
    Score ties resolve to the lower feature index. Scores are computed per
    feature independently, so the result does not depend on `workers`.
    """
    k = check_smoothness(k)
    grid = grid if grid is not None else build_grid()
    check_normalized(train.features)
    X = train.features
    n = X.shape[1]

    def score(j):
        return overlap_score(feature_manifold(train, j, grid, k))

    workers = default_workers() if workers is None else max(1, int(workers))
    if workers > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=min(workers, n)) as pool:
            scores = list(pool.map(score, range(n)))
    else:
        scores = [score(j) for j in range(n)]
    constant = (X.max(axis=0) == X.min(axis=0)).tolist()
    entries = [RankEntry(j, scores[j], bool(constant[j])) for j in range(n)]
    entries.sort(key=lambda e: (e.constant, e.score, e.index))
    return FeatureRanking(tuple(entries))


def select_top(ranking, percent: float) -> list[int]:
    """First ``ceil(n * percent / 100)`` feature indices of `ranking`."""
    if not 0.0 < percent <= 100.0:
        raise ValueError(f"percent must be in (0, 100], got {percent}")
    order = ranking.order if isinstance(ranking, FeatureRanking) else list(ranking)
    count = math.ceil(round(len(order) * percent / 100.0, 9))
    return order[:count]


def project(data: LabeledDataset, subset: Sequence[int]) -> LabeledDataset:
    """Keep only the columns in `subset`, in the given order."""
    idx = [int(i) for i in subset]
    if len(set(idx)) != len(idx):
        raise DimensionError(f"duplicate feature indices in {idx}")
    bad = [i for i in idx if not 0 <= i < data.n_features]
    if bad:
        raise IndexError(f"feature indices {bad} out of range 0..{data.n_features - 1}")
    if not idx:
        raise DimensionError("cannot project onto an empty feature subset")
    return data.with_features(data.features[:, idx],
                              tuple(data.feature_names[i] for i in idx))
