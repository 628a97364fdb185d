"""Two-sided Wilcoxon signed-rank test for paired samples.

Zero differences are discarded (Wilcoxon's original rule) and tied absolute
differences share their average rank. Up to :data:`EXACT_MAX_N` nonzero
pairs the p-value comes from the exact sign-flip distribution of the ranks
actually observed; above that a tie-corrected normal approximation with
continuity correction is used.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

from .errors import DimensionError

EXACT_MAX_N = 25
MIN_PAIRS = 5


class Decision(str, enum.Enum):
    SIMILAR = "similar"
    FIRST_BETTER = "first_better"
    SECOND_BETTER = "second_better"
    INCONCLUSIVE = "inconclusive"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]


_SYMBOLS = {Decision.SIMILAR: "=", Decision.FIRST_BETTER: "↑",
            Decision.SECOND_BETTER: "↓", Decision.INCONCLUSIVE: "?"}


@dataclass(frozen=True)
class WilcoxonResult:
    statistic: float
    p_value: float
    decision: Decision
    alpha: float
    n_used: int
    w_plus: float
    w_minus: float
    method: str


def average_ranks(values) -> np.ndarray:
    """1-based ranks, tied values receiving the mean of their positions."""
    v = np.asarray(values, dtype=float)
    order = np.argsort(v, kind="stable")
    ranks = np.empty(v.size)
    sorted_v = v[order]
    i = 0
    while i < v.size:
        j = i
        while j + 1 < v.size and sorted_v[j + 1] == sorted_v[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def exact_lower_tail(doubled_ranks, threshold: int) -> float:
    """P(sum of a random sign-subset of `doubled_ranks` <= `threshold`).

    Ranks are passed doubled so half-ranks from ties stay integral.
    """
    total = int(sum(doubled_ranks))
    counts = [0] * (total + 1)
    counts[0] = 1
    reach = 0
    for r in doubled_ranks:
        r = int(r)
        for s in range(reach, -1, -1):
            if counts[s]:
                counts[s + r] += counts[s]
        reach += r
    hits = sum(counts[:max(0, threshold) + 1]) if threshold >= 0 else 0
    return hits / 2 ** len(doubled_ranks)


def wilcoxon_signed_rank(a, b, alpha: float = 0.05) -> WilcoxonResult:
    """Compare paired samples `a` and `b`.

    The decision is INCONCLUSIVE when fewer than :data:`MIN_PAIRS` pairs are
    given or fewer than that many differences are nonzero, SIMILAR when all
    differences vanish or ``p >= alpha``, otherwise FIRST_BETTER or
    SECOND_BETTER by which signed-rank sum is larger.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionError(f"paired samples differ in shape: {a.shape} vs {b.shape}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    d = a - b
    d = d[d != 0.0]
    n = d.size
    if a.size < MIN_PAIRS:
        return WilcoxonResult(0.0, 1.0, Decision.INCONCLUSIVE, alpha, n, 0.0, 0.0, "none")
    if n == 0:
        return WilcoxonResult(0.0, 1.0, Decision.SIMILAR, alpha, 0, 0.0, 0.0, "none")
    ranks = average_ranks(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    w_minus = float(ranks[d < 0].sum())
    w = min(w_plus, w_minus)
    if n < MIN_PAIRS:
        return WilcoxonResult(w, 1.0, Decision.INCONCLUSIVE, alpha, n, w_plus, w_minus, "none")
    if n <= EXACT_MAX_N:
        doubled = np.rint(2 * ranks).astype(int)
        p = min(1.0, 2.0 * exact_lower_tail(doubled, int(round(2 * w))))
        method = "exact"
    else:
        mean = n * (n + 1) / 4.0
        _, tie_sizes = np.unique(np.abs(d), return_counts=True)
        var = n * (n + 1) * (2 * n + 1) / 24.0 - float(np.sum(tie_sizes ** 3 - tie_sizes)) / 48.0
        if var <= 0:
            p = 1.0
        else:
            z = (w - mean + 0.5) / math.sqrt(var)
            p = min(1.0, 2.0 * NormalDist().cdf(z))
        method = "normal"
    if p >= alpha:
        decision = Decision.SIMILAR
    elif w_plus > w_minus:
        decision = Decision.FIRST_BETTER
    else:
        decision = Decision.SECOND_BETTER
    return WilcoxonResult(w, p, decision, alpha, n, w_plus, w_minus, method)
