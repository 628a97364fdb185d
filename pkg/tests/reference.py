"""Naive pure-Python reference implementations used as test oracles.

Nothing here touches the package's numerical code paths.
"""
import math
from itertools import product


def shepard(query, points, k):
    dists = [math.sqrt(sum((a - b) ** 2 for a, b in zip(query, p))) for p in points]
    zero = [d == 0.0 for d in dists]
    if any(zero):
        hits = sum(zero)
        return [1.0 / hits if z else 0.0 for z in zero]
    w = [1.0 / d ** k for d in dists]
    s = sum(w)
    return [v / s for v in w]


def class_probabilities(query, points, labels, c, k):
    phi = shepard(query, points, k)
    probs = [0.0] * c
    for j in range(len(points)):
        for i in range(c):
            rho = 1.0 if labels[j] == i + 1 else 0.0
            probs[i] += rho * phi[j]
    return probs


def feature_curves(column, labels, c, grid, k):
    """curves[i][t] for a single feature column."""
    curves = [[0.0] * len(grid) for _ in range(c)]
    for t, q in enumerate(grid):
        phi = shepard([q], [[v] for v in column], k)
        for l in range(len(column)):
            curves[labels[l] - 1][t] += phi[l]
    return curves


def overlap(column, labels, c, p, k):
    grid = [t / (p - 1) for t in range(p)]
    curves = feature_curves(column, labels, c, grid, k)
    pairs = []
    for a in range(c):
        for b in range(a + 1, c):
            pairs.append(sum(min(curves[a][t], curves[b][t]) for t in range(p)) / p)
    return sum(pairs) / len(pairs)


def chi2(X, labels, c):
    m, n = len(X), len(X[0])
    out = []
    for j in range(n):
        total = sum(X[r][j] for r in range(m))
        stat = 0.0
        for i in range(1, c + 1):
            rows = [r for r in range(m) if labels[r] == i]
            obs = sum(X[r][j] for r in rows)
            exp = len(rows) / m * total
            if exp > 0:
                stat += (obs - exp) ** 2 / exp
        out.append(stat)
    return out


def anova_f(X, labels, c):
    m, n = len(X), len(X[0])
    out = []
    for j in range(n):
        col = [X[r][j] for r in range(m)]
        grand = sum(col) / m
        ssb = ssw = 0.0
        for i in range(1, c + 1):
            g = [col[r] for r in range(m) if labels[r] == i]
            mu = sum(g) / len(g)
            ssb += len(g) * (mu - grand) ** 2
            ssw += sum((v - mu) ** 2 for v in g)
        out.append((ssb / (c - 1)) / (ssw / (m - c)))
    return out


def knn(X, labels, query, neighbors):
    dists = sorted((sum((a - b) ** 2 for a, b in zip(row, query)), idx)
                   for idx, row in enumerate(X))
    votes = {}
    for _, idx in dists[:neighbors]:
        votes[labels[idx]] = votes.get(labels[idx], 0) + 1
    best = max(votes.values())
    return min(lab for lab, v in votes.items() if v == best)


def wilcoxon_enumerated_p(diffs):
    """Two-sided p by enumerating all 2**n sign flips of the observed ranks."""
    d = [x for x in diffs if x != 0]
    absd = sorted(abs(x) for x in d)
    ranks = {}
    i = 0
    while i < len(absd):
        j = i
        while j + 1 < len(absd) and absd[j + 1] == absd[i]:
            j += 1
        ranks[absd[i]] = (i + j) / 2 + 1
        i = j + 1
    r = [ranks[abs(x)] for x in d]
    w_plus = sum(rk for rk, x in zip(r, d) if x > 0)
    w = min(w_plus, sum(r) - w_plus)
    hits = 0
    for signs in product((0, 1), repeat=len(r)):
        s = sum(rk for rk, sg in zip(r, signs) if sg)
        if s <= w + 1e-9:
            hits += 1
    return min(1.0, 2 * hits / 2 ** len(r))
