"""Shepard inverse-distance basis functions.

The weight of training point ``x_i`` at a query ``x`` is
``w_i = 1 / ||x - x_i||**k`` and the basis value is ``w_i / sum_j w_j``.
Queries closer than :data:`COINCIDENCE_TOL` to one or more training points
put all their mass on those points, split evenly.
"""
from __future__ import annotations

import math

import numpy as np

from .dataset import LabeledDataset
from .errors import DimensionError

COINCIDENCE_TOL = 1e-12

#: Returned by :func:`inverse_distance_weight` when the two points coincide.
SINGULAR = math.inf


def check_smoothness(k: float) -> float:
    k = float(k)
    if not (k >= 1.0 and math.isfinite(k)):
        raise ValueError(f"smoothness k must be a finite real >= 1, got {k}")
    return k


def inverse_distance_weight(a, b, k: float = 2.0) -> float:
    """``1 / ||a - b||**k``, or :data:`SINGULAR` when ``a`` and ``b`` coincide."""
    k = check_smoothness(k)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    d = float(np.sqrt(np.sum((a - b) ** 2)))
    if d < COINCIDENCE_TOL:
        return SINGULAR
    return d ** -k


def weights_from_distances(dist: np.ndarray, k: float) -> np.ndarray:
    """Normalize a (..., m) array of distances into Shepard basis weights.

    Each row is scaled by its smallest distance before exponentiation, so
    large `k` or tiny distances cannot overflow.
    """
    dist = np.asarray(dist, dtype=float)
    if dist.shape[-1] == 0:
        raise ValueError("empty training set")
    hit = dist < COINCIDENCE_TOL
    dmin = dist.min(axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
        w = (np.where(hit, 1.0, dmin) / np.where(hit, 1.0, dist)) ** k
    coincident = hit.any(axis=-1, keepdims=True)
    w = np.where(coincident, hit.astype(float), w)
    return w / w.sum(axis=-1, keepdims=True)


def _points(train) -> np.ndarray:
    if isinstance(train, LabeledDataset):
        return train.features
    pts = np.asarray(train, dtype=float)
    return pts.reshape(-1, 1) if pts.ndim == 1 else pts


def shepard_basis(query, train, k: float = 2.0) -> np.ndarray:
    """Basis weights of every training sample at `query`.

    Parameters
    ----------
    query : array-like, shape (n,) or (q, n)
    train : LabeledDataset or array-like, shape (m, n)
    k : float
        Smoothness exponent, ``k >= 1``.

    Returns
    -------
    ndarray, shape (m,) or (q, m)
        Non-negative, each row summing to one.
    """
    k = check_smoothness(k)
    X = _points(train)
    if X.shape[0] == 0:
        raise ValueError("empty training set")
    Q = np.asarray(query, dtype=float)
    single = Q.ndim <= 1
    Q = np.atleast_2d(Q) if Q.ndim else Q.reshape(1, 1)
    if Q.shape[1] != X.shape[1]:
        raise DimensionError(f"query has {Q.shape[1]} features, training set {X.shape[1]}")
    dist = np.sqrt(((Q[:, None, :] - X[None, :, :]) ** 2).sum(axis=-1))
    w = weights_from_distances(dist, k)
    return w[0] if single else w


def shepard_basis_feature(q, train, feature_index: int, k: float = 2.0) -> np.ndarray:
    """Basis weights using the scalar distances ``|q - x_l[j]|`` of one feature.

    `q` may be a scalar or a 1-D array of grid points; in the latter case the
    result has shape ``(len(q), m)``.
    """
    k = check_smoothness(k)
    X = _points(train)
    if not 0 <= feature_index < X.shape[1]:
        raise IndexError(f"feature index {feature_index} out of range 0..{X.shape[1] - 1}")
    column = X[:, feature_index]
    q = np.asarray(q, dtype=float)
    dist = np.abs(q[..., None] - column)
    return weights_from_distances(dist, k)
