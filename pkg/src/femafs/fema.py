"""Finite Element Machine classifier.

Training is lazy: the model keeps the normalized training matrix and a
one-hot class assignment per sample. A query's class probabilities are the
Shepard-basis interpolation of those assignments.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import check_smoothness, shepard_basis
from .dataset import LabeledDataset
from .errors import DatasetError, DimensionError, NotNormalizedError

# Upper bound on query*train*feature elements materialized per chunk.
_CHUNK_ELEMENTS = 1 << 22

NORMALIZED_TOL = 1e-9


def one_hot(labels: np.ndarray, class_count: int) -> np.ndarray:
    rho = np.zeros((labels.shape[0], class_count))
    rho[np.arange(labels.shape[0]), labels - 1] = 1.0
    return rho


def class_sums(phi: np.ndarray, labels: np.ndarray, class_count: int) -> np.ndarray:
    """``phi @ one_hot(labels)`` as per-class row sums.

    Summation order depends only on the training data, never on how many
    query rows are in `phi`, so batched and single queries agree bitwise.
    """
    out = np.empty(phi.shape[:-1] + (class_count,))
    for i in range(class_count):
        out[..., i] = np.ascontiguousarray(phi[..., labels == i + 1]).sum(axis=-1)
    return out


def check_normalized(X: np.ndarray, what: str = "training data") -> None:
    if X.size and (X.min() < -NORMALIZED_TOL or X.max() > 1.0 + NORMALIZED_TOL):
        raise NotNormalizedError(
            f"{what} must be normalized to [0, 1]; found range "
            f"[{X.min():g}, {X.max():g}]")


@dataclass(frozen=True, eq=False)
class FemaModel:
    train: LabeledDataset
    rho: np.ndarray
    k: float

    @property
    def class_count(self) -> int:
        return self.rho.shape[1]


def fema_train(train: LabeledDataset, k: float = 2.0) -> FemaModel:
    k = check_smoothness(k)
    check_normalized(train.features)
    counts = np.bincount(train.labels, minlength=train.class_count + 1)[1:]
    if np.any(counts == 0):
        raise DatasetError(f"classes {list(np.flatnonzero(counts == 0) + 1)} are empty")
    rho = one_hot(train.labels, train.class_count)
    rho.setflags(write=False)
    return FemaModel(train, rho, k)


def fema_class_probabilities(model: FemaModel, query) -> np.ndarray:
    """Class probabilities ``F_i(query)``, shape (c,) or (q, c) for a batch."""
    Q = np.asarray(query, dtype=float)
    single = Q.ndim == 1
    Q = np.atleast_2d(Q)
    X = model.train.features
    if Q.shape[1] != X.shape[1]:
        raise DimensionError(f"query has {Q.shape[1]} features, model has {X.shape[1]}")
    step = max(1, _CHUNK_ELEMENTS // max(1, X.shape[0] * X.shape[1]))
    out = np.empty((Q.shape[0], model.class_count))
    for start in range(0, Q.shape[0], step):
        phi = shepard_basis(Q[start:start + step], X, model.k)
        out[start:start + step] = class_sums(phi, model.train.labels, model.class_count)
    return out[0] if single else out


def fema_predict(model: FemaModel, query):
    """Label of highest probability; ties go to the lowest class index."""
    probs = fema_class_probabilities(model, query)
    pred = np.argmax(probs, axis=-1) + 1
    return int(pred) if probs.ndim == 1 else pred


def fema_certainty(model: FemaModel, query):
    probs = fema_class_probabilities(model, query)
    c = probs.max(axis=-1) / probs.sum(axis=-1)
    return float(c) if probs.ndim == 1 else c
