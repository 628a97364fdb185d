"""Tabular data ingestion, min-max normalization and stratified splitting.

Labels are stored 1-based (``1..class_count``) throughout the package.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    DatasetError,
    DimensionError,
    EmptyFileError,
    MissingColumnError,
    ParseError,
    SingleClassError,
)


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Feature matrix with 1-based integer labels.

    Parameters
    ----------
    features : array-like, shape (m, n)
    labels : array-like of int, shape (m,)
        Class ids in ``1..class_count``; every class must be present.
    feature_names : sequence of str, optional
        Defaults to ``f0, f1, ...``.
    class_count : int, optional
        Defaults to ``labels.max()``.
    class_names : sequence of str, optional
        Original label strings, ``class_names[i - 1]`` names class ``i``.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] = ()
    class_count: int = 0
    class_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        X = np.array(self.features, dtype=float)
        y = np.asarray(self.labels)
        if X.ndim != 2:
            raise DimensionError(f"features must be 2-D, got shape {X.shape}")
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise DimensionError(
                f"{X.shape[0]} feature rows but labels have shape {y.shape}")
        if X.shape[0] == 0:
            raise EmptyFileError("dataset has no samples")
        if not np.all(np.isfinite(X)):
            raise DatasetError("features contain NaN or infinite values")
        if y.dtype.kind not in "iu":
            if y.dtype.kind == "f" and np.all(y == np.round(y)):
                y = y.astype(int)
            else:
                raise DatasetError("labels must be integers")
        y = y.astype(np.int64)
        c = int(self.class_count) if self.class_count else int(y.max())
        if y.min() < 1 or y.max() > c:
            raise DatasetError(f"labels must lie in 1..{c}")
        missing = sorted(set(range(1, c + 1)) - set(np.unique(y).tolist()))
        if missing:
            raise DatasetError(f"classes {missing} have no samples")
        names = tuple(self.feature_names) or tuple(f"f{j}" for j in range(X.shape[1]))
        if len(names) != X.shape[1]:
            raise DimensionError(
                f"{len(names)} feature names for {X.shape[1]} features")
        cnames = tuple(self.class_names)
        if cnames and len(cnames) != c:
            raise DimensionError(f"{len(cnames)} class names for {c} classes")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "labels", y)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "class_count", c)
        object.__setattr__(self, "class_names", cnames)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def subset(self, rows) -> "LabeledDataset":
        """Rows selected by index, keeping feature and class metadata."""
        rows = np.asarray(rows, dtype=np.int64)
        return LabeledDataset(self.features[rows], self.labels[rows],
                              self.feature_names, self.class_count, self.class_names)

    def with_features(self, features, feature_names=None) -> "LabeledDataset":
        return LabeledDataset(features, self.labels,
                              self.feature_names if feature_names is None else feature_names,
                              self.class_count, self.class_names)


@dataclass(frozen=True, eq=False)
class NormalizationStats:
    """Per-feature minimum and maximum observed on training data."""

    minimum: np.ndarray
    maximum: np.ndarray

    @property
    def constant(self) -> np.ndarray:
        """Boolean mask of features whose training range is zero."""
        return self.maximum == self.minimum


def _read_table(path: Path):
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(cell.strip() for cell in r)]
    if not rows:
        raise EmptyFileError(f"{path}: file is empty")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    if not body:
        raise EmptyFileError(f"{path}: header present but no data rows")
    for lineno, r in enumerate(body, start=2):
        if len(r) != len(header):
            raise ParseError(
                f"{path}:{lineno}: expected {len(header)} cells, found {len(r)}")
    return header, body


def load_csv(path, label_column: str, categorical_columns: Sequence[str] = (),
             drop_columns: Sequence[str] = ()) -> LabeledDataset:
    """Read a headed, comma-separated file into a :class:`LabeledDataset`.

    Categorical columns are encoded ordinally by sorted unique value, labels
    are mapped to ``1..c`` by sorted order of their string values, and every
    other column is parsed as a float. Columns in `drop_columns` are ignored.
    """
    return load_csv_files([path], label_column, categorical_columns, drop_columns)[0]


def load_csv_files(paths: Sequence, label_column: str, categorical_columns: Sequence[str] = (),
                   drop_columns: Sequence[str] = ()) -> list[LabeledDataset]:
    """Like :func:`load_csv` for several files sharing one header.

    Categorical levels and class ids are assigned over all files together,
    so a train/test pair shipped as separate files stays consistently coded.
    """
    tables = []
    for path in map(Path, paths):
        header, body = _read_table(path)
        if label_column not in header:
            raise MissingColumnError(f"{path}: label column not found: {label_column!r}")
        for col in list(categorical_columns) + list(drop_columns):
            if col not in header:
                raise MissingColumnError(f"{path}: column not found: {col!r}")
        if tables and header != tables[0][1]:
            raise ParseError(f"{path}: header differs from {tables[0][0]}")
        tables.append((path, header, body))
    header = tables[0][1]

    def column(name):
        idx = header.index(name)
        return [r[idx].strip() for _, _, body in tables for r in body]

    def origin():
        for path, _, body in tables:
            for lineno in range(2, len(body) + 2):
                yield path, lineno

    raw_labels = column(label_column)
    classes = sorted(set(raw_labels))
    if len(classes) < 2:
        raise SingleClassError(
            f"{tables[0][0]}: only one class present ({classes[0]!r})")
    code = {name: i + 1 for i, name in enumerate(classes)}
    labels = np.array([code[v] for v in raw_labels], dtype=np.int64)

    categorical = set(categorical_columns)
    skip = set(drop_columns) | {label_column}
    names, cols = [], []
    for name in header:
        if name in skip:
            continue
        values = column(name)
        if name in categorical:
            levels = {v: i for i, v in enumerate(sorted(set(values)))}
            cols.append([float(levels[v]) for v in values])
        else:
            parsed = []
            for (path, lineno), v in zip(origin(), values):
                try:
                    x = float(v)
                except ValueError:
                    raise ParseError(
                        f"{path}:{lineno}: cannot parse {v!r} in column {name!r} as a number"
                    ) from None
                if not math.isfinite(x):
                    raise ParseError(
                        f"{path}:{lineno}: non-finite value {v!r} in column {name!r}")
                parsed.append(x)
            cols.append(parsed)
        names.append(name)
    if not names:
        raise DatasetError(f"{tables[0][0]}: no feature columns left")
    X = np.array(cols, dtype=float).T
    out, start = [], 0
    for path, _, body in tables:
        stop = start + len(body)
        try:
            out.append(LabeledDataset(X[start:stop], labels[start:stop], tuple(names),
                                      len(classes), tuple(classes)))
        except DatasetError as exc:
            raise DatasetError(f"{path}: {exc}") from None
        start = stop
    return out


def fit_normalizer(train: LabeledDataset) -> NormalizationStats:
    X = train.features
    return NormalizationStats(X.min(axis=0), X.max(axis=0))


def apply_normalizer(stats: NormalizationStats, data: LabeledDataset) -> LabeledDataset:
    """Min-max scale `data` with training extrema, clamped to [0, 1].

    Features that were constant during fitting map to 0.0.
    """
    X = data.features
    if X.shape[1] != stats.minimum.shape[0]:
        raise DimensionError(
            f"data has {X.shape[1]} features, normalizer was fit on {stats.minimum.shape[0]}")
    span = stats.maximum - stats.minimum
    safe = np.where(span > 0, span, 1.0)
    Z = (X - stats.minimum) / safe
    Z = np.clip(Z, 0.0, 1.0)
    Z[:, span <= 0] = 0.0
    return data.with_features(Z)


def stratified_split(data: LabeledDataset, test_fraction: float, seed: int):
    """Split each class independently into train and test parts.

    Every class contributes ``round(size * test_fraction)`` test samples,
    clipped so both parts keep at least one sample of it.

    Returns
    -------
    train, test : LabeledDataset
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    rng = np.random.default_rng(seed)
    test_rows = []
    for cls in range(1, data.class_count + 1):
        members = np.flatnonzero(data.labels == cls)
        if members.size < 2:
            raise DatasetError(f"class {cls} has {members.size} sample(s); need at least 2")
        n_test = int(math.floor(members.size * test_fraction + 0.5))
        n_test = min(max(n_test, 1), members.size - 1)
        test_rows.append(rng.permutation(members)[:n_test])
    test_idx = np.sort(np.concatenate(test_rows))
    mask = np.ones(data.n_samples, dtype=bool)
    mask[test_idx] = False
    return data.subset(np.flatnonzero(mask)), data.subset(test_idx)
