"""Synthetic benchmark data with known informative and noise features."""
from __future__ import annotations

import numpy as np

from .dataset import LabeledDataset


def make_informative_noise(n_samples: int = 200, n_informative: int = 10, n_noise: int = 10,
                           shift: float = 2.0, seed: int = 0) -> LabeledDataset:
    """Balanced two-class data.

    The first `n_informative` columns are unit normals whose mean moves by
    `shift` for class 2; the remaining `n_noise` columns are uniform on
    [0, 1] regardless of class.
    """
    rng = np.random.default_rng(seed)
    half = n_samples // 2
    y = np.array([1] * half + [2] * (n_samples - half))
    informative = rng.normal(0.0, 1.0, (n_samples, n_informative)) + shift * (y[:, None] == 2)
    noise = rng.uniform(0.0, 1.0, (n_samples, n_noise))
    names = [f"inf{j}" for j in range(n_informative)] + [f"noise{j}" for j in range(n_noise)]
    return LabeledDataset(np.hstack([informative, noise]), y, tuple(names), 2, ("a", "b"))


def write_csv(data: LabeledDataset, path, label_column: str = "label") -> None:
    """Write `data` as a headed CSV with the label column last."""
    names = data.class_names or tuple(str(i) for i in range(1, data.class_count + 1))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(list(data.feature_names) + [label_column]) + "\n")
        for row, lab in zip(data.features, data.labels):
            fh.write(",".join(repr(float(v)) for v in row) + f",{names[lab - 1]}\n")
