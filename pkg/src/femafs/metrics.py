"""Binary confusion counts and the rates derived from them."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DatasetError, DimensionError


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    f1: float
    tpr: float
    fpr: float
    undefined: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {"accuracy": self.accuracy, "f1": self.f1, "tpr": self.tpr,
                "fpr": self.fpr, "undefined": list(self.undefined)}


def confusion(predicted, truth, positive: int = 1, class_count: int | None = None) -> ConfusionMatrix:
    """Count outcomes treating `positive` as the positive class, all others negative."""
    p = np.asarray(predicted)
    t = np.asarray(truth)
    if p.shape != t.shape or p.ndim != 1:
        raise DimensionError(f"predicted {p.shape} and truth {t.shape} differ")
    if p.size == 0:
        raise DimensionError("no predictions")
    upper = class_count if class_count is not None else max(int(p.max()), int(t.max()), positive)
    for name, arr in (("predicted", p), ("truth", t)):
        if arr.min() < 1 or arr.max() > upper:
            raise DatasetError(f"{name} labels must lie in 1..{upper}")
    pp, tp_ = p == positive, t == positive
    return ConfusionMatrix(tp=int(np.sum(pp & tp_)), fp=int(np.sum(pp & ~tp_)),
                           fn=int(np.sum(~pp & tp_)), tn=int(np.sum(~pp & ~tp_)))


def _ratio(num, den, name, undefined):
    if den == 0:
        undefined.append(name)
        return 0.0
    return num / den


def metrics(cm: ConfusionMatrix) -> MetricsReport:
    """Accuracy, F1, true- and false-positive rate.

    A rate whose denominator is zero is reported as 0.0 and its name is
    listed in ``undefined``.
    """
    undefined: list[str] = []
    acc = _ratio(cm.tp + cm.tn, cm.total, "accuracy", undefined)
    f1 = _ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn, "f1", undefined)
    tpr = _ratio(cm.tp, cm.tp + cm.fn, "tpr", undefined)
    fpr = _ratio(cm.fp, cm.fp + cm.tn, "fpr", undefined)
    return MetricsReport(acc, f1, tpr, fpr, tuple(undefined))
