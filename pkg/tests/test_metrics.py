import numpy as np
import pytest

from femafs.errors import DatasetError, DimensionError
from femafs.metrics import ConfusionMatrix, confusion, metrics


def test_perfect_prediction():
    cm = confusion([1, 2, 2, 1], [1, 2, 2, 1])
    assert cm.fp == cm.fn == 0 and cm.tp == 2 and cm.tn == 2


def test_inverted_prediction():
    cm = confusion([2, 1, 1], [1, 2, 2])
    assert cm.tp == cm.tn == 0


def test_enumerated_case():
    cm = confusion([1, 1, 2, 2], [1, 2, 1, 2], positive=1)
    assert (cm.tp, cm.fp, cm.fn, cm.tn) == (1, 1, 1, 1)


def test_length_mismatch():
    with pytest.raises(DimensionError):
        confusion([1, 2], [1])


def test_label_out_of_range():
    with pytest.raises(DatasetError):
        confusion([1, 3], [1, 2], class_count=2)
    with pytest.raises(DatasetError):
        confusion([0, 1], [1, 2])


def test_perfect_metrics():
    r = metrics(ConfusionMatrix(tp=1, fp=0, fn=0, tn=1))
    assert (r.accuracy, r.f1, r.tpr, r.fpr) == (1.0, 1.0, 1.0, 0.0)
    assert r.undefined == ()


def test_undefined_rates_flagged():
    r = metrics(ConfusionMatrix(tp=0, fp=0, fn=0, tn=3))
    assert r.tpr == 0.0 and r.f1 == 0.0
    assert set(r.undefined) == {"f1", "tpr"}


def test_published_confusion_matrices():
    best = metrics(ConfusionMatrix(tp=4521, fp=34, fn=17, tn=3661))
    assert 100 * best.accuracy == pytest.approx(99.38, abs=0.01)
    assert 100 * best.tpr == pytest.approx(99.63, abs=0.01)
    assert 100 * best.fpr == pytest.approx(0.92, abs=0.01)
    base = metrics(ConfusionMatrix(tp=4501, fp=189, fn=37, tn=3506))
    assert 100 * base.accuracy == pytest.approx(97.25, abs=0.01)
    assert 100 * base.fpr == pytest.approx(5.12, abs=0.01)


def test_permutation_invariant(rng):
    pred = rng.integers(1, 3, 60)
    truth = rng.integers(1, 3, 60)
    perm = rng.permutation(60)
    assert metrics(confusion(pred, truth)) == metrics(confusion(pred[perm], truth[perm]))
