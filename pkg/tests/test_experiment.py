import json

import numpy as np
import pytest

from conftest import random_dataset
from femafs.dataset import LabeledDataset, stratified_split
from femafs.experiment import (ExperimentConfig, ExperimentReport, evaluate_split,
                               feature_order, run_experiment)
from femafs.synthetic import make_informative_noise


@pytest.fixture(scope="module")
def synthetic():
    return make_informative_noise(seed=0)


def small_config(**kw):
    base = dict(trials=6, percents=[50, 100], selectors=["femafs", "chi2", "anova", "none"])
    base.update(kw)
    return ExperimentConfig(**base)


def test_full_feature_set_identical_across_selectors(synthetic):
    rep = run_experiment(small_config(trials=1, percents=[100]), synthetic)
    cells = [rep.summary[m]["100"] for m in rep.methods]
    assert all(c == cells[0] for c in cells)
    # one trial cannot support a signed-rank test
    for cells in rep.wilcoxon["f1"].values():
        assert cells["100"]["symbol"] == "?"


def test_identical_methods_are_similar(synthetic):
    rep = run_experiment(small_config(percents=[100]), synthetic)
    for cells in rep.wilcoxon["f1"].values():
        assert cells["100"]["decision"] == "similar"


def test_deterministic_and_thread_independent(synthetic):
    a = run_experiment(small_config(), synthetic, workers=1)
    b = run_experiment(small_config(), synthetic, workers=1)
    c = run_experiment(small_config(), synthetic, workers=4)
    dump = lambda r: json.dumps(r.as_dict())
    assert dump(a) == dump(b) == dump(c)


def test_report_round_trip(synthetic):
    rep = run_experiment(small_config(), synthetic)
    again = ExperimentReport.from_dict(json.loads(json.dumps(rep.as_dict())))
    assert again == rep


def test_summary_matches_per_trial(synthetic):
    rep = run_experiment(small_config(), synthetic)
    values = rep.per_trial["chi2"]["50"]["f1"]
    assert len(values) == 6
    assert rep.summary["chi2"]["50"]["f1_mean"] == pytest.approx(np.mean(values))
    assert rep.summary["chi2"]["50"]["f1_std"] == pytest.approx(np.std(values, ddof=1))


def test_reference_excluded_from_tests(synthetic):
    rep = run_experiment(small_config(), synthetic)
    assert rep.reference == "femafs"
    assert set(rep.wilcoxon["f1"]) == {"chi2", "anova", "none"}


def test_selection_beats_random_control(synthetic):
    cfg = ExperimentConfig(trials=25, percents=[50, 100], selectors=["femafs", "random", "none"])
    rep = run_experiment(cfg, synthetic)
    fs = 100 * rep.summary["femafs"]["50"]["f1_mean"]
    rnd = 100 * rep.summary["random"]["50"]["f1_mean"]
    full = 100 * rep.summary["none"]["100"]["f1_mean"]
    assert fs > rnd
    assert abs(fs - full) <= 2.0


def test_fema_classifier_option(synthetic):
    rep = run_experiment(small_config(trials=2, classifier="fema", selectors=["femafs"]),
                         synthetic)
    assert 0.5 < rep.summary["femafs"]["50"]["accuracy_mean"] <= 1.0


def test_multiclass(rng):
    ds = random_dataset(rng, m=60, n=5, c=3)
    rep = run_experiment(small_config(trials=2), ds)
    assert set(rep.methods) == {"femafs", "chi2", "anova", "none"}


def test_evaluate_split_identity_at_100(synthetic):
    train, test = stratified_split(synthetic, 0.3, 4)
    cfg = ExperimentConfig()
    _, cm_fs, _ = evaluate_split(train, test, "femafs", 100, cfg)
    _, cm_none, _ = evaluate_split(train, test, "none", 100, cfg)
    assert cm_fs == cm_none


def test_random_order_seeded():
    ds = LabeledDataset(np.eye(6) * 0.5, [1, 2, 1, 2, 1, 2])
    assert feature_order("random", ds, seed=(0, 1)) == feature_order("random", ds, seed=(0, 1))
    assert sorted(feature_order("random", ds, seed=(0, 2))) == list(range(6))


@pytest.mark.parametrize("kw", [dict(trials=0), dict(percents=[0]), dict(percents=[]),
                                dict(selectors=["pca"]), dict(classifier="svm"),
                                dict(alpha=1.5), dict(selectors=["chi2", "chi2"])])
def test_invalid_config(kw):
    with pytest.raises(ValueError):
        small_config(**kw).validate()
