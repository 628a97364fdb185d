"""Repeated-trial comparison of feature selectors over retention scenarios."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .baselines import anova_f_scores, chi2_scores, knn_predict
from .dataset import (LabeledDataset, apply_normalizer, fit_normalizer, load_csv,
                      stratified_split)
from .fema import fema_predict, fema_train
from .metrics import MetricsReport, confusion, metrics
from .selection import build_grid, default_workers, project, rank_features, select_top
from .wilcoxon import wilcoxon_signed_rank

SELECTORS = ("femafs", "chi2", "anova", "none", "random")
CLASSIFIERS = ("knn", "fema")
DEFAULT_PERCENTS = tuple(range(10, 61, 5))
REPORT_METRICS = ("f1", "accuracy")


@dataclass
class ExperimentConfig:
    data: str | None = None
    label: str | None = None
    categorical: list[str] = field(default_factory=list)
    drop: list[str] = field(default_factory=list)
    k: float = 2.0
    grid: int = 101
    percents: list[float] = field(default_factory=lambda: list(DEFAULT_PERCENTS))
    trials: int = 25
    seed: int = 0
    selectors: list[str] = field(default_factory=lambda: ["femafs", "chi2", "anova", "none"])
    classifier: str = "knn"
    neighbors: int = 1
    alpha: float = 0.05
    test_fraction: float = 0.3
    positive: str | None = None
    reference: str = "femafs"
    out: str = "results"

    def validate(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.percents:
            raise ValueError("at least one retention percentage is required")
        for p in self.percents:
            if not 0 < p <= 100:
                raise ValueError(f"percent values must be in (0, 100], got {p}")
        if not self.selectors:
            raise ValueError("at least one selector is required")
        for s in self.selectors:
            if s not in SELECTORS:
                raise ValueError(f"unknown selector {s!r}; choose from {', '.join(SELECTORS)}")
        if len(set(self.selectors)) != len(self.selectors):
            raise ValueError(f"duplicate selectors in {self.selectors}")
        if self.classifier not in CLASSIFIERS:
            raise ValueError(f"unknown classifier {self.classifier!r}")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must be in (0, 1)")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.grid < 2:
            raise ValueError("grid must be >= 2")

    def as_dict(self) -> dict:
        return asdict(self)


def percent_key(p: float) -> str:
    return str(int(p)) if float(p).is_integer() else repr(float(p))


def feature_order(selector: str, train: LabeledDataset, *, k: float = 2.0, grid: int = 101,
                  seed: Sequence[int] = (0,), workers: int = 1) -> list[int]:
    """Feature indices from best to worst according to `selector`."""
    if selector == "femafs":
        return rank_features(train, build_grid(grid), k, workers=workers).order
    if selector == "chi2":
        return chi2_scores(train).order
    if selector == "anova":
        return anova_f_scores(train).order
    if selector == "none":
        return list(range(train.n_features))
    if selector == "random":
        return np.random.default_rng(list(seed)).permutation(train.n_features).tolist()
    raise ValueError(f"unknown selector {selector!r}")


def classify(train: LabeledDataset, test_features: np.ndarray, classifier: str = "knn",
             *, k: float = 2.0, neighbors: int = 1) -> np.ndarray:
    if classifier == "knn":
        return knn_predict(train, test_features, neighbors)
    if classifier == "fema":
        return fema_predict(fema_train(train, k), test_features)
    raise ValueError(f"unknown classifier {classifier!r}")


def score_predictions(predicted, truth, positive: int, class_count: int) -> tuple:
    cm = confusion(predicted, truth, positive, class_count)
    report = metrics(cm)
    if class_count > 2:
        # One-vs-rest counts give binary accuracy; report overall accuracy instead.
        acc = float(np.mean(np.asarray(predicted) == np.asarray(truth)))
        report = MetricsReport(acc, report.f1, report.tpr, report.fpr, report.undefined)
    return cm, report


def positive_class(data: LabeledDataset, name: str | None) -> int:
    if name is None:
        return 1
    if data.class_names and name in data.class_names:
        return data.class_names.index(name) + 1
    try:
        value = int(name)
    except ValueError:
        raise ValueError(f"positive class {name!r} not among {list(data.class_names)}") from None
    if not 1 <= value <= data.class_count:
        raise ValueError(f"positive class {value} outside 1..{data.class_count}")
    return value


def evaluate_split(train: LabeledDataset, test: LabeledDataset, selector: str, percent: float,
                   config: ExperimentConfig, *, trial_seed: int = 0):
    """Normalize on `train`, select, classify `test`.

    Returns
    -------
    subset : list of int
    cm : ConfusionMatrix
    report : MetricsReport
    """
    stats = fit_normalizer(train)
    ntrain, ntest = apply_normalizer(stats, train), apply_normalizer(stats, test)
    order = feature_order(selector, ntrain, k=config.k, grid=config.grid,
                          seed=(config.seed, trial_seed))
    subset = order if selector == "none" else select_top(order, percent)
    pred = classify(project(ntrain, subset), project(ntest, subset).features,
                    config.classifier, k=config.k, neighbors=config.neighbors)
    pos = positive_class(train, config.positive)
    cm, report = score_predictions(pred, ntest.labels, pos, train.class_count)
    return subset, cm, report


def _run_trial(data: LabeledDataset, config: ExperimentConfig, trial: int) -> dict:
    seed = config.seed + trial
    train, test = stratified_split(data, config.test_fraction, seed)
    stats = fit_normalizer(train)
    ntrain, ntest = apply_normalizer(stats, train), apply_normalizer(stats, test)
    pos = positive_class(data, config.positive)
    cache: dict[tuple, MetricsReport] = {}
    out: dict[str, dict[str, MetricsReport]] = {}
    for selector in config.selectors:
        order = feature_order(selector, ntrain, k=config.k, grid=config.grid,
                              seed=(config.seed, trial))
        out[selector] = {}
        for p in config.percents:
            subset = tuple(order if selector == "none" else select_top(order, p))
            if subset not in cache:
                pred = classify(project(ntrain, subset), project(ntest, subset).features,
                                config.classifier, k=config.k, neighbors=config.neighbors)
                cache[subset] = score_predictions(pred, ntest.labels, pos, data.class_count)[1]
            out[selector][percent_key(p)] = cache[subset]
    return out


@dataclass
class ExperimentReport:
    config: dict
    scenarios: list[str]
    methods: list[str]
    reference: str | None
    per_trial: dict          # method -> scenario -> metric -> list over trials
    summary: dict            # method -> scenario -> {metric_mean, metric_std}
    wilcoxon: dict           # metric -> method -> scenario -> test outcome

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        return cls(**{k: d[k] for k in ("config", "scenarios", "methods", "reference",
                                        "per_trial", "summary", "wilcoxon")})


def _mean_std(values: list[float]) -> tuple[float, float]:
    mean = math.fsum(values) / len(values)
    if len(values) < 2:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return mean, math.sqrt(var)


def run_experiment(config: ExperimentConfig, data: LabeledDataset | None = None,
                   workers: int | None = None) -> ExperimentReport:
    """Run every trial, aggregate per scenario and test each method against the reference.

    Trials use seeds ``config.seed + t`` and are independent, so running
    them on several threads yields the same report as running them in turn.
    """
    config.validate()
    if data is None:
        if not config.data or not config.label:
            raise ValueError("config needs a dataset path and label column")
        data = load_csv(config.data, config.label, config.categorical, config.drop)
    positive_class(data, config.positive)
    workers = default_workers() if workers is None else max(1, int(workers))
    trials = range(config.trials)
    if workers > 1 and config.trials > 1:
        with ThreadPoolExecutor(max_workers=min(workers, config.trials)) as pool:
            results = list(pool.map(lambda t: _run_trial(data, config, t), trials))
    else:
        results = [_run_trial(data, config, t) for t in trials]

    scenarios = [percent_key(p) for p in config.percents]
    per_trial: dict = {}
    summary: dict = {}
    for method in config.selectors:
        per_trial[method], summary[method] = {}, {}
        for s in scenarios:
            cell, stats = {}, {}
            for metric in REPORT_METRICS:
                values = [getattr(r[method][s], metric) for r in results]
                cell[metric] = values
                stats[f"{metric}_mean"], stats[f"{metric}_std"] = _mean_std(values)
            per_trial[method][s], summary[method][s] = cell, stats

    reference = config.reference if config.reference in config.selectors else config.selectors[0]
    tests: dict = {}
    for metric in REPORT_METRICS:
        tests[metric] = {}
        for method in config.selectors:
            if method == reference:
                continue
            tests[metric][method] = {}
            for s in scenarios:
                res = wilcoxon_signed_rank(per_trial[method][s][metric],
                                           per_trial[reference][s][metric], config.alpha)
                tests[metric][method][s] = {
                    "statistic": res.statistic, "p_value": res.p_value,
                    "decision": res.decision.value, "symbol": res.decision.symbol,
                    "n": res.n_used, "method": res.method,
                }
    settings = {k: v for k, v in config.as_dict().items() if k != "out"}
    return ExperimentReport(settings, scenarios, list(config.selectors), reference,
                            per_trial, summary, tests)
