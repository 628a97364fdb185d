"""Matplotlib figures for experiment reports and rankings.

matplotlib is an optional dependency (``pip install artifact[plot]``); it is
imported only when a figure is requested.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .experiment import ExperimentReport


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def have_matplotlib() -> bool:
    try:
        import matplotlib  # noqa: F401
    except ImportError:
        return False
    return True


def plot_scenarios(report: ExperimentReport, metric: str, path, dpi: int = 120) -> Path:
    """Grouped bars of mean `metric` (percent) per retention scenario, std as error bars.

    Scenarios where the reference method is significantly better than every
    other method get a boxed tick label.
    """
    plt = _pyplot()
    methods, scenarios = report.methods, report.scenarios
    x = np.arange(len(scenarios))
    width = 0.8 / len(methods)
    fig, ax = plt.subplots(figsize=(max(6.0, 0.7 * len(scenarios) + 2), 3.6))
    for i, method in enumerate(methods):
        means = [100 * report.summary[method][s][f"{metric}_mean"] for s in scenarios]
        stds = [100 * report.summary[method][s][f"{metric}_std"] for s in scenarios]
        ax.bar(x + (i - (len(methods) - 1) / 2) * width, means, width, yerr=stds,
               capsize=2, label=method)
    ax.set_xticks(x)
    ax.set_xticklabels(scenarios)
    ax.set_xlabel("% selected features")
    ax.set_ylabel(f"% {metric}")
    tests = report.wilcoxon.get(metric, {})
    if tests:
        for label, s in zip(ax.get_xticklabels(), scenarios):
            if all(cells[s]["decision"] == "second_better" for cells in tests.values()):
                label.set_bbox({"boxstyle": "square,pad=0.2", "fill": False})
    lows = [100 * (report.summary[m][s][f"{metric}_mean"] - report.summary[m][s][f"{metric}_std"])
            for m in methods for s in scenarios]
    ax.set_ylim(max(0.0, min(lows) - 5), 100.5)
    ax.legend(ncol=len(methods), fontsize="small", loc="lower center",
              bbox_to_anchor=(0.5, 1.0), frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path


def plot_ranking(rows: list[dict], path, dpi: int = 120) -> Path:
    """Horizontal bar chart of ranking scores, best feature on top."""
    plt = _pyplot()
    names = [r["name"] for r in rows]
    scores = [r["score"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, max(2.0, 0.25 * len(rows) + 1)))
    colors = ["#999999" if r.get("constant") else "#1f77b4" for r in rows]
    ax.barh(np.arange(len(rows)), scores, color=colors)
    ax.set_yticks(np.arange(len(rows)))
    ax.set_yticklabels(names, fontsize="small")
    ax.invert_yaxis()
    direction = rows[0].get("direction", "lower") if rows else "lower"
    ax.set_xlabel("overlap score (lower is better)" if direction == "lower"
                  else "score (higher is better)")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
