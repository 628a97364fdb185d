"""Reading and writing rankings, metrics and experiment reports.

All files are UTF-8. JSON is written with a fixed key order and a trailing
newline so repeated runs produce identical bytes.
"""
from __future__ import annotations

import csv
import json
from html import escape
from pathlib import Path

from .baselines import anova_f_scores, chi2_scores
from .dataset import LabeledDataset
from .experiment import ExperimentReport
from .metrics import ConfusionMatrix, MetricsReport
from .selection import build_grid, rank_features

RANKING_FIELDS = ("index", "name", "score", "constant", "direction")


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def ranking_rows(selector: str, train: LabeledDataset, *, k: float = 2.0, grid: int = 101,
                 workers: int | None = None) -> list[dict]:
    """Export rows for `selector`, best feature first."""
    X = train.features
    constant = (X.max(axis=0) == X.min(axis=0)).tolist()
    if selector == "femafs":
        ranking = rank_features(train, build_grid(grid), k, workers=workers)
        return [{"index": e.index, "name": train.feature_names[e.index], "score": e.score,
                 "constant": e.constant, "direction": "lower"} for e in ranking]
    if selector in ("chi2", "anova"):
        sv = chi2_scores(train) if selector == "chi2" else anova_f_scores(train)
        return [{"index": j, "name": train.feature_names[j], "score": float(sv.scores[j]),
                 "constant": bool(constant[j]), "direction": "higher"} for j in sv.order]
    if selector == "none":
        return [{"index": j, "name": train.feature_names[j], "score": 0.0,
                 "constant": bool(constant[j]), "direction": "none"}
                for j in range(train.n_features)]
    raise ValueError(f"selector {selector!r} has no ranking export")


def write_ranking(rows: list[dict], out_dir) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    jpath, cpath = out_dir / "ranking.json", out_dir / "ranking.csv"
    dump_json([{f: r[f] for f in RANKING_FIELDS} for r in rows], jpath)
    with cpath.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RANKING_FIELDS)
        for r in rows:
            w.writerow([r["index"], r["name"], repr(float(r["score"])),
                        str(r["constant"]).lower(), r["direction"]])
    return jpath, cpath


def read_ranking_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [{"index": int(r["index"]), "name": r["name"], "score": float(r["score"]),
                 "constant": r["constant"] == "true", "direction": r["direction"]}
                for r in csv.DictReader(fh)]


def metrics_payload(cm: ConfusionMatrix, report: MetricsReport, *, selector: str,
                    percent: float, classifier: str, subset: list[int],
                    names: tuple[str, ...]) -> dict:
    return {
        "selector": selector,
        "percent": percent,
        "classifier": classifier,
        "features": [{"index": j, "name": names[j]} for j in subset],
        "confusion": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn},
        "metrics": report.as_dict(),
    }


def write_experiment(report: ExperimentReport, out_dir, svg: bool = True) -> list[Path]:
    """Write ``report.json`` plus the derived CSV tables and optional SVG chart."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "report.json"
    dump_json(report.as_dict(), path)
    return [path] + write_derived(report, out_dir, svg=svg)


def write_derived(report: ExperimentReport, out_dir, svg: bool = True) -> list[Path]:
    out_dir = Path(out_dir)
    written = []
    for metric in report.wilcoxon:
        p = out_dir / f"wilcoxon_{metric}.csv"
        with p.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["method"] + report.scenarios)
            for method, cells in report.wilcoxon[metric].items():
                w.writerow([method] + [cells[s]["symbol"] for s in report.scenarios])
        written.append(p)
    p = out_dir / "summary.csv"
    with p.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "percent", "f1_mean", "f1_std", "accuracy_mean", "accuracy_std"])
        for method in report.methods:
            for s in report.scenarios:
                c = report.summary[method][s]
                w.writerow([method, s] + [repr(c[f]) for f in
                                          ("f1_mean", "f1_std", "accuracy_mean", "accuracy_std")])
    written.append(p)
    if svg:
        for metric in ("f1", "accuracy"):
            p = out_dir / f"{metric}.svg"
            p.write_text(scenario_svg(report, metric), encoding="utf-8")
            written.append(p)
    return written


def read_experiment(path) -> ExperimentReport:
    path = Path(path)
    if path.is_dir():
        path = path / "report.json"
    return ExperimentReport.from_dict(json.loads(path.read_text(encoding="utf-8")))


def read_table_csv(path) -> dict[str, dict[str, str]]:
    """Parse a ``wilcoxon_*.csv`` table into ``{method: {scenario: symbol}}``."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header = rows[0][1:]
    return {r[0]: dict(zip(header, r[1:])) for r in rows[1:]}


def read_summary_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [{k: (v if k in ("method", "percent") else float(v)) for k, v in r.items()}
                for r in csv.DictReader(fh)]


def read_any(path):
    """Load any JSON or CSV file this package writes, returning plain data."""
    path = Path(path)
    if path.is_dir():
        return read_experiment(path)
    if path.suffix == ".json":
        obj = json.loads(path.read_text(encoding="utf-8"))
        if isinstance(obj, dict) and "scenarios" in obj:
            return ExperimentReport.from_dict(obj)
        return obj
    if path.suffix == ".csv":
        with open(path, newline="", encoding="utf-8") as fh:
            header = next(csv.reader(fh), [])
        if tuple(header) == RANKING_FIELDS:
            return read_ranking_csv(path)
        if header and header[0] == "method" and "f1_mean" in header:
            return read_summary_csv(path)
        if header and header[0] == "method":
            return read_table_csv(path)
    raise ValueError(f"{path}: not a file produced by this tool")


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def scenario_svg(report: ExperimentReport, metric: str = "f1") -> str:
    """Grouped bar chart (mean with std whiskers) of `metric` per scenario."""
    width, height = 760, 360
    left, right, top, bottom = 60, 20, 40, 50
    plot_w, plot_h = width - left - right, height - top - bottom
    methods, scenarios = report.methods, report.scenarios
    group_w = plot_w / max(1, len(scenarios))
    bar_w = group_w * 0.8 / max(1, len(methods))

    def y_of(v):
        return top + plot_h * (1.0 - max(0.0, min(1.0, v)))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="13">'
        f'{escape(metric)} by retained features (%)</text>',
    ]
    for tick in range(0, 11, 2):
        v = tick / 10
        y = y_of(v)
        parts.append(f'<line x1="{left}" x2="{width - right}" y1="{y:.1f}" y2="{y:.1f}" '
                     f'stroke="#ddd"/>')
        parts.append(f'<text x="{left - 6}" y="{y + 4:.1f}" text-anchor="end">{100 * v:.0f}</text>')
    for gi, s in enumerate(scenarios):
        gx = left + gi * group_w + group_w * 0.1
        for mi, method in enumerate(methods):
            cell = report.summary[method][s]
            mean, std = cell[f"{metric}_mean"], cell[f"{metric}_std"]
            x = gx + mi * bar_w
            y = y_of(mean)
            parts.append(f'<rect x="{x:.1f}" y="{y:.1f}" width="{bar_w:.1f}" '
                         f'height="{top + plot_h - y:.1f}" fill="{_PALETTE[mi % len(_PALETTE)]}"/>')
            cx = x + bar_w / 2
            parts.append(f'<line x1="{cx:.1f}" x2="{cx:.1f}" y1="{y_of(mean + std):.1f}" '
                         f'y2="{y_of(mean - std):.1f}" stroke="black"/>')
        parts.append(f'<text x="{left + (gi + 0.5) * group_w:.1f}" y="{top + plot_h + 16}" '
                     f'text-anchor="middle">{escape(s)}</text>')
    for mi, method in enumerate(methods):
        lx = left + mi * 110
        parts.append(f'<rect x="{lx}" y="{height - 18}" width="10" height="10" '
                     f'fill="{_PALETTE[mi % len(_PALETTE)]}"/>')
        parts.append(f'<text x="{lx + 14}" y="{height - 9}">{escape(method)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
