"""Command-line interface: ``femafs {rank,select,evaluate,compare,report}``.

Settings are resolved as command-line flags, then ``--config`` JSON file,
then built-in defaults. Exit status is 0 on success, 1 on a pipeline error
and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields
from pathlib import Path

from . import __version__
from .dataset import (apply_normalizer, fit_normalizer, load_csv, load_csv_files,
                      stratified_split)
from .errors import FemaError
from .experiment import (CLASSIFIERS, SELECTORS, ExperimentConfig, evaluate_split,
                         feature_order, run_experiment)
from .report import (dump_json, metrics_payload, ranking_rows, read_any, write_derived,
                     write_experiment, write_ranking)
from .selection import project, select_top

_CONFIG_FIELDS = {f.name for f in fields(ExperimentConfig)}
# Config-file spellings that mirror the flag names.
_ALIASES = {"selector": "selectors", "percent": "percents"}


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _percent_list(text: str) -> list[float]:
    try:
        return [float(t) for t in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number list: {text!r}") from None


def _selector_list(text: str) -> list[str]:
    names = _csv_list(text)
    for n in names:
        if n not in SELECTORS:
            raise argparse.ArgumentTypeError(
                f"invalid selector {n!r} (choose from {', '.join(SELECTORS)})")
    return names


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False, argument_default=S)
    common.add_argument("--config", help="JSON file with default settings")
    common.add_argument("--data", help="training CSV (header row, comma-separated)")
    common.add_argument("--label", help="name of the class label column")
    common.add_argument("--categorical", type=_csv_list, action="extend",
                        help="comma-separated categorical columns (ordinal encoding)")
    common.add_argument("--drop", type=_csv_list, action="extend",
                        help="comma-separated columns to ignore")
    common.add_argument("--k", type=float, help="Shepard smoothness exponent (default 2)")
    common.add_argument("--grid", type=int, help="sampling grid size p (default 101)")
    common.add_argument("--seed", type=int, help="base random seed (default 0)")
    common.add_argument("--out", help="output directory (default ./results)")

    evaluation = argparse.ArgumentParser(add_help=False, argument_default=S)
    evaluation.add_argument("--classifier", choices=CLASSIFIERS,
                            help="evaluation classifier (default knn)")
    evaluation.add_argument("--neighbors", type=int, help="neighbors for knn (default 1)")
    evaluation.add_argument("--test-fraction", dest="test_fraction", type=float,
                            help="held-out fraction per split (default 0.3)")
    evaluation.add_argument("--positive", help="label value treated as the positive class")

    parser = argparse.ArgumentParser(prog="femafs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", parents=[common], help="rank features and write ranking files")
    p.add_argument("--selector", choices=("femafs", "chi2", "anova", "none"), default=S)

    p = sub.add_parser("select", parents=[common], help="write the top-percent feature subset")
    p.add_argument("--selector", choices=("femafs", "chi2", "anova", "none"), default=S)
    p.add_argument("--percent", type=float, default=S)
    p.add_argument("--write-csv", dest="write_csv", action="store_true",
                   help="also write the projected dataset as selected.csv")

    p = sub.add_parser("evaluate", parents=[common, evaluation],
                       help="select, train and score a single split")
    p.add_argument("--selector", choices=SELECTORS, default=S)
    p.add_argument("--percent", type=float, default=S)
    p.add_argument("--test-data", dest="test_data", default=S,
                   help="separate test CSV instead of a random split")
    p.add_argument("--resubstitute", action="store_true",
                   help="evaluate on the training data itself")

    p = sub.add_parser("compare", parents=[common, evaluation],
                       help="repeated-trial sweep over retention percentages")
    p.add_argument("--selector", dest="selectors", type=_selector_list, action="extend",
                   default=S, help="comma-separated selectors (default femafs,chi2,anova,none)")
    p.add_argument("--percent", dest="percents", type=_percent_list, action="extend",
                   default=S, help="comma-separated percentages (default 10..60 step 5)")
    p.add_argument("--trials", type=int, default=S, help="number of trials (default 25)")
    p.add_argument("--alpha", type=float, default=S, help="Wilcoxon significance (default 0.05)")
    p.add_argument("--reference", default=S, help="method tested against (default femafs)")
    p.add_argument("--no-svg", dest="svg", action="store_false", help="skip the SVG charts")

    p = sub.add_parser("report", help="re-render tables and figures from written results")
    p.add_argument("--input", required=True,
                   help="results directory, report.json or ranking.json/csv")
    p.add_argument("--out", default=S, help="output directory (default: alongside input)")
    p.add_argument("--no-figures", dest="figures", action="store_false",
                   help="skip matplotlib PNG figures")
    p.add_argument("--no-svg", dest="svg", action="store_false", help="skip the SVG charts")
    return parser


def resolve(args: argparse.Namespace, parser: argparse.ArgumentParser,
            single: bool = False) -> tuple[ExperimentConfig, dict]:
    """Merge defaults, config file and flags; return the config and leftover options.

    With `single`, ``selector`` and ``percent`` name one selector and one
    percentage and are returned among the leftovers.
    """
    aliases = {} if single else _ALIASES
    settings: dict = {}
    extras: dict = {}
    given = vars(args).copy()
    if "config" in given:
        try:
            loaded = json.loads(Path(given.pop("config")).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config file: {exc}")
        if not isinstance(loaded, dict):
            parser.error("config file must hold a JSON object")
        for key, value in loaded.items():
            key = key.replace("-", "_")
            if single and key in _ALIASES:
                if isinstance(value, list):
                    value = value[0] if value else None
                if key == "selector" and isinstance(value, str):
                    value = _csv_list(value)[0]
                extras[key] = value
                continue
            key = aliases.get(key, key)
            if key not in _CONFIG_FIELDS:
                parser.error(f"unknown config key {key!r}")
            settings[key] = value
    for key, value in given.items():
        key = aliases.get(key, key)
        if key in _CONFIG_FIELDS:
            settings[key] = value
        else:
            extras[key] = value
    for key in ("categorical", "drop", "selectors"):
        if isinstance(settings.get(key), str):
            settings[key] = _csv_list(settings[key])
    if isinstance(settings.get("percents"), (int, float)):
        settings["percents"] = [settings["percents"]]
    config = ExperimentConfig(**settings)
    if not config.data:
        parser.error("the following arguments are required: --data")
    if not config.label:
        parser.error("the following arguments are required: --label")
    return config, extras


def _single(config, extras: dict, default_selector: str) -> tuple[str, float]:
    return extras.get("selector", default_selector), float(extras.get("percent", 100.0))


def cmd_rank(config, extras) -> int:
    selector, _ = _single(config, extras, "femafs")
    data = load_csv(config.data, config.label, config.categorical, config.drop)
    train = apply_normalizer(fit_normalizer(data), data)
    rows = ranking_rows(selector, train, k=config.k, grid=config.grid)
    jpath, cpath = write_ranking(rows, config.out)
    for pos, r in enumerate(rows[:10], start=1):
        flag = " (constant)" if r["constant"] else ""
        print(f"{pos:3d}. {r['name']:<24s} {r['score']:.6g}{flag}")
    if len(rows) > 10:
        print(f"     ... {len(rows) - 10} more")
    print(f"wrote {jpath} and {cpath}")
    return 0


def cmd_select(config, extras) -> int:
    selector, percent = _single(config, extras, "femafs")
    data = load_csv(config.data, config.label, config.categorical, config.drop)
    train = apply_normalizer(fit_normalizer(data), data)
    order = feature_order(selector, train, k=config.k, grid=config.grid)
    subset = order if selector == "none" else select_top(order, percent)
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    names = [data.feature_names[j] for j in subset]
    dump_json({"selector": selector, "percent": percent,
               "features": [{"index": j, "name": n} for j, n in zip(subset, names)]},
              out / "selection.json")
    if extras.get("write_csv"):
        from .synthetic import write_csv
        write_csv(project(data, subset), out / "selected.csv", config.label)
    print(",".join(names))
    return 0


def cmd_evaluate(config, extras) -> int:
    selector, percent = _single(config, extras, "femafs")
    if "test_data" in extras:
        train, test = load_csv_files([config.data, extras["test_data"]], config.label,
                                     config.categorical, config.drop)
    else:
        data = load_csv(config.data, config.label, config.categorical, config.drop)
        if extras.get("resubstitute"):
            train = test = data
        else:
            train, test = stratified_split(data, config.test_fraction, config.seed)
    subset, cm, report = evaluate_split(train, test, selector, percent, config,
                                        trial_seed=0)
    payload = metrics_payload(cm, report, selector=selector, percent=percent,
                              classifier=config.classifier, subset=subset,
                              names=train.feature_names)
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    dump_json(payload, out / "metrics.json")
    print(f"TP={cm.tp} FP={cm.fp} FN={cm.fn} TN={cm.tn}")
    print(f"accuracy={report.accuracy:.4f} f1={report.f1:.4f} "
          f"tpr={report.tpr:.4f} fpr={report.fpr:.4f}")
    return 0


def _print_table(report) -> None:
    if "f1" not in report.wilcoxon or not report.wilcoxon["f1"]:
        return
    print(f"Wilcoxon (F1) vs {report.reference}: "
          "= similar, ↑ method better, ↓ reference better, ? inconclusive")
    print("method".ljust(10) + "".join(s.rjust(6) for s in report.scenarios))
    for method, cells in report.wilcoxon["f1"].items():
        print(method.ljust(10) + "".join(cells[s]["symbol"].rjust(6) for s in report.scenarios))


def cmd_compare(config, extras) -> int:
    report = run_experiment(config)
    paths = write_experiment(report, config.out, svg=extras.get("svg", True))
    print("mean F1 (%)")
    print("method".ljust(10) + "".join(s.rjust(8) for s in report.scenarios))
    for m in report.methods:
        print(m.ljust(10) + "".join(f"{100 * report.summary[m][s]['f1_mean']:8.2f}"
                                    for s in report.scenarios))
    _print_table(report)
    print("wrote " + ", ".join(str(p) for p in paths))
    return 0


def cmd_report(args) -> int:
    from .experiment import ExperimentReport
    src = Path(args.input)
    obj = read_any(src)
    out = Path(getattr(args, "out", None) or (src if src.is_dir() else src.parent))
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if isinstance(obj, ExperimentReport):
        written += write_derived(obj, out, svg=args.svg)
        _print_table(obj)
    if args.figures:
        from . import plotting
        if not plotting.have_matplotlib():
            print("warning: matplotlib not installed; skipping figures", file=sys.stderr)
        elif isinstance(obj, ExperimentReport):
            for metric in ("f1", "accuracy"):
                written.append(plotting.plot_scenarios(obj, metric, out / f"{metric}.png"))
        elif isinstance(obj, list) and obj and "score" in obj[0]:
            written.append(plotting.plot_ranking(obj, out / "ranking.png"))
    if not written:
        print(f"{src}: nothing to render", file=sys.stderr)
    for p in written:
        print(f"wrote {p}")
    return 0


COMMANDS = {"rank": cmd_rank, "select": cmd_select, "evaluate": cmd_evaluate,
            "compare": cmd_compare}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command
    del args.command
    try:
        if command == "report":
            return cmd_report(args)
        sub = parser._subparsers._group_actions[0].choices[command]
        config, extras = resolve(args, sub, single=command != "compare")
        config.validate()
        return COMMANDS[command](config, extras)
    except (FemaError, ValueError, IndexError, OSError) as exc:
        print(f"femafs {command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
