import json

import pytest

from femafs.cli import main
from femafs.synthetic import make_informative_noise, write_csv


@pytest.fixture(scope="module")
def data_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "syn.csv"
    write_csv(make_informative_noise(n_samples=80, n_informative=4, n_noise=4, seed=1), path)
    return path


def run(*argv):
    return main([str(a) for a in argv])


def test_rank_writes_all_features(data_csv, tmp_path):
    assert run("rank", "--data", data_csv, "--label", "label", "--k", 2, "--grid", 101,
               "--out", tmp_path) == 0
    rows = json.loads((tmp_path / "ranking.json").read_text())
    assert len(rows) == 8
    assert (tmp_path / "ranking.csv").exists()


def test_missing_label_is_usage_error(data_csv, capsys):
    with pytest.raises(SystemExit) as exc:
        run("rank", "--data", data_csv)
    assert exc.value.code == 2
    assert "--label" in capsys.readouterr().err


def test_unknown_selector_is_usage_error(data_csv):
    with pytest.raises(SystemExit) as exc:
        run("rank", "--data", data_csv, "--label", "label", "--selector", "pca")
    assert exc.value.code == 2


def test_rank_chi2_descending(data_csv, tmp_path):
    assert run("rank", "--data", data_csv, "--label", "label", "--selector", "chi2",
               "--out", tmp_path) == 0
    scores = [r["score"] for r in json.loads((tmp_path / "ranking.json").read_text())]
    assert scores == sorted(scores, reverse=True)


def test_pipeline_error_exit_code(tmp_path, capsys):
    assert run("rank", "--data", tmp_path / "nope.csv", "--label", "label",
               "--out", tmp_path) == 1
    assert "error" in capsys.readouterr().err


def test_wrong_label_column_exit_code(data_csv, tmp_path, capsys):
    assert run("rank", "--data", data_csv, "--label", "class", "--out", tmp_path) == 1
    assert "label column not found" in capsys.readouterr().err


def test_select(data_csv, tmp_path, capsys):
    assert run("select", "--data", data_csv, "--label", "label", "--percent", 50,
               "--out", tmp_path, "--write-csv") == 0
    sel = json.loads((tmp_path / "selection.json").read_text())
    assert len(sel["features"]) == 4
    header = (tmp_path / "selected.csv").read_text().splitlines()[0].split(",")
    assert header == [f["name"] for f in sel["features"]] + ["label"]


def test_evaluate_identity_and_determinism(data_csv, tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    common = ["--data", data_csv, "--label", "label", "--seed", 3]
    assert run("evaluate", *common, "--selector", "femafs", "--percent", 100, "--out", a) == 0
    assert run("evaluate", *common, "--selector", "femafs", "--percent", 100, "--out", b) == 0
    assert run("evaluate", *common, "--selector", "none", "--out", c) == 0
    assert (a / "metrics.json").read_bytes() == (b / "metrics.json").read_bytes()
    ma = json.loads((a / "metrics.json").read_text())
    mc = json.loads((c / "metrics.json").read_text())
    assert ma["confusion"] == mc["confusion"] and ma["metrics"] == mc["metrics"]


def test_evaluate_resubstitution(data_csv, tmp_path):
    assert run("evaluate", "--data", data_csv, "--label", "label", "--resubstitute",
               "--classifier", "knn", "--out", tmp_path) == 0
    assert json.loads((tmp_path / "metrics.json").read_text())["metrics"]["accuracy"] == 1.0


def test_evaluate_separate_test_file(data_csv, tmp_path):
    assert run("evaluate", "--data", data_csv, "--test-data", data_csv, "--label", "label",
               "--classifier", "fema", "--percent", 50, "--out", tmp_path) == 0
    m = json.loads((tmp_path / "metrics.json").read_text())
    assert m["metrics"]["accuracy"] == 1.0 and m["classifier"] == "fema"


def test_compare_byte_identical_across_threads(data_csv, tmp_path, monkeypatch):
    args = ["compare", "--data", data_csv, "--label", "label", "--trials", 5,
            "--percent", "25,50", "--selector", "femafs,chi2,anova,none"]
    monkeypatch.setenv("FEMAFS_THREADS", "1")
    assert run(*args, "--out", tmp_path / "one") == 0
    monkeypatch.setenv("FEMAFS_THREADS", "4")
    assert run(*args, "--out", tmp_path / "one_again") == 0
    assert ((tmp_path / "one" / "report.json").read_bytes()
            == (tmp_path / "one_again" / "report.json").read_bytes())


def test_compare_single_trial_inconclusive(data_csv, tmp_path):
    assert run("compare", "--data", data_csv, "--label", "label", "--trials", 1,
               "--percent", 50, "--out", tmp_path, "--no-svg") == 0
    table = (tmp_path / "wilcoxon_f1.csv").read_text().splitlines()
    assert all(set(line.split(",")[1:]) == {"?"} for line in table[1:])
    assert not (tmp_path / "f1.svg").exists()


def test_config_file_precedence(data_csv, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"data": str(data_csv), "label": "label", "trials": 2,
                               "percent": [50], "selector": "femafs,none", "seed": 9}))
    assert run("compare", "--config", cfg, "--trials", 3, "--out", tmp_path / "o") == 0
    rep = json.loads((tmp_path / "o" / "report.json").read_text())
    assert rep["config"]["trials"] == 3
    assert rep["config"]["seed"] == 9
    assert rep["methods"] == ["femafs", "none"]
    assert rep["scenarios"] == ["50"]


def test_bad_config_key(data_csv, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"nonsense": 1}))
    with pytest.raises(SystemExit) as exc:
        run("rank", "--config", cfg, "--data", data_csv, "--label", "label")
    assert exc.value.code == 2


def test_report_command(data_csv, tmp_path):
    out = tmp_path / "cmp"
    assert run("compare", "--data", data_csv, "--label", "label", "--trials", 5,
               "--percent", 50, "--out", out) == 0
    (out / "summary.csv").unlink()
    assert run("report", "--input", out, "--no-figures") == 0
    assert (out / "summary.csv").exists()
    pytest.importorskip("matplotlib")
    figs = tmp_path / "figs"
    assert run("report", "--input", out / "report.json", "--out", figs) == 0
    assert (figs / "f1.png").exists() and (figs / "accuracy.png").exists()
