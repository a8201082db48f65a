import json

import numpy as np
import pytest

from kpodlab.cli import main
from kpodlab.io import load_matrix_csv, save_mask_csv, save_matrix_csv


@pytest.fixture()
def masked_dataset(tmp_path):
    rng = np.random.default_rng(0)
    X = np.vstack([rng.normal(size=(30, 2)), rng.normal(size=(30, 2)) + [6.0, 0.0]])
    R = (rng.random(X.shape) < 0.8).astype(float)
    data = tmp_path / "X.csv"
    mask = tmp_path / "R.csv"
    save_matrix_csv(data, X)
    save_mask_csv(mask, R)
    return data, mask, X, R


def _read(path):
    return path.read_bytes()


# ----------------------------------------------------------------- fit

def test_fit_kmeans_deterministic(tmp_path, masked_dataset):
    data, _, _, _ = masked_dataset
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    for out in (out1, out2):
        code = main(["fit", "--data", str(data), "--k", "2", "--method", "kmeans",
                     "--seed", "7", "--out", str(out)])
        assert code == 0
    for name in ("centers.csv", "labels.csv", "summary.json"):
        assert _read(out1 / name) == _read(out2 / name)
    summary = json.loads((out1 / "summary.json").read_text())
    assert summary["method"] == "kmeans"
    assert summary["loss"] >= 0


def test_fit_kpod_full_mask_matches_kmeans(tmp_path, masked_dataset):
    data, _, X, _ = masked_dataset
    ones = tmp_path / "ones.csv"
    save_mask_csv(ones, np.ones_like(X))
    out_km = tmp_path / "km"
    out_kp = tmp_path / "kp"
    assert main(["fit", "--data", str(data), "--k", "2", "--method", "kmeans",
                 "--seed", "3", "--out", str(out_km)]) == 0
    assert main(["fit", "--data", str(data), "--mask", str(ones), "--k", "2",
                 "--method", "kpod", "--seed", "3", "--out", str(out_kp)]) == 0
    assert _read(out_km / "centers.csv") == _read(out_kp / "centers.csv")
    assert _read(out_km / "labels.csv") == _read(out_kp / "labels.csv")


def test_fit_kpod_with_mask_and_summary(tmp_path, masked_dataset):
    data, mask, _, R = masked_dataset
    out = tmp_path / "kpod"
    assert main(["fit", "--data", str(data), "--mask", str(mask), "--k", "2",
                 "--method", "kpod", "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert "degenerate_cells" in summary and "all_missing_rows" in summary
    centers = load_matrix_csv(out / "centers.csv")
    assert centers.shape == (2, 2)


def test_fit_nan_coded_data_without_mask(tmp_path, masked_dataset):
    data, _, X, R = masked_dataset
    nan_file = tmp_path / "nan.csv"
    coded = np.where(R > 0, X, np.nan)
    with open(nan_file, "w") as fh:
        for row in coded:
            fh.write(",".join("nan" if np.isnan(v) else repr(float(v))
                              for v in row) + "\n")
    out = tmp_path / "out"
    assert main(["fit", "--data", str(nan_file), "--k", "2", "--method", "kpod",
                 "--out", str(out)]) == 0


def test_fit_complete_case_labels_and_insufficient(tmp_path, masked_dataset):
    data, mask, X, R = masked_dataset
    out = tmp_path / "cc"
    assert main(["fit", "--data", str(data), "--mask", str(mask), "--k", "2",
                 "--method", "complete-case", "--out", str(out)]) == 0
    labels = np.loadtxt(out / "labels.csv", dtype=int)
    complete = R.all(axis=1)
    assert np.all(labels[~complete] == -1)
    assert np.all(labels[complete] >= 0)
    # one complete row with k=3 -> exit 3
    tight = tmp_path / "tight.csv"
    save_mask_csv(tight, np.vstack([np.ones((1, 2)), np.zeros((59, 2))]))
    code = main(["fit", "--data", str(data), "--mask", str(tight), "--k", "3",
                 "--method", "complete-case", "--out", str(tmp_path / "cc2")])
    assert code == 3


def test_fit_kmeans_rejects_incomplete_mask(tmp_path, masked_dataset):
    data, mask, _, _ = masked_dataset
    code = main(["fit", "--data", str(data), "--mask", str(mask), "--k", "2",
                 "--method", "kmeans", "--out", str(tmp_path / "x")])
    assert code == 2


def test_fit_validation_errors_exit_2(tmp_path, masked_dataset):
    data, _, X, _ = masked_dataset
    short = tmp_path / "short.csv"
    save_mask_csv(short, np.ones((5, 2)))
    assert main(["fit", "--data", str(data), "--mask", str(short), "--k", "2",
                 "--method", "kpod", "--out", str(tmp_path / "x")]) == 2
    assert main(["fit", "--data", str(tmp_path / "missing.csv"), "--k", "2",
                 "--method", "kmeans", "--out", str(tmp_path / "x")]) == 2
    assert main(["fit", "--data", str(data), "--k", "200", "--method", "kmeans",
                 "--out", str(tmp_path / "x")]) == 2


# ----------------------------------------------------------------- synth

def test_synth_writes_preset_files(tmp_path):
    out = tmp_path / "intro"
    assert main(["synth", "--preset", "intro", "--n", "500", "--seed", "4",
                 "--out", str(out)]) == 0
    X = load_matrix_csv(out / "data.csv")
    R = load_matrix_csv(out / "mask.csv")
    assert X.shape == (500, 2) and R.shape == (500, 2)
    meta = json.loads((out / "meta.json").read_text())
    assert meta["q"] == [1 / 3, 2 / 3]
    assert meta["k"] == 2


def test_synth_table_preset_needs_rate(tmp_path):
    assert main(["synth", "--preset", "s1", "--n", "50",
                 "--out", str(tmp_path / "s1")]) == 2
    assert main(["synth", "--preset", "s1", "--n", "50", "--missing-rate", "0.3",
                 "--out", str(tmp_path / "s1")]) == 0


# ------------------------------------------------------------ experiment

def test_experiment_command_end_to_end(tmp_path, capsys):
    cfg = {
        "experiments": [
            {"setting": "s1", "n": 80, "missing_rate": [0.1, 0.3],
             "repetitions": 2, "seed": 5, "fit": {"restarts": 3},
             "oracle": {"n": 1500, "restarts": 2}},
            {"setting": "a", "n": 80, "repetitions": 2, "seed": 5,
             "fit": {"restarts": 3}, "oracle": {"n": 1500, "restarts": 2}},
        ]
    }
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps(cfg))
    out = tmp_path / "results"
    assert main(["experiment", "--config", str(cfg_file), "--out", str(out)]) == 0
    assert (out / "runs.csv").exists() and (out / "aggregate.csv").exists()
    agg_lines = (out / "aggregate.csv").read_text().splitlines()
    # 3 case rows (s1 x2 rates + a) x 3 methods, plus comment and header
    assert len(agg_lines) == 2 + 9
    table = capsys.readouterr().out
    assert "mse_mean" in table


def test_experiment_bad_config_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"setting": "s1", "missing_rate": 0.1, "nope": 1}')
    assert main(["experiment", "--config", str(bad), "--out", str(tmp_path)]) == 2
    assert main(["experiment", "--config", str(tmp_path / "absent.json"),
                 "--out", str(tmp_path)]) == 2
    no_out = tmp_path / "noout.json"
    no_out.write_text('{"setting": "s1", "n": 40, "missing_rate": 0.1, '
                      '"repetitions": 1, "oracle": {"n": 1000, "restarts": 2}}')
    assert main(["experiment", "--config", str(no_out)]) == 2


# ---------------------------------------------------- check-decomposition

def test_check_decomposition_passes(capsys):
    assert main(["check-decomposition", "--n", "100", "--p", "3", "--k", "3",
                 "--trials", "20", "--seed", "0"]) == 0
    assert "max scaled" in capsys.readouterr().out


def test_check_decomposition_explicit_q():
    assert main(["check-decomposition", "--n", "60", "--p", "2", "--k", "2",
                 "--q", "0.5", "0.8", "--trials", "5"]) == 0
    # wrong q arity
    assert main(["check-decomposition", "--p", "2", "--q", "0.5"]) == 2


def test_check_decomposition_mc_mode(capsys):
    assert main(["check-decomposition", "--mc", "--p", "1", "--n", "50000",
                 "--q", "0.5", "--k", "2", "--seed", "1"]) == 0
    assert "L_partial" in capsys.readouterr().out
    assert main(["check-decomposition", "--mc", "--p", "2", "--n", "1000"]) == 2
