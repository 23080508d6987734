import csv
import io
import os
import subprocess
import sys

import pytest

from cutquery import read_edge_list
from cutquery.cli import CSV_COLUMNS, fitted_exponent, main


def run_cli(args, env_extra=None):
    env = dict(os.environ)
    env.pop("CUTQUERY_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "cutquery.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def test_gen_barbell_edge_count(tmp_path):
    out = tmp_path / "g.el"
    got = run_cli(["gen", "--kind", "barbell", "--clique", "5", "--out", str(out)])
    assert got.returncode == 0
    g = read_edge_list(out)
    assert g.m == 21  # 2*C(5,2) + 1


def test_global_mincut_verify_on_barbell(tmp_path):
    out = tmp_path / "g.el"
    run_cli(["gen", "--kind", "barbell", "--clique", "5", "--out", str(out)])
    got = run_cli(
        ["global-mincut", "--algo", "v2", "--in", str(out), "--seed", "1", "--verify"]
    )
    assert got.returncode == 0
    row = next(csv.DictReader(io.StringIO(got.stdout), fieldnames=CSV_COLUMNS))
    assert row["cut_value"] == "1"
    assert row["correct"] == "1"


def test_bad_flags_exit_two(tmp_path):
    got = run_cli(["global-mincut", "--algo", "v3", "--in", "nowhere.el"])
    assert got.returncode == 2
    got = run_cli(["gen", "--kind", "nonsense", "--out", str(tmp_path / "x.el")])
    assert got.returncode == 2
    got = run_cli(["st-mincut", "--in", "missing.el", "--source", "0", "--sink", "1"])
    assert got.returncode == 2  # unreadable input is a usage problem


def test_csv_rows_are_reproducible(tmp_path):
    out = tmp_path / "g.el"
    run_cli(["gen", "--kind", "gnp", "--n", "16", "--p", "0.4", "--seed", "3", "--out", str(out)])
    args = ["global-mincut", "--algo", "v1", "--in", str(out), "--seed", "9", "--verify"]
    a = run_cli(args).stdout
    b = run_cli(args).stdout
    strip = lambda text: [r.rsplit(",", 1)[0] for r in text.splitlines() if r]
    assert strip(a) == strip(b)  # identical except the wall-clock field


def test_st_mincut_cli(tmp_path):
    out = tmp_path / "p.el"
    run_cli(["gen", "--kind", "gnp", "--n", "14", "--p", "0.5", "--seed", "5", "--out", str(out)])
    got = run_cli(
        [
            "st-mincut", "--in", str(out),
            "--source", "0", "--sink", "13",
            "--seed", "2", "--verify",
        ]
    )
    assert got.returncode == 0
    row = next(csv.DictReader(io.StringIO(got.stdout), fieldnames=CSV_COLUMNS))
    assert row["algo"] == "st"
    assert row["correct"] == "1"


def test_learn_strategies_and_verify(tmp_path):
    out = tmp_path / "c.el"
    run_cli(["gen", "--kind", "cycle", "--n", "12", "--out", str(out)])
    for strategy in ("splits", "pairs"):
        got = run_cli(["learn", "--in", str(out), "--strategy", strategy, "--verify"])
        assert got.returncode == 0, got.stderr
        row = next(csv.DictReader(io.StringIO(got.stdout), fieldnames=CSV_COLUMNS))
        assert row["correct"] == "1"
    # the halving strategy needs far fewer distinct queries than pair probing
    splits = run_cli(["learn", "--in", str(out), "--strategy", "splits"]).stdout
    pairs = run_cli(["learn", "--in", str(out), "--strategy", "pairs"]).stdout
    q = lambda text: int(next(csv.DictReader(io.StringIO(text), fieldnames=CSV_COLUMNS))["distinct_queries"])
    assert q(splits) < q(pairs)


def test_sparsify_writes_weighted_graph(tmp_path):
    src = tmp_path / "g.el"
    dst = tmp_path / "h.wel"
    run_cli(["gen", "--kind", "gnp", "--n", "12", "--p", "0.5", "--seed", "7", "--out", str(src)])
    got = run_cli(
        ["sparsify", "--in", str(src), "--epsilon", "0.3", "--out", str(dst), "--seed", "3"]
    )
    assert got.returncode == 0
    header = dst.read_text().splitlines()[0].split()
    assert header[0] == "12"


def test_csv_file_accumulates_with_single_header(tmp_path):
    out = tmp_path / "g.el"
    log = tmp_path / "runs.csv"
    run_cli(["gen", "--kind", "cycle", "--n", "8", "--out", str(out)])
    for seed in ("1", "2"):
        run_cli(
            ["global-mincut", "--algo", "v2", "--in", str(out), "--seed", seed, "--csv", str(log)]
        )
    rows = log.read_text().splitlines()
    assert rows[0] == ",".join(CSV_COLUMNS)
    assert len(rows) == 3


def test_env_var_supplies_default_seed(tmp_path):
    out = tmp_path / "g.el"
    run_cli(["gen", "--kind", "cycle", "--n", "8", "--out", str(out)])
    a = run_cli(["global-mincut", "--in", str(out)], env_extra={"CUTQUERY_SEED": "77"})
    b = run_cli(["global-mincut", "--in", str(out), "--seed", "77"])
    strip = lambda text: [r.rsplit(",", 1)[0] for r in text.splitlines() if r]
    assert strip(a.stdout) == strip(b.stdout)


def test_verification_mismatch_exits_one(tmp_path, monkeypatch):
    # learning with a cap low enough to abort counts as a failed verification
    out = tmp_path / "k.el"
    run_cli(["gen", "--kind", "gnp", "--n", "10", "--p", "0.9", "--seed", "1", "--out", str(out)])
    got = run_cli(["learn", "--in", str(out), "--abort-above", "3", "--verify"])
    assert got.returncode == 1


def test_fitted_exponent_on_synthetic_counts():
    sizes = [64, 128, 256, 512]
    quad = [n * n for n in sizes]
    lin = [7 * n for n in sizes]
    assert abs(fitted_exponent(sizes, quad) - 2.0) < 1e-9
    assert abs(fitted_exponent(sizes, lin) - 1.0) < 1e-9
    assert fitted_exponent([64], [10]) != fitted_exponent([64], [10])  # nan


def test_bench_tiny_ladder_runs(tmp_path):
    log = tmp_path / "bench.csv"
    got = run_cli(
        [
            "bench", "--suite", "global", "--sizes", "24,32",
            "--trials", "1", "--seed", "5", "--csv", str(log),
        ]
    )
    assert got.returncode == 0
    lines = [r for r in got.stdout.splitlines() if r.startswith("# exponent")]
    assert any("global-v2" in ln for ln in lines)
    assert any("baseline-pairs" in ln for ln in lines)
    rows = list(csv.DictReader(open(log)))
    assert {r["algo"] for r in rows} == {"baseline-pairs", "global-v2"}
    for r in rows:
        assert int(r["distinct_queries"]) > 0
