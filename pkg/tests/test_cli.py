"""End-to-end command-line runs, in process via main(argv)."""

import json

import numpy as np
import pytest

from evoclust import cli
from evoclust.datasets import gaussian_blobs, save_points
from evoclust.fca import FormalContext, read_cxt, write_cxt
from evoclust.reports import scrub_timing
from evoclust.rng import RngStream


@pytest.fixture
def blob_file(tmp_path):
    rng = RngStream(2)
    ds = gaussian_blobs(rng, centers=[(0, 0), (9, 9)], spread=0.3,
                        points_per_cluster=30)
    data = tmp_path / "blobs.txt"
    save_points(data, ds.points)
    gt = tmp_path / "gt.txt"
    save_points(gt, ds.true_centroids)
    return data, gt


def _err(capsys):
    captured = capsys.readouterr()
    return json.loads(captured.err.strip().splitlines()[-1])


def test_bench_list(capsys):
    assert cli.main(["bench-opt", "--list"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "id,name,low,up,dimension_rule,global_min,hardness_pct"
    assert len(out) == 17
    assert any(line.startswith("F14,") for line in out)


def test_bench_run_writes_reports(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    rc = cli.main(["bench-opt", "--algo", "bsa,de", "--fn", "F14",
                   "--dim", "2", "--runs", "2", "--iters", "60",
                   "--seed", "3", "--out", str(out)])
    assert rc == 0
    stdout = capsys.readouterr().out
    assert "F14 bsa:" in stdout and "F14 de:" in stdout
    for name in ("bench.csv", "bench_pairwise.csv", "bench_ratio.csv",
                 "bench.json"):
        assert (tmp_path / name).exists(), name
    payload = json.loads((tmp_path / "bench.json").read_text())
    assert payload["config"]["functions"] == ["F14"]
    assert {r["algo"] for r in payload["stats"]} == {"bsa", "de"}
    assert payload["pairwise"][0]["algo_a"] == "bsa"
    assert len(payload["detail"][0]["runs"]) == 2
    header = (tmp_path / "bench.csv").read_text().splitlines()[0]
    assert header.startswith("function,name,algo,dim,reference_min")


def test_report_compares_from_bench_json(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert cli.main(["bench-opt", "--algo", "bsa,de", "--fn", "F14",
                     "--runs", "3", "--iters", "80", "--seed", "1",
                     "--out", str(out)]) == 0
    capsys.readouterr()
    rc = cli.main(["report", "--in", str(tmp_path / "b.json"),
                   "--compare", "bsa,de", "--metric", "value",
                   "--out", str(tmp_path / "cmp.csv")])
    assert rc == 0
    assert "F14: winner" in capsys.readouterr().out
    cmp_payload = json.loads((tmp_path / "cmp.json").read_text())
    row = cmp_payload["comparison"][0]
    assert row["n_pairs"] == 3
    assert row["winner"] in ("bsa", "de", "tie")


def test_cluster_eca_star(blob_file, tmp_path, capsys):
    data, gt = blob_file
    out = tmp_path / "clu.csv"
    rc = cli.main(["cluster", "--data", str(data), "--gt", str(gt),
                   "--runs", "2", "--seed", "4", "--out", str(out)])
    assert rc == 0
    assert "k_mean=2.0" in capsys.readouterr().out
    payload = json.loads((tmp_path / "clu.json").read_text())
    assert payload["summary"]["ci_mean"] == 0.0
    assert payload["summary"]["k_mean"] == 2.0
    assert len(payload["detail"]) == 2
    assert "run_time_s" in payload["detail"][0]


def test_cluster_without_gt_leaves_truth_columns_null(blob_file, tmp_path):
    data, _ = blob_file
    out = tmp_path / "ng.csv"
    assert cli.main(["cluster", "--data", str(data), "--runs", "1",
                     "--out", str(out)]) == 0
    payload = json.loads((tmp_path / "ng.json").read_text())
    assert payload["summary"]["ci_mean"] is None
    assert payload["summary"]["sse_mean"] is not None
    assert "ci" not in payload["detail"][0]


def test_cluster_kmeans_variants(blob_file, tmp_path, capsys):
    data, gt = blob_file
    for algo in ("km", "km++"):
        rc = cli.main(["cluster", "--algo", algo, "--data", str(data),
                       "--gt", str(gt), "--k", "2", "--runs", "2",
                       "--seed", "0"])
        assert rc == 0
        assert "sse_mean=" in capsys.readouterr().out


def test_cluster_km_requires_k(blob_file, capsys):
    data, _ = blob_file
    rc = cli.main(["cluster", "--algo", "km", "--data", str(data),
                   "--runs", "1"])
    assert rc == 1
    err = _err(capsys)
    assert err["error"] == "ValueError"
    assert "--k" in err["message"]


def test_cluster_same_seed_reports_identical(blob_file, tmp_path):
    data, gt = blob_file
    out = tmp_path / "det.csv"
    args = ["cluster", "--data", str(data), "--gt", str(gt),
            "--runs", "2", "--seed", "9", "--out", str(out)]
    assert cli.main(args) == 0
    first = json.loads((tmp_path / "det.json").read_text())
    assert cli.main(args) == 0
    second = json.loads((tmp_path / "det.json").read_text())
    assert scrub_timing(first) == scrub_timing(second)


def test_fca_reduce_end_to_end(tmp_path, capsys):
    ctx = FormalContext(["o1", "o2", "o3"], ["car", "automobile", "wheel"],
                        np.array([[1, 0, 1], [0, 1, 0], [0, 0, 1]], dtype=bool))
    ctx_path = tmp_path / "toy.cxt"
    write_cxt(ctx, ctx_path, name="toy")
    tax_path = tmp_path / "lex.tsv"
    tax_path.write_text("syn\tcar\tautomobile\n")
    rc = cli.main(["fca-reduce", "--ctx", str(ctx_path), "--tax", str(tax_path),
                   "--out", str(tmp_path / "red.cxt"),
                   "--report", str(tmp_path / "rep.json")])
    assert rc == 0
    assert "merges" in capsys.readouterr().out
    reduced = read_cxt(tmp_path / "red.cxt")
    assert reduced.attributes == ("automobile", "wheel")
    report = json.loads((tmp_path / "rep.json").read_text())
    assert report["original_shape"] == [3, 3]
    assert report["reduced_shape"] == [3, 2]
    assert report["trace"][0][5] == "similar"
    assert report["reduced"]["n_concepts"] <= report["original"]["n_concepts"]
    assert 0.0 <= report["quality"] <= 1.0


def test_out_dir_env_routes_cli_outputs(blob_file, tmp_path, monkeypatch):
    data, _ = blob_file
    monkeypatch.setenv("EVOCLUST_OUT_DIR", str(tmp_path / "routed"))
    assert cli.main(["cluster", "--data", str(data), "--runs", "1",
                     "--out", "rel/c.csv"]) == 0
    assert (tmp_path / "routed" / "rel" / "c.csv").exists()
    assert (tmp_path / "routed" / "rel" / "c.json").exists()


def test_usage_errors_exit_2(capsys):
    assert cli.main(["bench-opt", "--range", "R9"]) == 2
    assert _err(capsys)["error"] == "usage"
    assert cli.main(["cluster"]) == 2  # --data is required
    assert _err(capsys)["error"] == "usage"
    assert cli.main(["nonsense"]) == 2
    assert cli.main(["report", "--in", "x.json", "--compare", "bsa"]) == 2
    assert "exactly two" in _err(capsys)["message"]


def test_runtime_errors_exit_1(tmp_path, capsys):
    assert cli.main(["bench-opt", "--fn", "F99", "--runs", "1",
                     "--iters", "5"]) == 1
    assert _err(capsys)["error"] == "KeyError"
    assert cli.main(["cluster", "--data", str(tmp_path / "missing.txt"),
                     "--runs", "1"]) == 1
    err = _err(capsys)
    assert err["error"] in ("OSError", "FileNotFoundError")
