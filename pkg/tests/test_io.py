"""File formats: point matrices, labels, CSV/JSON emission, output routing."""

import csv
import json

import numpy as np
import pytest

from evoclust.datasets import (Dataset, gaussian_blobs, load_dataset,
                               load_labels, load_points, save_points,
                               uniform_cloud)
from evoclust.reports import (OUT_DIR_ENV, fmt_full, fmt_sig, resolve_out,
                              scrub_timing, write_csv, write_json)
from evoclust.rng import RngStream


# ------------------------------------------------------------ point files

def test_load_points_with_comments(tmp_path):
    f = tmp_path / "pts.txt"
    f.write_text("# header\n1.0 2.0\n\n3.5 -4.25  # inline note\n")
    pts = load_points(f)
    assert pts.tolist() == [[1.0, 2.0], [3.5, -4.25]]


def test_load_points_errors_carry_line_numbers(tmp_path):
    ragged = tmp_path / "ragged.txt"
    ragged.write_text("1 2\n3 4 5\n")
    with pytest.raises(ValueError, match=r"ragged\.txt:2: expected 2 values"):
        load_points(ragged)
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\nx 4\n")
    with pytest.raises(ValueError, match=r"bad\.txt:2: non-numeric"):
        load_points(bad)
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    with pytest.raises(ValueError, match="no data points"):
        load_points(empty)


def test_save_load_round_trip(tmp_path):
    rng = np.random.Generator(np.random.PCG64(0))
    pts = rng.normal(size=(20, 3)) * 1e-7  # awkward magnitudes survive repr
    f = tmp_path / "rt.txt"
    save_points(f, pts)
    assert np.array_equal(load_points(f), pts)


def test_load_labels(tmp_path):
    f = tmp_path / "lab.txt"
    f.write_text("0\n0\n2\n1\n")
    assert load_labels(f).tolist() == [0, 0, 2, 1]
    two = tmp_path / "two.txt"
    two.write_text("0 1\n")
    with pytest.raises(ValueError, match="one value per line"):
        load_labels(two)
    frac = tmp_path / "frac.txt"
    frac.write_text("0.5\n")
    with pytest.raises(ValueError, match="integers"):
        load_labels(frac)


def test_load_dataset_cross_checks(tmp_path):
    (tmp_path / "d.txt").write_text("0 0\n1 1\n")
    (tmp_path / "c.txt").write_text("0.5 0.5\n")
    (tmp_path / "l.txt").write_text("0\n1\n")
    ds = load_dataset(tmp_path / "d.txt", tmp_path / "c.txt", tmp_path / "l.txt")
    assert ds.name == "d" and ds.n == 2 and ds.dim == 2
    assert ds.true_centroids.tolist() == [[0.5, 0.5]]
    assert ds.true_labels.tolist() == [0, 1]
    (tmp_path / "c3.txt").write_text("0.5 0.5 0.5\n")
    with pytest.raises(ValueError, match="dimension"):
        load_dataset(tmp_path / "d.txt", centroids_path=tmp_path / "c3.txt")
    (tmp_path / "l3.txt").write_text("0\n1\n0\n")
    with pytest.raises(ValueError, match="3 labels for 2 points"):
        load_dataset(tmp_path / "d.txt", labels_path=tmp_path / "l3.txt")


def test_synthetic_generators():
    rng = RngStream(1)
    ds = gaussian_blobs(rng, centers=[(0, 0), (5, 5)], spread=0.1,
                        points_per_cluster=[10, 20])
    assert ds.n == 30 and ds.dim == 2
    assert ds.true_labels.tolist() == [0] * 10 + [1] * 20
    assert ds.true_centroids.tolist() == [[0, 0], [5, 5]]
    low, up = ds.bounds()
    assert np.all(low <= up)
    cloud = uniform_cloud(rng, n=50, low=-1.0, up=1.0, dim=2)
    assert cloud.points.shape == (50, 2)
    assert cloud.points.min() >= -1 and cloud.points.max() <= 1
    with pytest.raises(ValueError):
        gaussian_blobs(rng, centers=[(0, 0)], spread=1.0, points_per_cluster=0)


# ------------------------------------------------------------- formatting

def test_fmt_sig():
    assert fmt_sig(109.2) == "1.092E+02"
    assert fmt_sig(109199.0) == "1.092E+05"
    assert fmt_sig(-0.00012345) == "-1.234E-04"  # round-half-even on 5
    assert fmt_sig(0.0) == "0.000E+00"
    assert fmt_sig(None) == ""
    assert fmt_sig(True) == "True"
    assert fmt_sig(2.0, digits=2) == "2.0E+00"


def test_fmt_full_round_trips():
    vals = [0.1, 1e-300, -3.0, float(np.float64(1) / 3)]
    for v in vals:
        assert float(fmt_full(v)) == v
    assert fmt_full(7) == "7"
    assert fmt_full(np.int64(7)) == "7"
    assert fmt_full(None) == ""
    assert fmt_full(False) == "False"


def test_scrub_timing_recurses():
    payload = {"a": 1, "run_time_s": 2.0,
               "inner": {"suite_time_s": 3.0, "keep": [{"t_time_s": 1}, 5]}}
    assert scrub_timing(payload) == {"a": 1, "inner": {"keep": [{}, 5]}}


# ------------------------------------------------------------ file output

def test_write_json_sorted_and_newline(tmp_path):
    p = write_json(tmp_path / "x.json", {"b": 1, "a": [1.5, None]})
    text = p.read_text()
    assert text == '{\n  "a": [\n    1.5,\n    null\n  ],\n  "b": 1\n}\n'
    assert json.loads(text) == {"a": [1.5, None], "b": 1}


def test_write_csv_lossless_and_human(tmp_path):
    header = ["name", "value"]
    rows = [["row1", 1.0 / 3.0], ["row2", 123456.789]]
    p = write_csv(tmp_path / "full.csv", header, rows)
    with open(p) as fh:
        got = list(csv.reader(fh))
    assert got[0] == header
    assert float(got[1][1]) == 1.0 / 3.0  # exact re-parse
    h = write_csv(tmp_path / "human.csv", header, rows, human=True)
    with open(h) as fh:
        hgot = list(csv.reader(fh))
    assert hgot[1][1] == "3.333E-01"
    assert hgot[2][1] == "1.235E+05"


def test_out_dir_env_reroutes_relative_paths(tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path / "routed"))
    p = write_json("sub/report.json", {"x": 1})
    assert p == tmp_path / "routed" / "sub" / "report.json"
    assert p.exists()
    absolute = write_json(tmp_path / "direct.json", {"y": 2})
    assert absolute == tmp_path / "direct.json"  # absolute paths untouched
    monkeypatch.delenv(OUT_DIR_ENV)
    assert resolve_out(tmp_path / "z.csv") == tmp_path / "z.csv"


def test_dataset_record_basics():
    ds = Dataset(np.array([[0.0, 1.0], [2.0, 3.0]]), name="pair")
    assert ds.n == 2 and ds.dim == 2
    low, up = ds.bounds()
    assert low.tolist() == [0.0, 1.0] and up.tolist() == [2.0, 3.0]
