from __future__ import annotations

import csv
import io
import json

import pytest

from kneser.cli import FIGURE_COLUMNS, figure1_csv, figure1_rows, main
from kneser.family import Family


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_stars(capsys):
    code, out, err = run(capsys, "construct", "stars", "--n", "5", "--k", "2", "--s", "1")
    assert code == 0
    assert out == "5 2 4\n1 2\n1 3\n1 4\n1 5\n"
    assert json.loads(err)["max_degree"] == 0


def test_construct_explicit_summary(capsys):
    code, out, err = run(capsys, "construct", "explicit", "--n", "24", "--k", "2", "--s", "1", "--lambda", "3/2")
    info = json.loads(err)
    assert code == 0
    assert (info["size"], info["max_degree"], info["t"]) == (34, 16, 19)
    assert len(out.splitlines()) == 35


def test_construct_random_is_repeatable(capsys, tmp_path):
    args = ["construct", "random", "--n", "40", "--k", "2", "--s", "1", "--lambda", "3/2", "--seed", "7"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert Family.from_text(first).n == 40 and len(Family.from_text(first)) == 58


def test_float_lambda_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "explicit", "--n", "24", "--k", "2", "--s", "1", "--lambda", "1.5"])
    assert exc.value.code == 2


def test_analyze_examples(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("5 2 5\n1 2\n1 3\n1 4\n1 5\n2 3\n")
    code, out, _ = run(capsys, "analyze", str(path))
    rep = json.loads(out)
    assert code == 0
    assert rep["max_degree"] == 2
    assert rep["size_parameter"]["s"] == 1 and rep["size_parameter"]["lambda"] == "4/3"
    assert rep["spectral"]["gamma"] == ["1", "1/2", "1/2", "1/4", "1/4"]

    path.write_text(Family.full(5, 2).to_text())
    rep = json.loads(run(capsys, "analyze", str(path))[1])
    assert rep["spectral"]["eigennorm_sq"] == ["10", "0", "0"]

    path.write_text(Family.star(5, 2, 1).to_text())
    rep = json.loads(run(capsys, "analyze", str(path))[1])
    assert rep["spectral"]["eta"] == "3/5"


def test_analyze_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("5 2 2\n1 2\n1 9\n")
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2
    assert "line 3" in err


def test_bounds_commands(capsys):
    code, out, _ = run(capsys, "bounds", "upper", "--n", "24", "--k", "2", "--s", "1", "--lambda", "3/2", "--measured", "16")
    rep = json.loads(out)
    assert code == 0 and rep["value"] == "22.7500000000" and rep["verdict"] == "holds"
    code, out, _ = run(capsys, "bounds", "upper", "--n", "24", "--k", "2", "--s", "1", "--lambda", "3/2", "--measured", "23")
    assert code == 1 and json.loads(out)["verdict"] == "violated"
    rep = json.loads(run(capsys, "bounds", "random-degree", "--n", "40", "--k", "2", "--s", "1", "--lambda", "3/2")[1])
    assert rep["exact"] == "111/4"


def test_search_and_matching(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--n", "5", "--k", "2", "--m", "5")
    assert code == 0 and json.loads(out)["optimum"] == 1
    path = tmp_path / "f.txt"
    path.write_text("5 2 3\n1 2\n3 4\n1 5\n")
    code, out, _ = run(capsys, "matching", str(path), "--exact")
    rep = json.loads(out)
    assert rep["size"] == rep["maximum"] == 2
    assert rep["hypothesis_ok"] is False


def test_figure1_petersen():
    rows = figure1_rows(5, 2, 4, 8)
    by_m = {r["m"]: r for r in rows}
    assert [r["m"] for r in rows] == list(range(1, 11))
    assert all(r["exact_min"] != "" for r in rows)
    assert by_m[4]["exact_min"] == "0" and by_m[5]["exact_min"] == "1"
    text = figure1_csv(rows)
    header = next(csv.reader(io.StringIO(text)))
    assert header == list(FIGURE_COLUMNS)
    assert "\r" not in text
    assert figure1_csv(figure1_rows(5, 2, 4, 8)) == text


def test_figure1_lower_bound_monotone_per_segment():
    rows = figure1_rows(12, 2, 2, 6, exact_max=0)
    segments = {}
    for r in rows:
        segments.setdefault(r["s"], []).append(float(r["lower_bound"]))
    for values in segments.values():
        assert values == sorted(values)
    assert [r["stars_point"] for r in rows if r["s"] == 1 and r["lambda"].startswith("1.0")] == ["0"]
