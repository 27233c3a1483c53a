import csv
import json
import math

import pytest

from nyq.cli import main

BASIC = {
    "ring": "disk_rational",
    "plant": [["1/(z-1/2)"]],
    "controller": [["1"]],
    "options": {"gamma": "2"},
}


def write_problem(tmp_path, payload, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_analyze_yes_and_breakdown(tmp_path, capsys):
    path = write_problem(tmp_path, BASIC)
    out = str(tmp_path / "report.json")
    assert main(["analyze", path, "--json-out", out]) == 0
    report = json.loads(open(out).read())
    assert report["verdict"]["stabilizes"] == "yes"
    assert report["verdict"]["det_I_minus_CP"]["index"]["value"] == -1
    assert report["verdict"]["det_D_P"]["index"]["value"] == 1
    assert report["verdict"]["det_Dtilde_C"]["index"]["value"] == 0
    assert report["verdict"]["index_sum"]["value"] == 0


def test_analyze_no_with_small_gain(tmp_path, capsys):
    problem = dict(BASIC, controller=[["1/5"]])
    path = write_problem(tmp_path, problem)
    out = str(tmp_path / "report.json")
    assert main(["analyze", path, "--json-out", out]) == 1
    report = json.loads(open(out).read())
    assert report["verdict"]["index_sum"]["value"] == 1


def test_analyze_degenerate_gain(tmp_path, capsys):
    problem = dict(BASIC, controller=[["1/2"]])
    path = write_problem(tmp_path, problem)
    assert main(["analyze", path]) == 2


def test_analyze_malformed_coefficient(tmp_path, capsys):
    problem = {"ring": "disk_rational", "plant": [[{"num": ["1/0"], "den": ["1"]}]],
               "controller": [["1"]]}
    path = write_problem(tmp_path, problem)
    assert main(["analyze", path]) == 3


def test_analyze_dimension_mismatch(tmp_path, capsys):
    problem = {"ring": "disk_rational", "plant": [["1", "2"]], "controller": [["1", "1"]]}
    path = write_problem(tmp_path, problem)
    assert main(["analyze", path]) == 5


def test_analyze_ill_posed(tmp_path, capsys):
    problem = dict(BASIC, controller=[["z-1/2"]])
    path = write_problem(tmp_path, problem)
    assert main(["analyze", path]) == 7


def test_analyze_sweep(tmp_path, capsys):
    problem = dict(BASIC)
    problem["options"] = {"gamma": "2", "sweep": {"controller_gains": ["1/5", "2/5", "3/5", "1"]}}
    path = write_problem(tmp_path, problem)
    out = str(tmp_path / "sweep.json")
    assert main(["analyze", path, "--json-out", out]) == 0
    report = json.loads(open(out).read())
    verdicts = [entry["stabilizes"] for entry in report["sweep"]]
    assert verdicts == ["no", "no", "yes", "yes"]


def test_wind_disk(tmp_path, capsys):
    assert main(["wind", "--ring", "disk", "(z-1/2)/(z-2)"]) == 0
    out = capsys.readouterr().out
    assert "winding: 1" in out


def test_wind_disk_degenerate(capsys):
    assert main(["wind", "--ring", "disk", "z-1"]) == 2


def test_wind_ap(capsys):
    assert main(["wind", "--ring", "ap", "2 + e(1)"]) == 0
    out = capsys.readouterr().out
    assert "certified=True" in out


def test_wind_csv_columns(tmp_path, capsys):
    path = str(tmp_path / "wind.csv")
    assert main(["wind", "--ring", "disk", "(z-1/2)/(z-2)", "--csv", path,
                 "--samples", "64"]) == 0
    header, rows = read_csv(path)
    assert header == ["t", "re", "im", "unwrapped_arg"]
    assert len(rows) == 64
    total = float(rows[-1][3]) - float(rows[0][3])
    assert abs(total - 2 * math.pi) < 1e-6


def test_factorize_round_trip(tmp_path, capsys):
    path = write_problem(tmp_path, BASIC)
    fpath = str(tmp_path / "fact.json")
    assert main(["factorize", path, "--out", fpath]) == 0
    fact = json.loads(open(fpath).read())
    assert fact["side"] == "right"
    problem = dict(BASIC)
    problem["plant_rcf"] = {k: fact[k] for k in ("N", "D", "X", "Y")}
    path2 = write_problem(tmp_path, problem, "with_rcf.json")
    out = str(tmp_path / "report2.json")
    assert main(["analyze", path2, "--json-out", out]) == 0
    report = json.loads(open(out).read())
    assert report["verdict"]["stabilizes"] == "yes"


def test_factorize_unsupported_ring(tmp_path, capsys):
    problem = {"ring": "callier_desoer"}
    path = write_problem(tmp_path, problem)
    assert main(["factorize", path]) == 6


def test_curve_closed(tmp_path, capsys):
    path = write_problem(tmp_path, BASIC)
    cpath = str(tmp_path / "curve.csv")
    assert main(["curve", path, "--csv", cpath, "--samples", "1024"]) == 0
    header, rows = read_csv(cpath)
    assert header == ["t", "re", "im"]
    assert len(rows) == 1024
    first = complex(float(rows[0][1]), float(rows[0][2]))
    last = complex(float(rows[-1][1]), float(rows[-1][2]))
    assert abs(first - last) < 1e-9


def test_curve_constant_det(tmp_path, capsys):
    problem = {"ring": "disk_rational", "plant": [["1/(z-2)"]], "controller": [["0"]]}
    path = write_problem(tmp_path, problem)
    cpath = str(tmp_path / "curve.csv")
    assert main(["curve", path, "--csv", cpath, "--samples", "16"]) == 0
    _, rows = read_csv(cpath)
    values = {(row[1], row[2]) for row in rows}
    assert len(values) == 1


def test_curve_ill_posed(tmp_path, capsys):
    problem = dict(BASIC, controller=[["z-1/2"]])
    path = write_problem(tmp_path, problem)
    assert main(["curve", path, "--csv", str(tmp_path / "c.csv")]) == 7


def test_exit_codes_stable_under_samples(tmp_path, capsys):
    path = write_problem(tmp_path, BASIC)
    assert main(["analyze", path]) == 0
    assert main(["analyze", path, "--samples", "256"]) == 0
    assert main(["analyze", path, "--samples", "4096"]) == 0


def test_unknown_ring_in_file(tmp_path, capsys):
    problem = dict(BASIC, ring="wiener_plus")
    path = write_problem(tmp_path, problem)
    assert main(["analyze", path]) == 3
