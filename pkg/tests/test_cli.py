import csv
import io
import json
import subprocess
import sys

import pytest

from kurepa.cli import main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text, z", [
    ("0.5", 0.5), ("-2", -2), ("3i", 3j), ("-i", -1j), ("1+2i", 1 + 2j),
    ("1.5 - 0.25i", 1.5 - 0.25j), (" -.5 + i ", -0.5 + 1j), ("2e-3-1e1i", 0.002 - 10j),
])
def test_parse_complex(text, z):
    assert parse_complex(text) == z


@pytest.mark.parametrize("text", ["", "abc", "1+2", "i2", "1++2i", "0x10", "nan"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_eval_integer(capsys):
    code, out, _ = run(capsys, "eval", "K", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and abs(doc["value"][0] - 4) <= 1e-12 and doc["value"][1] == 0


def test_eval_removable(capsys):
    code, out, _ = run(capsys, "eval", "K", "-2")
    assert code == 0 and "1.0 + 0.0i" in out and "RemovableSingularity" in out


def test_eval_negative_complex_literal(capsys):
    code, out, _ = run(capsys, "eval", "K", "-0.5+1i", "--method", "slavic", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["method"] == "Slavic"


def test_eval_pole(capsys):
    code, _, err = run(capsys, "eval", "K1", "2")
    assert code == 2 and "pv K1 2" in err and "residue K1 2" in err
    code, _, err = run(capsys, "eval", "K", "-4")
    assert code == 2 and "pv K -4" in err


def test_eval_json_round_trip(capsys):
    from kurepa import kurepa
    code, out, _ = run(capsys, "eval", "K", "0.3-2.7i", "--format", "json", "--tol", "1e-13")
    doc = json.loads(out)
    v = kurepa(0.3 - 2.7j, tol=1e-13).value
    assert doc["value"] == [v.real, v.imag]


@pytest.mark.parametrize("argv", [
    ["eval", "K", "zz"], ["eval", "K2", "1"], ["eval", "K", "1", "--method", "trapezoid"],
    ["eval", "K", "1", "--tol", "-1"], ["seq", "10001"], ["seq", "-1"], [],
    ["grid", "--re-range", "1:0:3", "--im-range", "0:1:2"], ["grid", "--re-range", "0:1", "--im-range", "0:1:2"],
    ["eval", "K", "-0.5", "--method", "Integral"],
])
def test_usage_errors_exit_1(capsys, argv):
    assert main(argv) == 1


@pytest.mark.parametrize("argv, expected", [
    (["pv", "Gamma", "0"], -0.5772156649015329),
    (["pv", "K", "-2"], 1.0),
    (["pv", "K1", "1"], 0.302825117),
    (["pv", "K", "-3"], 0.5386078324507664),
    (["residue", "K", "-1"], -1.0),
    (["residue", "K", "-2"], 0.0),
    (["residue", "K1", "0"], 0.36787944117144233),
])
def test_pv_and_residue(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and abs(float(out) - expected) <= 1e-9


def test_pv_json(capsys):
    code, out, _ = run(capsys, "pv", "K1", "0", "--format", "json")
    assert json.loads(out) == {"function": "K1", "point": 0, "pv": -0.6971748832350661}


@pytest.mark.parametrize("n, tail", [(5, [0, 1, 2, 4, 10, 34]), (0, [0]), (7, [874])])
def test_seq(capsys, n, tail):
    code, out, _ = run(capsys, "seq", str(n))
    values = [int(v) for v in out.split()]
    assert code == 0 and len(values) == n + 1 and values[-len(tail):] == tail


def test_seq_large_and_formats(capsys):
    from kurepa.core import left_factorial_exact
    code, out, _ = run(capsys, "seq", "10000", "--format", "json")
    doc = json.loads(out, parse_int=str)
    values = doc["values"]
    assert code == 0 and len(values) == 10001 and values[10] == "409114"
    assert values[1500] == str(left_factorial_exact(1500))
    old = sys.get_int_max_str_digits()
    sys.set_int_max_str_digits(0)
    try:
        assert int(values[10000]) == left_factorial_exact(10000)
    finally:
        sys.set_int_max_str_digits(old)
    code, out, _ = run(capsys, "seq", "3", "--format", "csv")
    assert out.splitlines() == ["n,K", "0,0", "1,1", "2,2", "3,4"]


def test_const(capsys):
    code, out, _ = run(capsys, "const", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert abs(doc["L1"] - 0.697174883) <= 5e-10
    assert abs(doc["Ei(1)"] - 1.895117816) <= 1e-9
    assert abs(doc["1/e"] - 0.367879441) <= 1e-9
    code, out, _ = run(capsys, "const")
    assert all(len(line.split()[1].replace(".", "").lstrip("0")) >= 12 for line in out.splitlines())


def test_grid_strip_json(capsys, tmp_path):
    path = tmp_path / "strip.json"
    code, out, _ = run(capsys, "grid", "--re-range", "0:1:20", "--im-range", "-2:2:20",
                       "--methods", "Integral,Slavic", "--out", str(path))
    assert code == 0 and "max_abs_diff=" in out
    doc = json.loads(path.read_text())
    assert doc["pairs"][0]["max_abs_diff"] <= 1e-8


def test_grid_single_row_csv(capsys, tmp_path):
    path = tmp_path / "one.csv"
    code, _, _ = run(capsys, "grid", "--re-range", "0.5:0.5:1", "--im-range", "0:0:1",
                     "--format", "csv", "--out", str(path))
    rows = list(csv.reader(path.open()))
    assert code == 0 and len(rows) == 2 and rows[1][:3] == ["0.5", "0", "ok"]


def test_grid_over_poles(capsys, tmp_path):
    code, out, _ = run(capsys, "grid", "--re-range", "-1.5:-0.5:3", "--im-range", "-0.1:0.1:3",
                       "--exclusion", "0.05", "--out", str(tmp_path / "p.json"))
    assert code == 0 and "skipped_points=1" in out


def test_grid_io_failure(capsys, tmp_path):
    code = main(["grid", "--re-range", "0.2:0.8:2", "--im-range", "0:1:2",
                 "--out", str(tmp_path / "missing" / "x.json")])
    assert code == 1


def test_selftest_quiet(capsys):
    code, out, _ = run(capsys, "selftest", "--verbosity", "quiet")
    assert code == 0 and out.strip() == "PASS"


def test_selftest_corrupted_tolerance(capsys):
    code, out, _ = run(capsys, "selftest", "--tolerance-scale", "1e-12")
    assert code == 3 and "FAIL" in out and "at=" in out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "kurepa", "seq", "4"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.split() == ["0", "1", "2", "4", "10"]
