import csv
import io
import json
import subprocess
import sys

import pytest

from halphen.cli import main, rational
from fractions import Fraction as F


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_rational_parser():
    assert rational("3/4") == F(3, 4)
    assert rational("0.125") == F(1, 8)
    assert rational("-2") == -2


def test_roots_json(capsys):
    code, out = run(capsys, "roots", "--g2", "1", "--g3", "0", "--format", "json")
    data = json.loads(out.out)
    assert code == 0
    assert [r["re"] for r in data["roots"]] == ["1/2", "0", "-1/2"]
    assert all(r["exact"] for r in data["roots"])
    assert data["ordering"] == "descending-real"


def test_roots_triple_zero(capsys):
    code, out = run(capsys, "roots", "--g2", "0", "--g3", "0")
    assert code == 0 and {r["re"] for r in json.loads(out.out)["roots"]} == {"0"}


def test_bad_number_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["roots", "--g2", "one"])
    assert exc.value.code == 2


@pytest.mark.parametrize("n,expected", [(0, ["0"]), (1, ["0", "0"])])
def test_spectrum_small(capsys, n, expected):
    code, out = run(capsys, "spectrum", "--n", str(n), "--g2", "1", "--g3", "0")
    data = json.loads(out.out)
    assert code == 0
    assert [b["value"] for b in data["B_values"]] == expected
    assert all("location" in d for d in data["discrepancies"])


def test_spectrum_n2_three_values(capsys):
    code, out = run(capsys, "spectrum", "--n", "2")
    data = json.loads(out.out)
    assert len(data["B_values"]) == 3
    assert all(s["residual_norm"]["value"] < 1e-12 for s in data["solutions"])


def test_potential_csv(capsys):
    code, out = run(capsys, "potential", "--n", "2", "--g2", "1", "--g3", "0",
                    "--r-min", "0.6", "--r-max", "5", "--samples", "10", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert code == 0 and len(rows) == 10
    assert list(rows[0]) == ["r", "w", "V_general", "V_paper", "diff"]
    w = [float(r["w"]) for r in rows]
    assert all(a > b for a, b in zip(w, w[1:]))


def test_potential_domain_error_exit_3(capsys):
    code, out = run(capsys, "potential", "--n", "2", "--r-min", "0.1", "--r-max", "1")
    assert code == 3 and "halphen:" in out.err


def test_exact_csv_and_branch_error(capsys):
    code, out = run(capsys, "exact", "--format", "csv", "--samples", "3")
    assert code == 0
    assert out.out.splitlines()[0] == "r,w_plus,R,residual"
    code, out = run(capsys, "exact", "--branch", "plus")
    assert code == 3 and "DegenerateBranchError" in out.err


def test_dist_values(capsys):
    code, out = run(capsys, "dist", "--s", "1", "--q", "0", "--k2", "1/2", "--kmax", "12")
    data = json.loads(out.out)
    assert data["coefficients"][0]["value"] == "1"
    assert data["coefficients"][1]["value"] == "25/32"
    assert data["fourier"]["interior_exact_zero"] is True


def test_dist_csv_columns(capsys):
    code, out = run(capsys, "dist", "--s", "1", "--format", "csv", "--kmax", "3")
    lines = out.out.splitlines()
    assert lines[0] == "k,m,numerator,denominator,value"
    assert lines[2] == "1,0,25,32,0.78125"


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out = run(capsys, "roots", "--out", str(path))
    assert code == 0 and out.out == ""
    assert json.loads(path.read_text())["g2"]["value"] == "1"


def test_table_format(capsys):
    code, out = run(capsys, "roots", "--format", "table")
    assert out.out.splitlines()[0].split() == ["root", "value", "re", "im", "exact"]


def test_verify_single_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "structure", "--seed", "3")
    data = json.loads(out.out)
    assert code == 0 and data["summary"]["failed"] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "halphen", "roots", "--format", "csv"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("root,value,re,im,exact")


def test_log_env_goes_to_stderr():
    res = subprocess.run([sys.executable, "-m", "halphen", "roots"], capture_output=True, text=True,
                         env={"HALPHEN_LOG": "debug", "PATH": ""}, check=True)
    assert "arguments" in res.stderr
    json.loads(res.stdout)
