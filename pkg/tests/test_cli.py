import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from cylproj.cli import main, rational_from_json, rational_to_json
from cylproj.model import parse_model
from test_model import DEMO


@pytest.fixture
def model(tmp_path):
    path = tmp_path / "demo.cyl"
    path.write_text(DEMO + "set stair = rect{ y:[0,1), z:[0,1/4) } | rect{ y:[0,1/2), z:[1/4,1) }\n"
                    "set bar = rect{ y:{1/3}, z:[0,1/2) }\n")
    return str(path)


@pytest.fixture
def run(model, capsys):
    def go(*args):
        code = main(["-m", model, *args])
        out, err = capsys.readouterr()
        return code, out, err
    return go


def test_measure(run):
    assert run("measure", "checkerboard") == (0, "1/2 (0.5)\n", "")
    assert run("measure", "d1")[1] == "1/2 (0.5)\n"


def test_project(run):
    assert run("project", "e1", "--dim", "y", "--strong")[1].strip() == "∅"
    assert run("project", "e1", "--dim", "y")[1].strip() == "unit"
    assert run("project", "stair", "--dim", "y", "--strong", "--dual")[1].strip() \
        == "rect{ z:[0,1/4) }"
    assert run("project", "diag", "--strong")[1].strip() == "strong_projection_measure=0 (0)"


def test_converge_csv_e1(run):
    code, out, _ = run("converge", "e1", "--dim", "y", "--max-n", "3", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[:4] == ["n,union,intersection", "1,0,0", "2,0,0", "3,0,0"]
    assert lines[4] == "sup_limit=0, lambda_C_y=1, continuity=false"


def test_formats_carry_identical_values(run):
    args = ("converge", "checkerboard", "--dim", "y", "--max-n", "4")
    rows_csv = list(csv.reader(io.StringIO(run(*args, "--format", "csv")[1])))[1:5]
    data = json.loads(run(*args, "--format", "json")[1])
    table = run(*args, "--format", "table")[1].splitlines()[2:6]
    for (n, u, i), row, trow in zip(rows_csv, data["rows"], table):
        assert int(n) == row["n"]
        assert F(u) == rational_from_json(row["union"]) == F(trow.split()[1])
        assert F(i) == rational_from_json(row["intersection"]) == F(trow.split()[2])
    assert rational_from_json(data["sup_limit"]) == 1
    assert [rational_from_json(r["union"]) for r in data["rows"]] \
        == [F(1, 2), F(3, 4), F(7, 8), F(15, 16)]


def test_json_rationals_round_trip():
    for x in (F(0), F(1), F(-3, 7), F(22, 7)):
        obj = json.loads(json.dumps(rational_to_json(x)))
        assert set(obj) == {"num", "den", "decimal"}
        assert rational_from_json(obj) == x


def test_check_continuity_strict(run):
    code, out, _ = run("check-continuity", "e1", "--dim", "y", "--strict", "--format", "json")
    data = json.loads(out)
    assert code == 1 and data["verdict"] == "fails"
    # the witness is reproducible from its printed form
    witness = parse_model(f"set w = {data['witness']}").sets["w"]
    assert witness == parse_model(DEMO).sets["e1"]
    assert run("check-continuity", "checkerboard", "--dim", "y", "--strict")[0] == 0


def test_audits(run):
    code, out, _ = run("audit", "bar", "--thm4", "--dim", "y", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "holds"
    c = data["conclusion"]
    assert c["sup_property"] is False and c["inf_property"] is True
    assert rational_from_json(c["projection_measure"]) == F(1, 2)
    assert rational_from_json(c["sup_limit"]) == 0
    out = run("audit", "stair", "--lemma1", "--dim", "y", "--format", "csv")[1]
    assert "conclusion.inf_limit,1/4" in out.splitlines()


def test_oracle_diff(run):
    code, out, _ = run("oracle-diff", "checkerboard", "--dim", "y", "--max-n", "2",
                       "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert all(r["match"] == "true" for r in rows)
    assert {(r["n"], r["mode"]): r["closed_form"] for r in rows}[("2", "union")] == "3/4"
    rows = list(csv.DictReader(io.StringIO(
        run("oracle-diff", "d1", "--dim", "y", "--max-n", "2", "--format", "csv")[1])))
    assert all(r["match"] == "true" for r in rows)


@pytest.mark.parametrize("args, fragment", [
    (("converge", "nope", "--dim", "y"), "no set"),
    (("converge", "e1", "--dim", "q"), "unknown dimension"),
    (("measure", "diag"), "raw fiber profile"),
])
def test_usage_errors(run, args, fragment):
    code, out, err = run(*args)
    assert code == 2 and out == "" and fragment in err


def test_parse_error_location(tmp_path, capsys):
    bad = tmp_path / "bad.cyl"
    bad.write_text("set a = unit\nset a = empty\n")
    assert main(["-m", str(bad), "measure", "a"]) == 2
    assert capsys.readouterr().err.strip() == f"{bad}:2:5: DuplicateName: 'a' is already defined"


def test_module_entry_point(model):
    proc = subprocess.run([sys.executable, "-m", "cylproj", "-m", model, "measure", "e1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "0 (0)\n"


def test_printed_reading_column_for_tail_free_base(tmp_path, capsys):
    path = tmp_path / "f.cyl"
    path.write_text("base f probs=[1/2, 1/2] tail=0\ndset p = prod(y:{0}, z:{0})\n")
    assert main(["-m", str(path), "converge", "p", "--dim", "y", "--max-n", "2",
                 "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:3] == ["n,union,intersection,printed_reading", "1,1/4,1/4,1/4",
                         "2,3/8,1/8,1/16"]
