import csv
import io
import json
import subprocess
import sys

import pytest

from secantx.cli import main, parse_methods, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_table(capsys):
    code, out, _ = run(capsys, "solve", "--function", "x^2 - 2", "--x0", "1,2", "--k", "2", "--alpha", "1.41421356237309504880168872420969807856967187537694807")
    assert code == 0
    assert "termination: ResidualZero" in out or "termination: Converged" in out
    assert "1.4142135623730950E+00" in out


def test_solve_corpus_defaults_json(capsys):
    code, out, _ = run(capsys, "solve", "--function", "@x-cos", "--format", "json", "--digits", "20")
    data = json.loads(out)
    assert code == 0
    assert data["config"]["k"] == 2
    assert data["records"][-1]["x"] == "7.3908513321516064166E-01"
    assert data["records"][0]["sigma"] is None


def test_formats_share_numbers(capsys):
    argv = ["solve", "--function", "@sqrt2", "--digits", "12"]
    _, table, _ = run(capsys, *argv)
    _, csv_out, _ = run(capsys, *argv, "--format", "csv")
    _, js, _ = run(capsys, *argv, "--format", "json")
    rows = list(csv.DictReader(io.StringIO(csv_out)))
    records = json.loads(js)["records"]
    assert [r["x_n"] for r in rows] == [r["x"] for r in records]
    for r in records:
        assert r["x"] in table


def test_solve_max_iterations_exit_code(capsys):
    code, _, _ = run(capsys, "solve", "--function", "x - cos(x)", "--x0", "0,1", "--max-iter", "2")
    assert code == 2


def test_solve_breakdown_exit_code(capsys):
    code, out, _ = run(capsys, "solve", "--function", "ln(x)", "--x0", "5,4", "--k", "1")
    assert code == 3
    assert "NaNEncountered" in out


@pytest.mark.parametrize("argv", [
    ["solve", "--function", "x +", "--x0", "1,2"],
    ["solve", "--function", "x^2-2", "--x0", "1,abc"],
    ["solve", "--function", "x^2-2"],
    ["solve", "--function", "@missing"],
    ["solve", "--function", "x^2-2", "--x0", "1,2,3", "--k", "1"],
    ["solve", "--function", "x^2-2", "--x0", "1,2", "--precision", "1"],
    ["solve", "--x0", "1,2"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 1


def test_syntax_error_shows_caret(capsys):
    code, _, err = run(capsys, "solve", "--function", "x + * 2", "--x0", "1,2")
    assert code == 1
    assert "^" in err and "offset 4" in err


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("SECANTX_PRECISION_BITS", "64")
    _, out, _ = run(capsys, "solve", "--function", "@sqrt2", "--format", "json")
    assert json.loads(out)["config"]["precision"] == 64
    _, out, _ = run(capsys, "solve", "--function", "@sqrt2", "--format", "json", "--precision", "100")
    assert json.loads(out)["config"]["precision"] == 100
    monkeypatch.setenv("SECANTX_PRECISION_BITS", "lots")
    code, _, _ = run(capsys, "solve", "--function", "@sqrt2")
    assert code == 1


def test_repro_table2(capsys):
    code, out, _ = run(capsys, "repro-table2")
    assert code == 0
    assert "2.00000000000000000000000001893448134E+00" in out
    assert "3.08196721311475409836065573770491792E+00" in out
    assert "check last sigma_n vs L" in out and "PASS" in out


def test_repro_table2_json(capsys):
    code, out, _ = run(capsys, "repro-table2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["config"]["precision"] == 113
    assert len(data["records"]) == 10
    assert [c["passed"] for c in data["checks"]] == [True, False]


def test_order_table(capsys):
    code, out, _ = run(capsys, "order-table", "--k-max", "4", "--digits", "6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["s_k"] for r in rows] == ["1.61803E+00", "1.83929E+00", "1.92756E+00", "1.96595E+00"]
    assert rows[0]["lower_bound"] == "" and rows[1]["bracketed"] == "yes"


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--function", "@cube-8", "--methods", "gsec:2,newton,secant",
                       "--x0", "5,4", "--format", "json")
    data = json.loads(out)
    assert code == 0
    first = data["rows"][0]
    assert (first["gsec:2:n"], first["newton:n"], first["secant:n"]) == ("2", "1", "2")
    assert first["evaluations"] == "2"


def test_compare_newton_without_derivative(capsys):
    code, _, err = run(capsys, "compare", "--function", "x^2 - 2", "--x0", "1,2", "--methods", "newton")
    assert code == 3 and "--fprime" in err
    code, _, _ = run(capsys, "compare", "--function", "x^2 - 2", "--x0", "1,2", "--methods", "newton",
                     "--fprime", "2*x")
    assert code == 0


def test_parse_methods():
    assert parse_methods("gsec:3, newton,secant") == [("gsec", 3), ("newton", 1), ("secant", 1)]
    for bad in ("gsec", "gsec:0", "halley", "newton:2", ""):
        with pytest.raises(UsageError):
            parse_methods(bad)


def test_corpus_listing(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and "cube-8" in out and "wallis" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "secantx", "order-table", "--k-max", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "1.8392867552141611" in proc.stdout
