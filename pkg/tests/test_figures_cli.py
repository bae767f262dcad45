import csv
import io
import json

import pytest

from apotent.cli import main
from apotent.figures import COLUMNS, FIGURES, figure_jobs, figure_rows, resolve_a, rows_to_json
from apotent.mpnum import PRECISION_ENV


@pytest.fixture(autouse=True)
def _isolate_env(monkeypatch):
    # main() exports --precision for worker processes
    monkeypatch.setenv(PRECISION_ENV, "256")


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_charpoly_ok(capsys):
    code, out = run(capsys, "charpoly", "--n", "64", "--a", "-2/7")
    assert code == 0
    assert "exact" in out


def test_charpoly_complex(capsys):
    code, out = run(capsys, "charpoly", "--n", "10", "--a", "0.3,-0.4", "--format", "json")
    assert code == 0
    json.loads(out)


def test_hankel_json(capsys):
    code, out = run(capsys, "hankel", "--n", "6", "--a", "1")
    assert code == 0
    assert json.loads(out)["all_equal"] is True


@pytest.mark.parametrize("cmd", ["matrix", "moments", "ortho"])
@pytest.mark.parametrize("fmt", ["text", "csv", "json"])
def test_formats(capsys, cmd, fmt):
    code, out = run(capsys, cmd, "--n", "5", "--a", "3/2", "--format", fmt)
    assert code == 0 and out.strip()
    if fmt == "json":
        json.loads(out)
    if fmt == "csv":
        assert len(list(csv.reader(io.StringIO(out)))) > 1


def test_roots_both(capsys):
    code, out = run(capsys, "roots", "--n", "20", "--k", "8", "--a", "-1/20", "--solver", "both")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:4] == ["k", "n", "a_re", "a_im"]


def test_bessel(capsys):
    code, out = run(capsys, "bessel", "--k", "2:4", "--n", "50,100")
    assert code == 0 and "50" in out


@pytest.mark.parametrize("argv", [
    ["charpoly", "--n", "0", "--a", "1"],
    ["charpoly", "--n", "3", "--a", "0"],
    ["charpoly", "--n", "3", "--a", "abc"],
    ["roots", "--n", "3", "--a", "1"],
    ["figure", "13"],
    ["moments", "--n", "3", "--a", "1", "--precision", "8"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.txt"
    assert main(["matrix", "--n", "4", "--a", "1", "-o", str(path)]) == 0
    assert path.read_text().strip()


def test_job_counts():
    expected = {1: 102, 2: 102, 3: 30, 4: 10, 5: 9, 6: 34, 7: 51, 8: 101,
                9: 136, 10: 136, 11: 136, 12: 136}
    assert {f: len(figure_jobs(f)) for f in FIGURES} == expected
    assert all(len(figure_jobs(f, reduced=True)) <= 4 for f in FIGURES)


def test_phi_steps():
    jobs = figure_jobs(5, phi_steps=4)
    assert len(jobs) == 5
    a0 = resolve_a(jobs[0].a)
    assert abs(abs(a0) - 1) < 1e-30


def test_json_schema():
    rows = figure_rows(3, 128, jobs=1, reduced=True)
    doc = json.loads(rows_to_json(rows, 3, 128))
    assert doc["figure"] == 3 and doc["precision_bits"] == 128
    assert tuple(doc["columns"]) == COLUMNS
    assert all(tuple(r) == COLUMNS for r in doc["rows"])
    bessel = [r for r in doc["rows"] if r["n"] is None]
    assert bessel and all(float(r["a_re"]) == float(r["a_im"]) == 0 for r in bessel)
    assert all(isinstance(r["k"], int) for r in doc["rows"])
    assert all(isinstance(r[c], str) for r in doc["rows"] for c in COLUMNS[2:])
