import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from boundent import statefile
from boundent.cli import main, parse_grid
from boundent.states import horodecki3x3, isotropic, random_separable, singlet, werner

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_horodecki_entry(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, stdout, _ = run(["generate", "horodecki3x3", "--a", "0.5", "--out", out], capsys)
    assert code == 0 and stdout == ""
    doc = json.loads(out.read_text())
    assert doc["matrix"][0][0] == [0.1, 0.0]
    assert doc["dims"] == [3, 3] and doc["version"] == 1


def test_generate_singlet_to_stdout(capsys):
    code, stdout, _ = run(["generate", "singlet"], capsys)
    doc = json.loads(stdout)
    assert code == 0
    assert len(doc["matrix"]) == 4
    assert doc["matrix"][1][2] == [-0.5, 0.0]


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "werner", "--f", "1.5"],
        ["generate", "werner"],
        ["generate", "horodecki3x3", "--a", "1"],
        ["generate", "nosuch"],
        ["generate", "random_separable", "--da", "2", "--db", "2", "--k", "0"],
        [],
    ],
)
def test_generate_parameter_errors(argv, capsys):
    code, stdout, err = run(argv, capsys)
    assert code == 2
    assert stdout == ""
    assert err


def test_generate_io_error(tmp_path, capsys):
    code, _, err = run(["generate", "singlet", "--out", tmp_path / "missing" / "s.json"], capsys)
    assert code == 3 and "I/O" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["singlet"],
        ["werner", "--f", "0.3"],
        ["isotropic", "--d", "3", "--f", "0.7"],
        ["horodecki3x3", "--a", "0.25"],
        ["random_separable", "--da", "2", "--db", "3", "--k", "4", "--seed", "8"],
        ["random_density", "--da", "3", "--db", "2", "--seed", "1"],
    ],
)
def test_round_trip_byte_stable(argv, capsys):
    code, text, _ = run(["generate", *argv], capsys)
    assert code == 0
    assert statefile.dumps(statefile.loads(text)) == text


def test_statefile_round_trip_values():
    s = random_separable(3, 3, 3, 2)
    t = statefile.loads(statefile.dumps(s))
    assert t.rho.tobytes() == s.rho.tobytes()
    assert t.dims == s.dims


@pytest.mark.parametrize(
    "text",
    [
        '{"version": 1, "dims": [2, 2], "matrix": [',
        '{"version": 2, "dims": [1, 1], "matrix": [[[1.0, 0.0]]]}',
        '{"version": true, "dims": [1, 1], "matrix": [[[1.0, 0.0]]]}',
        '{"version": 1, "dims": [1, 2], "matrix": [[[1.0, 0.0]]]}',
        '{"version": 1, "dims": [1, 1], "matrix": [[[1.0, 0.0], [0.0, 0.0]]]}',
        '{"version": 1, "dims": [1, 1], "matrix": [[[NaN, 0.0]]]}',
        '{"version": 1, "dims": [1, 1], "matrix": [[[1.0]]]}',
        '{"version": 1, "dims": [0, 1], "matrix": []}',
        '{"version": 1, "dims": [1, 2], "matrix": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}',
        "[1, 2]",
    ],
)
def test_statefile_rejects(text):
    with pytest.raises(ValueError):
        statefile.loads(text)


def test_classify_singlet(tmp_path, capsys):
    path = tmp_path / "s.json"
    statefile.write(path, singlet())
    code, stdout, _ = run(["classify", path], capsys)
    rep = json.loads(stdout)
    assert code == 0
    assert rep["label"] == "FreeEntangledNPT"
    assert abs(rep["negativity"] - 0.5) < 1e-12
    assert set(rep) >= {"label", "min_pt_eigenvalue", "negativity", "realignment_norm", "pt_spectrum"}


def test_classify_horodecki(tmp_path, capsys):
    path = tmp_path / "s.json"
    statefile.write(path, horodecki3x3(0.3))
    code, stdout, _ = run(["classify", path], capsys)
    assert code == 0
    assert json.loads(stdout)["min_pt_eigenvalue"] >= -1e-10


def test_classify_bad_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(statefile.dumps(singlet())[:50])
    code, stdout, err = run(["classify", bad], capsys)
    assert code == 2 and stdout == "" and "invalid" in err
    code, _, _ = run(["classify", tmp_path / "absent.json"], capsys)
    assert code == 3
    notpsd = tmp_path / "notpsd.json"
    notpsd.write_text('{"version": 1, "dims": [1, 2], "matrix": [[[1.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.5, 0.0]]]}')
    code, _, _ = run(["classify", notpsd], capsys)
    assert code == 2


@pytest.mark.parametrize("name", ["singlet", "werner_0.75", "horodecki3x3_0.5"])
def test_golden_generate_classify(name, tmp_path, capsys):
    family, _, param = name.partition("_")
    argv = ["generate", family]
    if family == "werner":
        argv += ["--f", param]
    elif family == "horodecki3x3":
        argv += ["--a", param]
    state_path = tmp_path / "state.json"
    for _ in range(2):
        assert main(argv + ["--out", str(state_path)]) == 0
        assert state_path.read_bytes() == (GOLDEN / f"{name}.state.json").read_bytes()
        capsys.readouterr()
        assert main(["classify", str(state_path)]) == 0
        out, _ = capsys.readouterr()
        assert out.encode() == (GOLDEN / f"{name}.report.json").read_bytes()


def test_distill_commands(tmp_path, capsys):
    w75 = tmp_path / "w75.json"
    statefile.write(w75, werner(0.75))
    code, stdout, _ = run(["distill", w75, "--target", "0.99", "--max-rounds", "15"], capsys)
    doc = json.loads(stdout)
    assert code == 0 and doc["success"]
    assert doc["trajectory"][-1]["fidelity"] >= 0.99

    w40 = tmp_path / "w40.json"
    statefile.write(w40, werner(0.4))
    code, stdout, err = run(["distill", w40, "--restarts", "4"], capsys)
    doc = json.loads(stdout)
    assert code == 1 and not doc["success"]
    assert doc["reason"] == "fidelity ≤ 1/2 after filtering"

    code, stdout, _ = run(["distill", w75, "--target", "0.999", "--max-rounds", "2"], capsys)
    assert code == 1 and len(json.loads(stdout)["trajectory"]) == 3

    iso = tmp_path / "iso.json"
    statefile.write(iso, isotropic(3, 0.9))
    code, stdout, _ = run(["distill", iso], capsys)
    assert code == 2 and stdout == ""
    code, _, _ = run(["distill", w75, "--target", "1.5"], capsys)
    assert code == 2


def test_search_commands(tmp_path, capsys):
    h = tmp_path / "h.json"
    statefile.write(h, horodecki3x3(0.5))
    code, stdout, _ = run(["search", h, "--copies", "2"], capsys)
    assert code == 0 and json.loads(stdout)["verdict"] == "CertifiedNotDistillable"

    w = tmp_path / "w.json"
    statefile.write(w, werner(0.9))
    code, stdout, _ = run(["search", w, "--copies", "1", "--restarts", "2", "--budget", "10"], capsys)
    doc = json.loads(stdout)
    assert code == 0 and doc["verdict"] == "DistillableWitnessFound"
    assert abs(doc["best_negativity"] - 0.4) < 1e-9
    assert len(doc["best_frames"]["a"]) == 2

    iso = tmp_path / "iso.json"
    statefile.write(iso, isotropic(3, 0.9))
    code, stdout, err = run(["search", iso, "--copies", "5"], capsys)
    assert code == 4 and stdout == "" and "cap" in err
    code, _, _ = run(["search", iso, "--copies", "0"], capsys)
    assert code == 2


def test_search_cli_deterministic(tmp_path, capsys):
    iso = tmp_path / "iso.json"
    statefile.write(iso, isotropic(3, 0.7))
    outs = [run(["search", iso, "--restarts", "2", "--budget", "100", "--seed", "5"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_scan_horodecki(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    code, _, _ = run(["scan-family", "horodecki3x3", "--grid", "0.01:0.99:0.01", "--out", out], capsys)
    assert code == 0
    text = out.read_text()
    assert "\r" not in text
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 99
    assert list(rows[0]) == ["param", "min_pt_eigenvalue", "negativity", "realignment_norm", "label"]
    assert float(rows[0]["param"]) == 0.01 and float(rows[-1]["param"]) == 0.99
    for r in rows:
        assert float(r["min_pt_eigenvalue"]) >= -1e-10
        assert float(r["negativity"]) <= 1e-9


def test_scan_werner(capsys):
    code, stdout, _ = run(["scan-family", "werner", "--grid", "0.0:1.0:0.05"], capsys)
    rows = list(csv.DictReader(io.StringIO(stdout)))
    assert code == 0 and len(rows) == 21
    for r in rows:
        f = float(r["param"])
        assert abs(float(r["negativity"]) - max(0.0, (2 * f - 1) / 2)) <= 1e-9


def test_scan_isotropic_and_errors(capsys):
    code, stdout, _ = run(["scan-family", "isotropic", "--d", "3", "--grid", "0.2,0.5"], capsys)
    assert code == 0 and len(stdout.splitlines()) == 3
    assert run(["scan-family", "isotropic", "--grid", "0.2"], capsys)[0] == 2
    assert run(["scan-family", "werner", "--grid", ""], capsys)[0] == 2
    assert run(["scan-family", "werner", "--grid", "0.5:0.1:0.1"], capsys)[0] == 2
    assert run(["scan-family", "werner", "--grid", "a:b:c"], capsys)[0] == 2
    assert run(["scan-family", "horodecki3x3", "--grid", "0:1:0.5"], capsys)[0] == 2


def test_parse_grid():
    assert parse_grid("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_grid("0.3, 0.6") == [0.3, 0.6]
    assert len(parse_grid("0.01:0.99:0.01")) == 99
    assert parse_grid(" ") == []


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "boundent", "generate", "werner", "--f", "0.75"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert np.isclose(json.loads(proc.stdout)["matrix"][1][1][0], 0.75 / 2 + 0.25 / 6)
