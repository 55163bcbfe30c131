import json
import subprocess
import sys

import pytest

from kfusion.cli import main
from kfusion.fusion import FusionTable, build_table


def run(*argv):
    return subprocess.run([sys.executable, "-m", "kfusion", *argv], capture_output=True, text=True)


def test_fuse_example(capsys):
    assert main(["fuse", "--k", "4", "U:2:v1", "U:2:v1"]) == 0
    out = capsys.readouterr()
    assert out.out.strip() == "U:0:v1 + U:2:v4 + U:4:v1"
    assert out.err.strip() == "U:2:v1 x U:2:v1"


def test_fuse_echoes_canonical_inputs(capsys):
    assert main(["fuse", "--k", "5", "T1:4:+", "U:0:v1"]) == 0
    out = capsys.readouterr()
    assert out.err.strip() == "T1:1:+ x U:0:v1"
    assert out.out.strip() == "T1:1:+"


def test_fuse_json(capsys):
    assert main(["fuse", "--k", "6", "U:3:+", "T1:1:+", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["outcome"] == [["T1:2:+", 2], ["T1:2:-", 2]]


def test_modules_count(capsys):
    assert main(["modules", "--k", "3"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 22


def test_qdim_output(capsys):
    assert main(["qdim", "--k", "4", "U:2:v1"]) == 0
    text = capsys.readouterr().out
    assert "conductor 24" in text and "approx 2.000000000000" in text
    assert main(["qdim", "--k", "5", "T3:1:-", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["qdim"]["approx"] == pytest.approx(3.6038755, abs=1e-7)


def test_verify_exit_zero(capsys):
    assert main(["verify", "--k", "6", "--jobs", "2"]) == 0
    assert "ALL CHECKS PASSED" in capsys.readouterr().out


def test_verify_json_records_seed(capsys):
    assert main(["verify", "--k", "3", "--seed", "17", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 17


def test_exit_codes(capsys):
    assert main(["modules", "--k", "2"]) == 2
    assert "k >= 3" in capsys.readouterr().err
    assert main(["fuse", "--k", "4", "U:2:v9", "U:0:v1"]) == 2
    assert "U:2:v9" in capsys.readouterr().err
    assert main(["fuse", "--k", "4", "T1:2:+", "U:0:v1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["fuse", "--k", "4"])
    assert exc.value.code == 2


def test_build_failure_exit_code(monkeypatch, capsys):
    from kfusion import cli, fusion
    from kfusion.labels import unit

    def broken(k, jobs=1, **kw):
        raise fusion.IncompleteError([(unit(), unit(), unit())])
    monkeypatch.setattr(cli, "build_table", broken)
    assert main(["table", "--k", "4"]) == 3
    monkeypatch.setattr("kfusion.verify.build_table", broken)
    assert main(["verify", "--k", "4"]) == 3


def test_verify_failure_exit_code(monkeypatch, capsys):
    from kfusion import verify
    table = build_table(4)
    bad = table.with_entry((0, 0, 0), 2)
    monkeypatch.setattr(verify, "build_table", lambda k, jobs=1: bad)
    assert main(["verify", "--k", "4"]) == 1
    assert "VERIFICATION FAILED" in capsys.readouterr().out


def test_table_json_byte_identical_and_roundtrip():
    a, b = run("table", "--k", "8", "--format", "json"), run("table", "--k", "8", "--format", "json", "--jobs", "3")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    assert FusionTable.from_json(a.stdout) == build_table(8)


def test_table_csv_header(capsys):
    assert main(["table", "--k", "3", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "A,B,outcome"
    assert "T1:0:+,T2:0:+,T3:0:+ + T3:0:-" in lines


def test_out_path_and_env_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("KFUSION_OUT_DIR", str(tmp_path))
    assert main(["modules", "--k", "4", "--out", "mods.txt"]) == 0
    assert capsys.readouterr().out == ""
    assert len((tmp_path / "mods.txt").read_text().splitlines()) == 38
    absolute = tmp_path / "sub.json"
    assert main(["table", "--k", "3", "--format", "json", "--out", str(absolute)]) == 0
    assert json.loads(absolute.read_text())["k"] == 3


def test_console_entry_point():
    res = run("modules", "--k", "5")
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 33
