import json

import pytest

from fibinv.cli import run
from fibinv.triangles import Triangle


def test_gen_csv(capsys):
    assert run(["gen", "--family", "fibonomial", "--rows", "5", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6 and lines[-1] == "1,5,15,15,5,1"


def test_unknown_family_is_usage_error(capsys):
    assert run(["invert", "--family", "nosuch"]) == 2
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["gen"], ["frobnicate"], ["gen", "--family", "binomial", "--rows", "-3"]])
def test_bad_usage(argv, capsys):
    assert run(argv) == 2


def test_verify_eq1_json(capsys):
    assert run(["verify", "--suite", "eq1", "--rows", "64", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["identity"] == "eq1" and doc["maxRow"] == 64 and doc["pass"] is True


def test_verify_all(capsys):
    assert run(["verify", "--suite", "all", "--rows", "8"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 8


def test_invert_ingested_triangle(tmp_path, capsys):
    src = tmp_path / "t.json"
    src.write_text(Triangle("user", "integer", 0, [[2], [1, 3]]).to_json())
    assert run(["invert", "--input", str(src), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["domain"] == "rational"
    assert doc["rows"] == [["1/2"], ["-1/6", "1/3"]]


def test_invert_bad_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"rows\": 3}")
    assert run(["invert", "--input", str(bad)]) == 2
    assert run(["invert", "--input", str(tmp_path / "missing.json")]) == 2


def test_invert_to_file(tmp_path):
    out = tmp_path / "inv.tex"
    assert run(["invert", "--family", "catalan", "--rows", "3", "--format", "latex", "-o", str(out)]) == 0
    assert out.read_text().startswith(r"\begin{array}")


def test_weighted_inverse(capsys):
    assert run(["weighted-inverse", "--rows", "5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert {"k": 2, "n": 5, "value": "3"} in doc["values"]
    assert run(["weighted-inverse", "--rows", "0"]) == 2


def test_discover_offline_is_byte_identical(tmp_path, oeis_fixtures):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.md"
        argv = ["discover", "--family", "fibonomial", "--rows", "10", "--offline",
                "--cache-dir", str(oeis_fixtures), "-o", str(path)]
        assert run(argv) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert b"A000045" in outs[0]


def test_discover_network_failure_exit_3(tmp_path, monkeypatch, capsys):
    import requests

    def boom(*a, **k):
        raise requests.ConnectionError("no route")

    monkeypatch.setattr(requests.Session, "get", boom)
    monkeypatch.setattr("fibinv.oeis.MIN_INTERVAL", 0)
    code = run(["discover", "--family", "binomial", "--rows", "6", "--cache-dir", str(tmp_path), "--format", "json"])
    assert code == 3
    doc = json.loads(capsys.readouterr().out)
    assert doc["warnings"]


def test_json_outputs_round_trip(capsys):
    run(["gen", "--family", "gaussian", "--rows", "4", "--format", "json"])
    T = Triangle.from_json(capsys.readouterr().out)
    assert T.family == "gaussian" and T.max_row == 4
