from __future__ import annotations

import json

import pytest

from orthoradial.cli import RunReport, main

from conftest import DATA


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check(capsys):
    assert run(capsys, "check", DATA / "ring4.json")[0] == 0
    code, _, err = run(capsys, "check", DATA / "ring4_bad_angle.json")
    assert code == 1 and "vertex v2" in err
    code, _, err = run(capsys, "check", DATA / "ring4_no_reference.json")
    assert code == 2 and "ParseError" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "nope.json")[0] == 2


def test_validate(capsys):
    code, _, err = run(capsys, "validate", "--witness", DATA / "spiral4.json")
    assert code == 1 and "decreasing" in err and "labels: 0 1 1 0" in err
    code, out, _ = run(capsys, "validate", "--json", DATA / "spiral4_mirror.json")
    doc = json.loads(out)
    assert code == 1 and doc["details"]["kind"] == "increasing"
    assert run(capsys, "validate", DATA / "ring4.json")[0] == 0


def test_validate_conditions_violated(capsys):
    assert run(capsys, "validate", DATA / "ring4_bad_angle.json")[0] == 2


def test_report_roundtrip(capsys):
    code, out, _ = run(capsys, "validate", "--json", "--witness", DATA / "spiral4.json")
    doc = json.loads(out)
    again = RunReport.from_json(out)
    assert again.to_dict() == doc
    assert doc["witness"]["labels"] == [0, 1, 1, 0]


def test_rectangulate_pipeline(capsys, tmp_path):
    out = tmp_path / "g2star.json"
    code, text, _ = run(capsys, "rectangulate", "--mode", "binary", DATA / "g2.json", "--out", out)
    assert code == 0
    assert (tmp_path / "g2star.map.json").exists()
    assert run(capsys, "check", out)[0] == 0
    assert run(capsys, "validate", out)[0] == 0


def test_rectangulate_all_modes_agree(capsys):
    codes = set()
    for mode in ("naive", "binary", "two_phase"):
        code, out, _ = run(capsys, "rectangulate", "--json", "--mode", mode, DATA / "g2.json")
        codes.add((code, json.loads(out)["status"]))
    assert codes == {(0, "ok")}


def test_rectangulate_invalid(capsys):
    assert run(capsys, "rectangulate", DATA / "spiral4.json")[0] == 1


def test_draw(capsys, tmp_path):
    coords = tmp_path / "ring.json"
    assert run(capsys, "draw", DATA / "ring4.json", "--coords", coords)[0] == 0
    doc = json.loads(coords.read_text())
    assert doc["width"] == 4
    assert {r for _, r in doc["vertices"].values()} == {1}
    svg = tmp_path / "g2.svg"
    assert run(capsys, "draw", DATA / "g2.json", "--svg", svg)[0] == 0
    assert svg.read_text() == (DATA / "g2.svg").read_text()
    assert run(capsys, "draw", DATA / "spiral4.json")[0] == 1


def test_gen(capsys, tmp_path):
    assert run(capsys, "gen", 8, 3, "valid", "--out", tmp_path)[0] == 0
    path = tmp_path / "n8_s3_valid.json"
    first = path.read_bytes()
    assert run(capsys, "validate", path)[0] == 0
    assert run(capsys, "gen", 8, 3, "valid", "--out", tmp_path)[0] == 0
    assert path.read_bytes() == first
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["n8_s3_valid.json"]["oracle"] == "valid"
    _, a, _ = run(capsys, "gen", 8, 3, "valid")
    _, b, _ = run(capsys, "gen", 8, 3, "valid")
    assert a == b == first.decode()


def test_gen_too_small(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "2", "1", "valid"])
    assert exc.value.code == 2
