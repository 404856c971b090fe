import json

import pytest

from fnhol.cli import (
    DocumentError,
    main,
    parse_document,
    run_command,
    serialize_document,
)


def genus2_doc(spin=True):
    doc = {
        "genus": 2,
        "pants": [0, 1],
        "curves": [
            {"id": i, "left": {"pants": 0, "k": i}, "right": {"pants": 1, "k": i}}
            for i in range(3)
        ],
        "fn": [
            {"curve": 0, "length": 2.0, "twist": 0.5},
            {"curve": 1, "length": 1.4, "twist": -0.3},
            {"curve": 2, "length": 3.0, "twist": 7.3},
        ],
    }
    if spin:
        doc["spin"] = {
            "eps": {"0": -1, "1": -1, "2": -1},
            "crossing_signs": {"1": -1},
        }
    return doc


def test_parse_minimal_document():
    doc = parse_document(json.dumps(genus2_doc(spin=False)))
    assert doc.spec.genus == 2
    assert doc.fn.twists[2] == 7.3
    assert doc.spin is None


def test_parse_spin_block():
    doc = parse_document(json.dumps(genus2_doc()))
    assert doc.spin["eps"] == {0: -1, 1: -1, 2: -1}
    assert doc.spin["crossing_signs"] == {0: 1, 1: -1, 2: 1}


def test_parse_reports_unpaired_boundary():
    raw = genus2_doc(spin=False)
    raw["curves"][2]["right"] = {"pants": 1, "k": 1}
    with pytest.raises(DocumentError) as err:
        parse_document(json.dumps(raw))
    assert "(1, 2)" in str(err.value)


def test_parse_rejects_out_of_range_length():
    raw = genus2_doc(spin=False)
    raw["fn"][0]["length"] = 0.0
    with pytest.raises(DocumentError) as err:
        parse_document(json.dumps(raw))
    assert "length" in str(err.value)
    raw["fn"][0]["length"] = 100.0
    with pytest.raises(DocumentError):
        parse_document(json.dumps(raw))


def test_parse_rejects_bad_json_with_position():
    with pytest.raises(DocumentError) as err:
        parse_document("{\n  \"genus\": 2,\n}")
    assert "line" in str(err.value)


def test_serialize_roundtrip_is_byte_identical():
    text = serialize_document(parse_document(json.dumps(genus2_doc())))
    again = serialize_document(parse_document(text))
    assert text == again


def test_run_commands_deterministic():
    doc = parse_document(json.dumps(genus2_doc()))
    for command, kwargs in (
        ("verify", {}),
        ("fn", {}),
        ("wp", {}),
        ("spin", {}),
        ("spin", {"list_spin": True}),
        ("holonomy", {"word": "p0.b00 p0.b01"}),
    ):
        r1, c1 = run_command(doc, command, **kwargs)
        r2, c2 = run_command(doc, command, **kwargs)
        assert r1["lines"] == r2["lines"]
        assert c1 == c2 == 0


def test_verify_fails_under_absurd_tolerance():
    doc = parse_document(json.dumps(genus2_doc()))
    report, code = run_command(doc, "verify", tolerance=1e-30)
    assert code == 1
    assert report["lines"][-1] == "FAIL"


def test_wp_report_matches_block_form():
    doc = parse_document(json.dumps(genus2_doc()))
    report, code = run_command(doc, "wp")
    assert code == 0
    assert report["max_deviation"] <= 1e-8
    matrix = report["matrix"]
    assert abs(matrix[3][0] - 1.0) <= 1e-8
    assert abs(matrix[0][3] + 1.0) <= 1e-8


def test_spin_list_counts():
    doc = parse_document(json.dumps(genus2_doc()))
    report, code = run_command(doc, "spin", list_spin=True)
    assert code == 0
    assert len(report["eps_assignments"]) == 4
    assert len(report["crossing_classes"]) == 4


def test_holonomy_requires_word():
    doc = parse_document(json.dumps(genus2_doc()))
    with pytest.raises(DocumentError):
        run_command(doc, "holonomy")


def test_main_exit_codes(tmp_path, capsys):
    good = tmp_path / "ok.json"
    good.write_text(json.dumps(genus2_doc()))
    assert main(["verify", "--input", str(good)]) == 0
    out1 = capsys.readouterr().out
    assert main(["verify", "--input", str(good)]) == 0
    assert capsys.readouterr().out == out1  # byte-identical reports

    assert main(["verify", "--input", str(good), "--tolerance", "1e-30"]) == 1
    capsys.readouterr()

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", "--input", str(bad)]) == 2
    capsys.readouterr()

    assert main(["verify", "--input", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()

    assert main(["holonomy", "--input", str(good)]) == 2  # no --word
    capsys.readouterr()

    assert main(["holonomy", "--input", str(good), "--word", "p0.nope"]) == 2
    capsys.readouterr()


def test_main_json_format(tmp_path, capsys):
    good = tmp_path / "ok.json"
    good.write_text(json.dumps(genus2_doc()))
    assert main(["wp", "--input", str(good), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["command"] == "wp"
    assert payload["ok"] is True


def test_spin_command_without_block(tmp_path, capsys):
    doc = tmp_path / "nospin.json"
    doc.write_text(json.dumps(genus2_doc(spin=False)))
    assert main(["spin", "--input", str(doc)]) == 2
    assert main(["spin", "--input", str(doc), "--list"]) == 0
    capsys.readouterr()
