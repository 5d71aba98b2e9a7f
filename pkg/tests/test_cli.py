import json
import subprocess
import sys

import pytest

from coxres.cli import GROUP_SCHEMA, REPORT_SCHEMA, main, parse_group, serialize_group
from coxres.fixtures import FIXTURES, fixture_names, load_fixture


def _run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def _json(capsys, *argv):
    status, out, err = _run(capsys, *argv, "--format", "json")
    return status, json.loads(out) if out else None, err


@pytest.mark.parametrize("name", fixture_names())
def test_group_files_round_trip(name):
    G = load_fixture(name)
    doc = serialize_group(G.generators)
    parsed = parse_group(json.loads(json.dumps(doc)))
    again = serialize_group(parsed["generators"], parsed["field_order"])
    assert again == doc
    assert parse_group(again)["generators"] == parsed["generators"]


def test_cox_quotient_q8(capsys):
    status, doc, _ = _json(capsys, "cox-quotient", "--fixture", "q8")
    assert status == 0
    assert doc["schema"] == REPORT_SCHEMA
    res = doc["result"]
    assert res["class_group"] == "Z/2 + Z/2"
    assert len(res["relations"]) == 1 and len(res["variables"]) == 3


def test_reports_are_deterministic(capsys, tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    _run(capsys, "resolve", "--preset", "q8-2d-resolution", "--out", str(a))
    _run(capsys, "resolve", "--preset", "q8-2d-resolution", "--out", str(b))
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
    assert (a / "summary.txt").exists()


def test_resolve_brute_case1_is_crepant(capsys, tmp_path):
    status, doc, _ = _json(capsys, "resolve-brute", "--preset", "case1-crepant", "--out", str(tmp_path))
    assert status == 0
    assert doc["result"]["crepancy"]["verdict"] == "Crepant"
    assert doc["options"]["preset"] == "case1-crepant"
    # the written report can be checked again on its own
    status, doc, _ = _json(capsys, "smooth-check", str(tmp_path / "report.json"))
    assert status == 0 and doc["result"]["smooth"] == "Yes"


def test_vectors_and_p0_files(capsys, tmp_path):
    (tmp_path / "p0.json").write_text(json.dumps({"p0": [[1, 1, 1], [0, 2, 0], [0, 0, 2]]}))
    (tmp_path / "v.json").write_text(json.dumps([[3, 2, 2], [2, 1, 2], [2, 2, 1], [2, 1, 1]]))
    status, doc, _ = _json(
        capsys, "resolve-brute", "--fixture", "q8", "--p0", str(tmp_path / "p0.json"), "--vectors", str(tmp_path / "v.json")
    )
    assert status == 0
    assert doc["result"]["class_group"] == "Z^4"


def test_group_file_input(capsys, tmp_path):
    doc = serialize_group(load_fixture("q8").generators)
    path = tmp_path / "q8.json"
    path.write_text(json.dumps(doc))
    status, out, _ = _run(capsys, "age-table", str(path))
    assert status == 0 and "junior classes: 4" in out


def test_non_square_matrix_is_rejected(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"schema": GROUP_SCHEMA, "field_order": 1, "generators": [[[1, 0, 0], [0, 1, 0]]]}))
    status, out, err = _run(capsys, "cox-quotient", str(path))
    assert status == 1
    assert "not a square" in err and not out


def test_wrong_derived_generators_are_rejected(capsys, tmp_path):
    doc = serialize_group(load_fixture("q8").generators)
    doc["derived_generators"] = [[["1", "0"], ["0", "1"]]]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(doc))
    status, _, err = _run(capsys, "cox-quotient", str(path))
    assert status == 1 and "derived" in err


def test_infinite_group_message(capsys, tmp_path):
    path = tmp_path / "inf.json"
    path.write_text(json.dumps({"schema": GROUP_SCHEMA, "field_order": 1, "generators": [[[1, 1], [0, 1]]]}))
    status, _, err = _run(capsys, "cox-quotient", str(path))
    assert status == 1 and "did not close" in err


def test_budget_exhaustion_message(capsys):
    status, _, err = _run(capsys, "cox-quotient", "--fixture", "case7", "--budget", "2")
    assert status == 1 and "exceeded" in err


def test_gale_and_finite_gale(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"P": [[1, 0, 1], [0, 1, 1]]}))
    status, doc, _ = _json(capsys, "gale", str(path))
    assert status == 0 and doc["result"]["class_group"] == "Z"
    status, doc, _ = _json(capsys, "finite-gale", "--fixture", "q8")
    assert doc["result"]["P0"] == [[1, 1, 1], [0, 2, 0], [0, 0, 2]]


def test_trop_and_f_faces(capsys, tmp_path):
    path = tmp_path / "ideal.json"
    path.write_text(json.dumps({"nvars": 3, "relations": ["T1 + T2 + T3"]}))
    status, doc, _ = _json(capsys, "trop", str(path), "--convention", "min")
    assert status == 0 and len(doc["result"]["fan"]["cones"]) == 3
    status, doc, _ = _json(capsys, "f-faces", "--fixture", "q8")
    assert [1, 2, 3] in doc["result"]["f_faces"]


def test_missing_input_is_an_error(capsys):
    status, _, err = _run(capsys, "cox-quotient")
    assert status == 1 and "--fixture" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coxres", "age-table", "--fixture", "case1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "junior classes: 2" in proc.stdout


def test_fixture_table_is_complete():
    assert {"q8-2d", "s3-4d", "d8-4d"} <= set(FIXTURES)
    assert sum(1 for k in FIXTURES if k.startswith("case")) == 10
