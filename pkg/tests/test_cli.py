import json

import pytest

from cli.commands import INPUT_ERROR, NEGATIVE, OK, UNKNOWN, main


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_fixtures_list(capsys):
    assert main(["fixtures"]) == OK
    out = capsys.readouterr().out
    assert "figure8" in out
    assert "dunce_hat" in out


def test_fixtures_emit_prints_graph_json(capsys):
    assert main(["fixtures", "emit", "figure8"]) == OK
    document = _json(capsys)
    assert len(document["edges"]) == 8
    assert "paths" in document["metadata"]["covers"]


def test_fixtures_emit_needs_a_name(capsys):
    assert main(["fixtures", "emit"]) == INPUT_ERROR


def test_contractible_exit_codes(capsys):
    assert main(["contractible", "fixture:wheel_5"]) == OK
    capsys.readouterr()
    assert main(["--json", "contractible", "fixture:dunce_hat"]) == NEGATIVE
    report = _json(capsys)
    assert report["contractible"] is False
    assert report["schema_version"] == 1
    assert report["input"]["order"] == 16


def test_homotopic_cycles(capsys):
    assert main(["--json", "homotopic", "fixture:cycle_4", "fixture:cycle_5"]) == OK
    report = _json(capsys)
    assert report["status"] == "equivalent"
    assert report["end_isomorphic"] is True
    assert report["certificate"]["moves"]


def test_homotopic_distinct_and_unknown(capsys):
    assert main(["homotopic", "fixture:cycle_4", "fixture:complete_3"]) == NEGATIVE
    capsys.readouterr()
    assert main(["--budget-states", "2", "homotopic", "fixture:cycle_4", "fixture:cycle_6"]) == UNKNOWN


def test_cover_verify(capsys):
    assert main(["cover-verify", "fixture:figure8", "--cover", "metadata:paths"]) == OK
    capsys.readouterr()
    assert main(["--json", "cover-verify", "fixture:torus16", "--cover", "metadata:published"]) == NEGATIVE
    assert _json(capsys)["error"] == "CoverageError"
    code = main(["cover-verify", "fixture:torus16", "--cover", "metadata:published", "--coverage", "vertices"])
    assert code == OK
    capsys.readouterr()
    assert main(["--json", "cover-verify", "fixture:torus16", "--cover", "metadata:in_itself"]) == OK
    report = _json(capsys)["cover"]
    assert report["bound"] == 3
    assert report["certifies"] == ["tcat", "gcat"]


def test_cover_verify_unknown_metadata(capsys):
    assert main(["--json", "cover-verify", "fixture:figure8", "--cover", "metadata:nothing"]) == INPUT_ERROR
    report = _json(capsys)
    assert report["position"] == "--cover"


def test_ph_check_and_morse_check(capsys):
    assert main(["--json", "ph-check", "fixture:icosahedron", "--ordering", "metadata:height"]) == OK
    report = _json(capsys)
    assert report["index_sum"] == report["euler_characteristic"] == 2
    assert main(["--json", "morse-check", "fixture:figure8", "--ordering", "metadata:centre_max"]) == NEGATIVE
    assert _json(capsys)["morse"] is False


def test_ph_check_with_random_ordering(capsys):
    assert main(["--json", "ph-check", "fixture:cycle_6", "--ordering", "random:4", "--category-index"]) == OK
    report = _json(capsys)
    assert sorted(report["ordering"]) == [1, 2, 3, 4, 5, 6]
    assert all("category_index" in entry for entry in report["indices"])


def test_certificate_verify(tmp_path, capsys):
    good = tmp_path / "theta.json"
    good.write_text(json.dumps([
        {"kind": "add_vertex", "vertex": 8, "over": [7, 1, 2]},
        {"kind": "remove_edge", "u": 1, "v": 7},
        {"kind": "remove_edge", "u": 1, "v": 8},
    ]))
    assert main(["--json", "certificate-verify", str(good), "--graph", "fixture:figure8"]) == OK
    assert _json(capsys)["steps"] == 3

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"kind": "remove_edge", "u": 1, "v": 2}]))
    assert main(["--json", "certificate-verify", str(bad), "--graph", "fixture:figure8"]) == NEGATIVE
    report = _json(capsys)
    assert report["valid"] is False
    assert report["failed_step"] == 1


def test_bare_move_list_needs_a_graph(tmp_path, capsys):
    path = tmp_path / "moves.json"
    path.write_text("[]")
    assert main(["certificate-verify", str(path)]) == INPUT_ERROR
    assert "[Error]" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["--json", "contractible", "fixture:no_such_graph"],
        ["--json", "contractible", "/nonexistent/graph.txt"],
        ["--json", "curvature", "fixture:cycle_5", "--which", "betti:x"],
        ["--json", "curvature", "fixture:cycle_5", "--which", "ricci"],
    ],
    ids=["unknown-fixture", "missing-file", "bad-betti-degree", "unknown-curvature"],
)
def test_input_errors(argv, capsys):
    assert main(argv) == INPUT_ERROR
    report = _json(capsys)
    assert report["error"]
    assert report["message"]


def test_crit_with_small_dp_limit_falls_back(capsys):
    assert main(["--json", "--dp-limit", "3", "crit", "fixture:cycle_5"]) == OK
    report = _json(capsys)
    assert report["crit"]["exact"] is False
    assert report["crit"]["value"] >= 2


def test_curvature_report(capsys):
    assert main(["--json", "curvature", "fixture:cycle_5", "--which", "betti:1"]) == OK
    assert _json(capsys)["total"] == "1"


def test_invariants_text_output(capsys):
    assert main(["invariants", "fixture:cycle_4"]) == OK
    out = capsys.readouterr().out
    assert "euler_characteristic:" in out
    assert "poincare_polynomial:" in out


def test_census(tmp_path, capsys):
    out = tmp_path / "census.json"
    assert main(["--threads", "1", "census", "--order", "4", "--out", str(out)]) == OK
    capsys.readouterr()
    census = json.loads(out.read_text())["census"]
    assert census["h_lower"] == census["h_upper"] == 2
    assert main(["--json", "census", "--order", "9"]) == UNKNOWN
    assert _json(capsys)["error"] == "SizeLimitError"
