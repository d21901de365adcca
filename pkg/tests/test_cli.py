from __future__ import annotations

import json

import pytest

from jacobial.cli import main


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def results(out: str) -> dict:
    return {r["name"]: r["value"] for r in json.loads(out)["results"]}


def test_curve_info(capsys):
    code, out, _ = run(capsys, "curve-info", "gallery:kodaira_In:5", "--json")
    assert code == 0
    r = results(out)
    assert r["complexity"] == 5 and r["degree_class_group"] == [5] and r["arithmetic_genus"] == 1


def test_curve_info_from_yaml(tmp_path, capsys):
    spec = tmp_path / "curve.yaml"
    spec.write_text("vertices: [a, b, {name: c, genus: 1}]\nedges: [[a, b], [b, c], [c, a], [a, b]]\n")
    code, out, _ = run(capsys, "curve-info", str(spec), "--json")
    assert code == 0
    assert results(out)["complexity"] == 5


def test_check_verdicts(capsys):
    code, out, _ = run(capsys, "check", "gallery:kodaira_In:3", "--q=1/3,1/3,-2/3", "-d", "0,0,0")
    assert code == 0 and "verdict: stable" in out
    code, out, _ = run(
        capsys, "check", "gallery:kodaira_In:3", "--q=1/3,1/3,-2/3", "-d", "3,-3,0", "--json"
    )
    assert code == 1 and results(out)["verdict"] == "unstable"
    code, out, _ = run(capsys, "check", "gallery:kodaira_In:2", "--q=0,0", "--json")
    assert code == 1 and results(out)["witness"] == ["C1"]


def test_check_stratum(capsys):
    code, out, _ = run(
        capsys, "check", "gallery:kodaira_In:3", "--q=1/3,1/3,-2/3", "--stratum", "0;0,0,0", "--json"
    )
    assert "in_stability_set" in results(out)
    assert code in (0, 1)


def test_chambers(capsys):
    code, out, _ = run(capsys, "chambers", "gallery:kodaira_In:4", "--json")
    assert code == 0
    r = results(out)
    assert r["chamber_count"] == 6 and r["admitting_abel"] == 1
    code, out, _ = run(capsys, "chambers", "gallery:kodaira_IV", "--no-abel")
    assert code == 0 and "chamber_count: 2" in out


def test_toric_with_exports(tmp_path, capsys):
    svg, dot, txt = tmp_path / "a.svg", tmp_path / "a.dot", tmp_path / "a.txt"
    code, out, _ = run(
        capsys, "toric", "gallery:kodaira_In:2", "--q=1/2,-1/2",
        "--dot", str(dot), "--text", str(txt), "--json",
    )
    assert code == 0
    assert results(out)["faces_by_dimension"] == [2, 2]
    assert dot.read_text().startswith("digraph")
    assert txt.read_text().startswith("elements 4 rank 1")
    code, out, _ = run(
        capsys, "toric", "gallery:blownup_dollar:1", "--q=1/3,1/3,-2/3,-1",
        "--triangles", "--svg", str(svg), "--json",
    )
    assert code == 0 and "triangles" in results(out)
    assert svg.read_text().startswith("<svg")
    # Drawing needs rank 2.
    assert main(["toric", "gallery:kodaira_In:2", "--q=1/2,-1/2", "--svg", str(svg)]) == 3
    capsys.readouterr()


def test_toric_compare(capsys):
    code, out, _ = run(
        capsys,
        "toric",
        "gallery:blownup_dollar:1",
        "--q=1/3,1/3,-2/3,-1",
        "--compare=1/3,1/3,-2/3,-1",
        "--json",
    )
    r = results(out)
    assert code == 0 and r["poset_isomorphic"] is True


def test_digest_is_deterministic(capsys):
    _, out1, _ = run(capsys, "curve-info", "gallery:theta", "--json")
    _, out2, _ = run(capsys, "curve-info", "gallery:theta", "--json")
    assert json.loads(out1)["input_digest"] == json.loads(out2)["input_digest"]


def test_reproduce_kodaira(capsys):
    code, out, _ = run(capsys, "reproduce", "kodaira", "--json")
    assert code == 0 and results(out)["all_match"] is True


def test_reproduce_component_counts(capsys):
    code, out, _ = run(capsys, "reproduce", "component-counts", "--json")
    assert code == 0
    for row in results(out)["component_counts"]:
        assert row["stable_multidegrees"] == row["complexity"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["curve-info", "gallery:nope"], 3),
        (["curve-info", "gallery:kodaira_In:x"], 2),
        (["check", "gallery:kodaira_In:3", "--q=0.5,0.5,-1"], 2),
        (["check", "gallery:kodaira_In:3", "--q=1/3,1/3"], 3),
        (["chambers", "gallery:kodaira_In:8"], 4),
        (["bogus"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    capsys.readouterr()


def test_parse_errors_from_files(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("vertices: [a, b\n")
    assert main(["curve-info", str(bad)]) == 2
    missing = tmp_path / "missing.yaml"
    assert main(["curve-info", str(missing)]) == 2
    disconnected = tmp_path / "disc.yaml"
    disconnected.write_text("vertices: [a, b]\nedges: []\n")
    assert main(["curve-info", str(disconnected)]) == 3
    capsys.readouterr()
