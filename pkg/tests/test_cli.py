import io
import json

import pytest

from lconvex.cli import main

G3 = {"chain": {"n": 3, "flavor": "godel"}}


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    text = out.getvalue()
    try:
        return code, json.loads(text)
    except json.JSONDecodeError:
        return code, text


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def write(name, doc):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return name

    write("g3.json", G3)
    write("worked.json", {"quantale": "g3.json", "points": ["a", "b"],
                          "convexes": [[0, 0], [2, 1], [2, 2]]})
    write("constants.json", {"quantale": "g3.json", "points": ["a", "b"],
                             "convexes": [[0, 0], [2, 2]]})
    write("point.json", {"quantale": "g3.json", "points": ["p"], "generators": []})
    return write


def test_validate_exit_codes(files):
    code, doc = run("validate", "g3.json", "worked.json")
    assert code == 0 and all(f["valid"] for f in doc["files"])
    files("no_top.json", {"quantale": "g3.json", "size": 2, "convexes": [[0, 0], [2, 1]]})
    code, doc = run("validate", "no_top.json")
    assert code == 1 and doc["files"][0]["error"] == "MissingBottomTop"
    files("broken.json", "{not json")
    code, doc = run("validate", "worked.json", "broken.json")
    assert code == 2 and doc["files"][1]["error"] == "ParseError"
    assert run("validate", "missing.json")[0] == 2


def test_analyze_worked_space(files):
    code, doc = run("analyze", "worked.json")
    assert code == 0
    assert doc["sober"] and doc["s0"] and len(doc["irr"]) == 2
    assert doc["hulls"]["a"]["degrees"] == [2, 1]
    assert doc["verdict"]["verdict"] == "sober"


def test_analyze_constants_and_singleton(files):
    code, doc = run("analyze", "constants.json")
    assert code == 0 and doc["sober"] is False and doc["s0"] is False
    code, doc = run("analyze", "point.json")
    assert code == 0 and doc["sober"] is True


def test_sobrification_document_reloads(files, tmp_path):
    code, doc = run("sobrify", "constants.json")
    assert code == 0
    files("s.json", doc["space"])
    code, again = run("analyze", "s.json")
    assert code == 0 and again["sober"] is True
    assert again["space"] == doc["space"]


def test_analyze_is_deterministic(files):
    assert run("analyze", "worked.json") == run("analyze", "worked.json")


def test_hull_irr_and_checks(files):
    code, doc = run("hull", "worked.json", "[2, 0]")
    assert code == 0 and doc["hull"]["degrees"] == [2, 1]
    files("a.json", {"degrees": [0, 2]})
    code, doc = run("hull", "worked.json", "a.json")
    assert doc["hull"]["degrees"] == [2, 2]
    assert run("hull", "worked.json", "[2]")[0] == 2
    code, doc = run("irr", "worked.json")
    assert [F["degrees"] for F in doc["irr"]] == [[2, 1], [2, 2]]
    assert run("check", "sober", "worked.json")[0] == 0
    code, doc = run("check", "s0", "constants.json")
    assert code == 1 and doc["witness"] == ["a", "b"]


def test_map_checks(files):
    files("id.json", {"source": "worked.json", "target": "worked.json", "points": [0, 1]})
    files("swap.json", {"source": "worked.json", "target": "worked.json", "points": [1, 0]})
    for prop in ("cp", "quasi", "embedding"):
        assert run("check", prop, "id.json")[0] == 0
    code, doc = run("check", "cp", "swap.json")
    assert code == 1 and doc["cp"] is False
    code, doc = run("check", "quasi", "swap.json")
    assert code == 1 and doc["error"] == "NotCP"


def test_check_sober_on_non_sober_space(files):
    files("b3.json", {"quantale": {"chain": {"n": 2}}, "points": ["a", "b", "c"],
                      "generators": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    code, doc = run("check", "sober", "b3.json")
    assert code == 1 and doc["verdict"] == "non_point_irr"


def test_theorems(files):
    code, doc = run("theorems", "hull-lemma", "--trials", "3", "--seed", "1")
    assert code == 0 and doc["summary"]["passed"]
    code, doc = run("theorems", "hull-lemma", "--trials", "2", "--inject-fault")
    assert code == 1
    bad = [r for r in doc["reports"] if not r["agreement"]]
    assert bad and bad[0]["witnesses"]
    code, text = run("--pretty", "theorems", "retraction", "--trials", "2")
    assert code == 0 and "passed=True" in text
    assert run("theorems", "sobrification", "--inject-fault")[0] == 2
    assert run("theorems", "nope")[0] == 2


def test_theorems_disagreement_exits_one(files):
    # this seed meets an embedding whose lift is not invertible
    code, doc = run("theorems", "injectivity", "--trials", "30", "--seed", "2")
    assert code == 1
    bad = [r for r in doc["reports"] if not r["agreement"]]
    assert bad[0]["witnesses"]["unextended"][0]["extensions"] == []


def test_search_and_replay(files):
    files("cfg.json", {"quantales": [{"chain": {"n": 2}}], "carrier_sizes": [3, 3],
                       "generator_counts": [1, 4], "trials": 60, "seed": 4,
                       "target": "S0-not-sober"})
    code, doc = run("search", "cfg.json")
    assert code == 0 and doc["findings"]
    assert run("search", "cfg.json") == (code, doc)
    first = doc["findings"][0]
    files("found.json", {**first["space"], "quantale": {"chain": {"n": 2}}})
    code, again = run("analyze", "found.json")
    assert again["s0"] and not again["sober"]


def test_search_sober_findings_reverify(files):
    files("cfg.json", {"quantales": ["g3.json"], "trials": 30, "seed": 1, "target": "sober"})
    code, doc = run("search", "cfg.json")
    assert code == 0 and doc["findings"]
    for i, found in enumerate(doc["findings"]):
        name = files(f"f{i}.json", {**found["space"], "quantale": "g3.json"})
        assert run("check", "sober", name)[0] == 0


def test_bad_search_config(files):
    files("bad.json", {"target": "nonsense"})
    assert run("search", "bad.json")[0] == 2


def test_family_cap_gives_exit_three(files, monkeypatch):
    files("big.json", {"quantale": {"chain": {"n": 3, "flavor": "lukasiewicz"}}, "size": 3,
                       "generators": [[2, 0, 1], [0, 1, 2], [1, 2, 0]]})
    monkeypatch.setenv("LCONVEX_MAX_FAMILY", "4")
    code, doc = run("analyze", "big.json")
    assert code == 3 and doc["error"] == "BudgetExceeded"
