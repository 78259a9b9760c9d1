import json
from pathlib import Path

import jsonschema
import pytest

from sprerouting.batch import run_batch
from sprerouting.cli import main
from sprerouting.errors import BadParameters, ParseError
from sprerouting.generators import generate
from sprerouting.instance import Target
from sprerouting.oracle import enumerate_spaths, oracle_decide
from sprerouting.reference import hex_cycle, redsw
from sprerouting.sprg import SprgDocument, parse_sprg, write_sprg
from sprerouting.standard_form import to_standard_form

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "batch_report.schema.json").read_text())

SWITCH1_TEXT = """\
# quadrilateral 1,2,4,3 with s inside and t outside
GRAPH 6
EDGE 0 1
EDGE 1 2
EDGE 1 3
EDGE 2 4
EDGE 3 4
EDGE 4 5
ROT 1 3 2 0 3
ROT 4 3 2 5 3
TERMINALS 0 5
PATH 0 1 2 4 5
TARGET PATH 0 1 3 4 5
"""


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# -- file format ------------------------------------------------------------


def test_parse_switch1():
    doc = parse_sprg(SWITCH1_TEXT)
    inst = doc.instance()
    assert inst.d == 4 and doc.path == (0, 1, 2, 4, 5)
    assert doc.target == Target.path([0, 1, 3, 4, 5])
    assert doc.graph.rotation[1] == (2, 0, 3)


@pytest.mark.parametrize("doc", [
    SprgDocument(redsw().graph, 0, 15, (0, 1, 5, 11, 15), Target.vertex(13), "SPR"),
    SprgDocument(hex_cycle().graph, 0, 3, (0, 1, 2, 3), Target.subpath([5]), "TSPR"),
    SprgDocument(hex_cycle().graph, 0, 3, None, Target.pair(1, 2), None),
])
def test_round_trip(doc):
    text = write_sprg(doc, "round trip")
    again = parse_sprg(text)
    assert write_sprg(again, "round trip") == text
    assert again.graph.rotation == doc.graph.rotation
    assert (again.path, again.target, again.variant) == (doc.path, doc.target, doc.variant)


@pytest.mark.parametrize("text", [
    "EDGE 0 1\n",
    "GRAPH 2\nGRAPH 2\n",
    "GRAPH 2\nEDGE 0 1\n",
    "GRAPH 2\nEDGE 0 x\nTERMINALS 0 1\n",
    "GRAPH 2\nEDGE 0 1\nTERMINALS 0 1\nFLAVOR 3\n",
    "GRAPH 2\nEDGE 0 1\nROT 0 2 1\nTERMINALS 0 1\n",
    "GRAPH 2\nEDGE 0 1\nTERMINALS 0 1\nTARGET ALL 1\n",
    "GRAPH 2\nEDGE 0 1\nTERMINALS 0 1\nVARIANT FAST\n",
    "GRAPH 2\nEDGE 0 0\nTERMINALS 0 1\n",
    "GRAPH 2\nEDGE 0 -1\nTERMINALS 0 1\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_sprg(text)


# -- generators -------------------------------------------------------------


@pytest.mark.parametrize("family, params", [
    ("hex", [3]), ("grid", [3, 4]), ("switch_chain", [3]), ("random_layered", [14, 4]),
])
def test_generators_are_deterministic(family, params):
    a = write_sprg(generate(family, params, seed=7))
    b = write_sprg(generate(family, params, seed=7))
    assert a == b
    doc = parse_sprg(a)
    inst = doc.instance()
    assert inst.is_spath(doc.path) and inst.is_spath(doc.target.vertices)


def test_random_seeds_differ():
    a = write_sprg(generate("random_layered", [14, 4], seed=1))
    b = write_sprg(generate("random_layered", [14, 4], seed=2))
    assert a != b


def test_hex_family_is_hex():
    doc = generate("hex", [1])
    assert sorted(doc.graph.edges()) == sorted(hex_cycle().graph.edges())


def test_small_grid_is_connected():
    doc = generate("grid", [2, 2])
    inst = doc.instance()
    paths = enumerate_spaths(inst)
    assert len(paths) == 2
    assert oracle_decide(inst, paths[0], paths[1]).reachable


@pytest.mark.parametrize("family, params", [
    ("hex", [0]), ("grid", [1, 1]), ("switch_chain", [0]), ("random_layered", [3, 4]),
    ("hex", [1, 2]), ("nope", [1]),
])
def test_bad_parameters(family, params):
    with pytest.raises(BadParameters):
        generate(family, params)


# -- command line -----------------------------------------------------------


def test_decide_json(tmp_path, capsys):
    f = _write(tmp_path, "s1.sprg", SWITCH1_TEXT)
    assert main(["decide", "--input", f, "--witness", "--check-oracle", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["reachable"] and out["witness"] == [0, 1, 3, 4, 5]
    assert out["oracle"]["agrees"] and "decide_s" in out["timings"]


def test_decide_variants(tmp_path, capsys):
    f = _write(tmp_path, "s1.sprg", SWITCH1_TEXT)
    assert main(["decide", "--input", f, "--variant", "RSPR"]) == 0
    assert "RSPR: not reachable" in capsys.readouterr().out
    assert main(["decide", "--input", f, "--variant", "GSPR"]) == 0
    assert "GSPR: reachable" in capsys.readouterr().out
    # the switch instance has cut vertices, so the topological solver refuses it
    assert main(["decide", "--input", f, "--variant", "TSPR"]) == 2


def test_decide_bad_input(tmp_path, capsys):
    f = _write(tmp_path, "bad.sprg", "GRAPH 2\nEDGE 0 1\nWHAT\n")
    assert main(["decide", "--input", f]) == 2
    assert "ParseError" in capsys.readouterr().err
    assert main(["decide", "--input", str(tmp_path / "missing.sprg")]) == 2
    f = _write(tmp_path, "nopath.sprg", "GRAPH 2\nEDGE 0 1\nTERMINALS 0 1\n")
    assert main(["decide", "--input", f]) == 2


def test_decide_resource_cap(tmp_path, capsys):
    f = str(tmp_path / "chain.sprg")
    assert main(["gen", "switch_chain", "3", "-o", f]) == 0
    assert main(["decide", "--input", f, "--variant", "RSPR", "--max-encoding-nodes", "8"]) == 3
    assert "EncodingCapExceeded" in capsys.readouterr().err


def test_oracle_command(tmp_path, capsys):
    f = _write(tmp_path, "s1.sprg", SWITCH1_TEXT)
    assert main(["oracle", "--input", f, "--variant", "TSPR"]) == 0
    assert "not reachable" in capsys.readouterr().out
    assert main(["oracle", "--input", f, "--variant", "unrestricted", "--sequence", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["sequence"] == [[0, 1, 2, 4, 5], [0, 1, 3, 4, 5]]
    assert main(["oracle", "--input", f, "--variant", "SPR", "--dot"]) == 0
    assert capsys.readouterr().out.startswith("graph")
    assert main(["oracle", "--input", f, "--variant", "SPR", "--max-paths", "1"]) == 3


def test_gen_to_stdout(capsys):
    assert main(["gen", "hex", "2"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("# hex 2 seed=0") and "TARGET PATH" in text
    assert main(["gen", "hex", "0"]) == 2


def test_validate_command(tmp_path, capsys):
    f = str(tmp_path / "r.sprg")
    Path(f).write_text(write_sprg(SprgDocument(redsw().graph, 0, 15)))
    assert main(["validate", "--input", f, "--reduced", "--standard-form", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["embedding"] == [] and out["reduced"] == []
    assert out["standard_form"]["core"]  # reduced, but not yet transformed
    sf, _ = to_standard_form(redsw())
    Path(f).write_text(write_sprg(SprgDocument(sf.graph, 0, 15)))
    assert main(["validate", "--input", f, "--standard-form", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["standard_form"] == {"core": [], "auxiliary": []}
    f = _write(tmp_path, "s1.sprg", SWITCH1_TEXT)
    assert main(["validate", "--input", f, "--reduced"]) == 0
    assert "reduced: [" in capsys.readouterr().out


def test_bench_command(capsys):
    assert main(["bench", "--family", "grid", "--sizes", "3,5", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert [r["size"] for r in rows] == [3, 5]
    assert all(r["seconds"] >= 0 for r in rows)


def test_batch_report(tmp_path, capsys):
    files = []
    for k in range(6):
        f = str(tmp_path / f"r{k}.sprg")
        Path(f).write_text(write_sprg(generate("random_layered", [12, 4], seed=k)))
        files.append(f)
    files.insert(2, _write(tmp_path, "bad.sprg", "nonsense\n"))
    report = run_batch(files, check_oracle=True, workers=2)
    jsonschema.validate(report, SCHEMA)
    assert [r["input"] for r in report["results"]] == files
    assert report["summary"] == {"total": 7, "ok": 6, "input_error": 1}
    assert main(["batch", *files, "--check-oracle", "--workers", "1", "--json"]) == 0
    jsonschema.validate(json.loads(capsys.readouterr().out), SCHEMA)


def test_disagreement_is_a_hard_failure(tmp_path, monkeypatch, capsys):
    import sprerouting.solve as solve
    from sprerouting.instance import Verdict
    f = _write(tmp_path, "s1.sprg", SWITCH1_TEXT)
    monkeypatch.setattr(solve, "decide", lambda q, cap=None: Verdict(False))
    report = run_batch([f], check_oracle=True, workers=1)
    assert report["results"][0]["status"] == "disagreement"
    jsonschema.validate(report, SCHEMA)
    assert main(["batch", f, "--check-oracle", "--workers", "1"]) == 1
    assert main(["decide", "--input", f, "--check-oracle"]) == 1
    assert "oracle says True" in capsys.readouterr().err
