import json

import pytest
from hypothesis import given, strategies as st

from resqpo.cli import main
from resqpo.constraints import rigid_constraints
from resqpo.generators import random_graph, random_span_predicate, rng
from resqpo.graph import cycle, path
from resqpo.rules import builtin_rule, rules_isomorphic
from resqpo.serialize import (
    ParseError,
    constraints_from_json,
    constraints_to_json,
    dumps,
    graph_from_json,
    graph_to_json,
    relations_to_json,
    rule_from_json,
    rule_to_json,
    span_from_json,
    span_to_json,
)
from resqpo.constraints import rigid_forbidden_relations

seeds = st.integers(min_value=0, max_value=10**6)


def _graph_file(tmp_path, name, g):
    p = tmp_path / name
    p.write_text(dumps(graph_to_json(g)))
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_overlaps_direct_prints_counts(tmp_path, capsys):
    a = _graph_file(tmp_path, "a.json", path(1))
    out = tmp_path / "spans.json"
    code, text, _ = _run(capsys, "overlaps", "--left", a, "--right", a, "--constraints", "rigid",
                         "--strategy", "direct", "--out", str(out))
    assert code == 0
    assert "candidates: 8, correct: 5" in text
    doc = json.loads(out.read_text())
    assert doc["correct"] == 5 and len(doc["overlaps"]) == 5


def test_overlaps_implicit_and_empty_left(tmp_path, capsys):
    a = _graph_file(tmp_path, "a.json", path(2))
    b = _graph_file(tmp_path, "b.json", cycle(3))
    e = _graph_file(tmp_path, "e.json", path(0).subgraph([]))
    code, text, _ = _run(capsys, "overlaps", "--left", a, "--right", b, "--strategy", "implicit",
                         "--out", str(tmp_path / "o.json"))
    assert code == 0 and "correct: 4" in text and "not enumerated" in text
    code, text, _ = _run(capsys, "overlaps", "--left", e, "--right", b, "--out", str(tmp_path / "o2.json"))
    assert code == 0 and "correct: 1" in text


def test_overlaps_output_is_byte_identical(tmp_path, capsys):
    a = _graph_file(tmp_path, "a.json", path(2))
    b = _graph_file(tmp_path, "b.json", cycle(3))
    outs = []
    for k in range(2):
        o = tmp_path / f"o{k}.json"
        _run(capsys, "overlaps", "--left", a, "--right", b, "--strategy", "dpe", "--out", str(o))
        outs.append(o.read_bytes())
    assert outs[0] == outs[1]


def test_overlaps_error_codes(tmp_path, capsys):
    good = _graph_file(tmp_path, "g.json", path(1))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = _run(capsys, "overlaps", "--left", str(broken), "--right", good)
    assert code == 2 and "error" in err
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"vertices": ["a"], "colour": "red"}))
    assert _run(capsys, "overlaps", "--left", str(unknown), "--right", good)[0] == 2
    dangling = tmp_path / "dangling.json"
    dangling.write_text(json.dumps({"vertices": ["a"], "edges": [{"id": "e", "src": "a", "tgt": "b"}]}))
    assert _run(capsys, "overlaps", "--left", str(dangling), "--right", good)[0] == 2
    fork = tmp_path / "fork.json"
    fork.write_text(json.dumps({"vertices": ["a", "b", "c"], "edges": [
        {"id": "x", "src": "a", "tgt": "b"}, {"id": "y", "src": "a", "tgt": "c"}]}))
    assert _run(capsys, "overlaps", "--left", str(fork), "--right", good)[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["overlaps", "--left", good])
    assert exc.value.code == 2


def test_compose_writes_matches(tmp_path, capsys):
    out = tmp_path / "comps.json"
    code, text, _ = _run(capsys, "compose", "--rule1", "create-edge", "--rule2", "delete-edge",
                         "--constraints", "rigid", "--strategy", "dpe", "--out", str(out))
    assert code == 0 and "admissible matches: 5" in text
    doc = json.loads(out.read_text())
    assert len(doc["matches"]) == 5
    assert doc["iso_classes"] == 5
    assert "recomputed" in doc["metadata"]["composite_conditions"]
    first = out.read_bytes()
    _run(capsys, "compose", "--rule1", "create-edge", "--rule2", "delete-edge", "--strategy", "dpe", "--out", str(out))
    assert out.read_bytes() == first


def test_compose_create_vertex_twice(tmp_path, capsys):
    code, text, _ = _run(capsys, "compose", "--rule1", "create-vertex", "--rule2", "create-vertex",
                         "--out", str(tmp_path / "c.json"))
    assert code == 0 and "admissible matches: 1" in text


def test_compose_rejects_constant_false_condition(tmp_path, capsys):
    doc = rule_to_json(builtin_rule("delete-edge"))
    doc["nacs"] = [{"P": doc["I"], "embedding": {"vmap": {"u": "u", "v": "v"}, "emap": {"e": "e"}}}]
    p = tmp_path / "bad_rule.json"
    p.write_text(json.dumps(doc))
    code, _, err = _run(capsys, "compose", "--rule1", "create-edge", "--rule2", str(p), "--out", str(tmp_path / "c.json"))
    assert code == 3


def test_compose_unknown_rule(capsys):
    assert _run(capsys, "compose", "--rule1", "make-coffee", "--rule2", "delete-edge")[0] == 2


def test_macs(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, text, _ = _run(capsys, "macs", "--rule", "create-edge", "--constraints", "rigid", "--out", str(out))
    assert code == 0 and "conditions: 3" in text
    assert len(json.loads(out.read_text())["nacs"]) == 3
    code, text, _ = _run(capsys, "macs", "--rule", "delete-edge", "--out", str(out))
    assert "conditions: 0" in text
    ident = rule_to_json(builtin_rule("delete-edge"))
    ident["O"] = ident["I"]
    ident["K"] = ident["I"]
    ident["ko"] = ident["ki"] = {"vmap": {"u": "u", "v": "v"}, "emap": {"e": "e"}}
    p = tmp_path / "ident.json"
    p.write_text(json.dumps(ident))
    code, text, _ = _run(capsys, "macs", "--rule", str(p), "--out", str(out))
    assert code == 0 and "conditions: 0" in text


def test_macs_precondition(tmp_path, capsys):
    cons = tmp_path / "c.json"
    cons.write_text(dumps({"patterns": [graph_to_json(path(1))]}))
    # create-edge's output is itself forbidden here
    assert _run(capsys, "macs", "--rule", "create-edge", "--constraints", str(cons), "--out", str(tmp_path / "o"))[0] == 3


def test_census(capsys):
    code, text, _ = _run(capsys, "census", "--max-vertices", "7", "--loopless")
    assert code == 0
    assert [int(line.split(",")[1]) for line in text.split()[1:]] == [1, 1, 3, 5, 10, 16, 29, 45]
    assert _run(capsys, "census", "--max-vertices", "-1")[0] == 2


def test_bench_small(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _, _ = _run(capsys, "bench", "--suite", "gcm2020", "--strategies", "direct,implicit",
                      "--experiments", "P1", "--reps", "1", "--csv", str(out), "--timeout", "60s")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "experiment,strategy,candidates,correct,wall_time_mean_over_5,peak_memory"
    assert lines[1].startswith("P1,direct,8,5,")
    assert lines[2].startswith("P1,implicit,n/a,5,")


def test_bench_errors(capsys):
    assert _run(capsys, "bench", "--suite", "nope")[0] == 2
    assert _run(capsys, "bench", "--strategies", "psychic")[0] == 2
    assert _run(capsys, "bench", "--timeout", "soon")[0] == 2


# --- serialization ------------------------------------------------------------


@given(seeds)
def test_graph_and_span_round_trip(seed):
    r = rng(seed)
    a, b = random_graph(r, 4, 4), random_graph(r, 4, 4)
    assert graph_from_json(json.loads(dumps(graph_to_json(a)))) == a
    phi = random_span_predicate(a, b, r)
    assert span_from_json(json.loads(dumps(span_to_json(phi)))) == phi


@pytest.mark.parametrize("name", ["create-edge", "delete-vertex", "create-cycle:3", "break-chain:2"])
def test_rule_round_trip(name):
    r = builtin_rule(name)
    back = rule_from_json(json.loads(dumps(rule_to_json(r))))
    assert back == r
    assert rules_isomorphic(back, r)


def test_constraint_round_trip_and_relations():
    c = rigid_constraints()
    assert len(constraints_from_json(constraints_to_json(c))) == 4
    rel = relations_to_json(rigid_forbidden_relations())
    assert len(rel["relations"]) == 8
    assert set(rel["relations"][0]) == {"C1", "D", "C2", "leg1", "leg2", "pattern"}
    with pytest.raises(ParseError):
        constraints_from_json({"patterns": [{"vertices": []}]})
