"""JSON interchange for graphs, morphisms, constraint sets, spans and rules."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .constraints import (
    ConstraintSet,
    ConstraintViolation,
    ForbiddenRelationSet,
    rigid_constraints,
    satisfies,
)
from .graph import Edge, Graph, Morphism, MorphismError, is_homomorphism, validate_graph
from .overlaps import CuratedOverlap, SpanPredicate
from .rules import ConditionalRule, NegativeCondition, Rule, builtin_rule


class ParseError(ValueError):
    """Malformed input document."""


def _expect_keys(d: Any, required: Sequence[str], optional: Sequence[str] = (), what: str = "object") -> None:
    if not isinstance(d, dict):
        raise ParseError(f"{what} must be a JSON object")
    unknown = set(d) - set(required) - set(optional)
    if unknown:
        raise ParseError(f"unknown keys in {what}: {sorted(unknown)}")
    missing = [k for k in required if k not in d]
    if missing:
        raise ParseError(f"missing keys in {what}: {missing}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


# --- graphs and morphisms ----------------------------------------------------


def graph_to_json(g: Graph) -> Dict[str, Any]:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "src": e.src, "tgt": e.tgt} for e in g.edges],
    }


def graph_from_json(d: Any) -> Graph:
    _expect_keys(d, ["vertices"], ["edges"], "graph")
    edges = d.get("edges", [])
    if not isinstance(d["vertices"], list) or not isinstance(edges, list):
        raise ParseError("graph vertices and edges must be lists")
    for e in edges:
        _expect_keys(e, ["id", "src", "tgt"], (), "edge")
    if not all(isinstance(v, str) for v in d["vertices"]) or not all(
        isinstance(e[k], str) for e in edges for k in ("id", "src", "tgt")
    ):
        raise ParseError("graph ids must be strings")
    g = Graph(tuple(d["vertices"]), tuple(Edge(e["id"], e["src"], e["tgt"]) for e in edges))
    problems = validate_graph(g)
    if problems:
        raise ParseError("invalid graph: " + "; ".join(problems))
    return g


def load_graph(ref: Any) -> Graph:
    """A graph object or a path to a JSON file holding one."""
    if isinstance(ref, (str, Path)):
        return graph_from_json(read_json(ref))
    return graph_from_json(ref)


def morphism_to_json(m: Morphism) -> Dict[str, Any]:
    return {"vmap": dict(sorted(m.vmap.items())), "emap": dict(sorted(m.emap.items()))}


def morphism_from_json(d: Any, source: Graph, target: Graph) -> Morphism:
    _expect_keys(d, ["vmap"], ["emap"], "morphism")
    m = Morphism(source, target, dict(d["vmap"]), dict(d.get("emap", {})))
    try:
        ok = is_homomorphism(m)
    except MorphismError as exc:
        raise ParseError(str(exc)) from exc
    if not ok:
        raise ParseError("morphism does not preserve edge endpoints")
    return m


# --- constraints ----------------------------------------------------------


def constraints_to_json(c: ConstraintSet) -> Dict[str, Any]:
    return {"patterns": [graph_to_json(p) for p in c.patterns]}


def constraints_from_json(d: Any) -> ConstraintSet:
    _expect_keys(d, ["patterns"], (), "constraint set")
    try:
        return ConstraintSet([graph_from_json(p) for p in d["patterns"]])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_constraints(ref: str) -> ConstraintSet:
    if ref == "rigid":
        return rigid_constraints()
    return constraints_from_json(read_json(ref))


def relations_to_json(s: ForbiddenRelationSet) -> Dict[str, Any]:
    return {
        "relations": [
            {
                "C1": graph_to_json(r.c1),
                "D": graph_to_json(r.d),
                "C2": graph_to_json(r.c2),
                "leg1": morphism_to_json(r.span.left),
                "leg2": morphism_to_json(r.span.right),
                "pattern": r.pattern_index,
            }
            for r in s.relations
        ]
    }


# --- spans ----------------------------------------------------------------


def span_to_json(phi: SpanPredicate) -> Dict[str, Any]:
    return {
        "left": graph_to_json(phi.left),
        "right": graph_to_json(phi.right),
        "pv": [list(p) for p in sorted(phi.pv)],
        "pe": [list(p) for p in sorted(phi.pe)],
    }


def span_from_json(d: Any) -> SpanPredicate:
    _expect_keys(d, ["left", "right", "pv", "pe"], (), "span")
    try:
        return SpanPredicate(
            load_graph(d["left"]),
            load_graph(d["right"]),
            frozenset(tuple(p) for p in d["pv"]),
            frozenset(tuple(p) for p in d["pe"]),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def curated_to_json(ov: CuratedOverlap) -> Dict[str, Any]:
    d = span_to_json(ov.span)
    d["pushout"] = graph_to_json(ov.pushout)
    d["left_leg"] = morphism_to_json(ov.left_leg)
    d["right_leg"] = morphism_to_json(ov.right_leg)
    return d


# --- rules ----------------------------------------------------------------


def rule_to_json(r: ConditionalRule) -> Dict[str, Any]:
    if isinstance(r, Rule):
        r = ConditionalRule(r)
    rule = r.rule
    return {
        "O": graph_to_json(rule.output),
        "K": graph_to_json(rule.interface),
        "I": graph_to_json(rule.input),
        "ko": morphism_to_json(rule.ko),
        "ki": morphism_to_json(rule.ki),
        "nacs": [{"P": graph_to_json(n.context), "embedding": morphism_to_json(n.embedding)} for n in r.nacs],
    }


def rule_from_json(d: Any) -> ConditionalRule:
    _expect_keys(d, ["O", "K", "I", "ko", "ki"], ["nacs"], "rule")
    o, k, i = graph_from_json(d["O"]), graph_from_json(d["K"]), graph_from_json(d["I"])
    try:
        rule = Rule(o, k, i, morphism_from_json(d["ko"], k, o), morphism_from_json(d["ki"], k, i))
    except MorphismError as exc:
        raise ParseError(str(exc)) from exc
    nacs: List[NegativeCondition] = []
    for n in d.get("nacs", []):
        _expect_keys(n, ["P", "embedding"], (), "condition")
        emb = morphism_from_json(n["embedding"], i, graph_from_json(n["P"]))
        try:
            nacs.append(NegativeCondition(emb))
        except MorphismError as exc:
            raise ParseError(str(exc)) from exc
        except ValueError as exc:
            raise ConstraintViolation(str(exc)) from exc
    return ConditionalRule(rule, tuple(nacs))


def load_rule(ref: str, relations: Optional[ForbiddenRelationSet] = None) -> ConditionalRule:
    """Builtin rule name (with minimal conditions for ``relations``) or a path to a rule file."""
    try:
        return builtin_rule(ref, relations)
    except KeyError:
        pass
    if not Path(ref).exists():
        raise ParseError(f"{ref!r} is neither a builtin rule nor a readable file")
    return rule_from_json(read_json(ref))


def check_rule_constraints(r: ConditionalRule, c: ConstraintSet) -> None:
    if not all(satisfies(g, c) for g in r.rule.graphs()):
        raise ConstraintViolation("rule graphs must satisfy the constraints")

