"""``resqpo`` command line entry point."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import bench as bench_mod
from .census import census
from .constraints import ConstraintViolation, forbidden_relations
from .overlaps import STRATEGIES, curate
from .rules import ConditionalRule, enumerate_rule_matches, rules_isomorphic, with_minimal_nacs
from .serialize import (
    ParseError,
    check_rule_constraints,
    constraints_to_json,
    curated_to_json,
    dumps,
    load_constraints,
    load_graph,
    load_rule,
    rule_to_json,
    span_to_json,
)

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION = 0, 2, 3

COMPOSITE_CONDITIONS_NOTE = (
    "composite conditions are recomputed as the minimal constraint-preserving "
    "negative conditions of the composite rule; equivalence with conditions "
    "obtained by shifting and transporting the input conditions is not asserted"
)


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_overlaps(args) -> int:
    c = load_constraints(args.constraints)
    a, b = load_graph(args.left), load_graph(args.right)
    stats: dict = {}
    found = curate(a, b, c, args.strategy, stats)
    candidates = stats.get("candidates") if args.strategy == "direct" else None
    doc = {
        "strategy": args.strategy,
        "constraints": constraints_to_json(c),
        "candidates": candidates,
        "correct": len(found),
        "overlaps": [curated_to_json(o) for o in found],
    }
    _write(args.out, dumps(doc))
    if candidates is None:
        print("candidates: n/a — not enumerated")
        print(f"correct: {len(found)}")
    else:
        print(f"candidates: {candidates}, correct: {len(found)}")
    return EXIT_OK


def _iso_classes(rules: List[ConditionalRule]) -> int:
    reps: List[ConditionalRule] = []
    for r in rules:
        if not any(rules_isomorphic(r, q) for q in reps):
            reps.append(r)
    return len(reps)


def cmd_compose(args) -> int:
    c = load_constraints(args.constraints)
    rel = forbidden_relations(c)
    r1 = load_rule(args.rule1, rel)
    r2 = load_rule(args.rule2, rel)
    for r in (r1, r2):
        check_rule_constraints(r, c)
    matches = enumerate_rule_matches(r2, r1, c, args.strategy)
    composites = [comp for _, comp in matches]
    doc = {
        "strategy": args.strategy,
        "constraints": constraints_to_json(c),
        "rule1": rule_to_json(r1),
        "rule2": rule_to_json(r2),
        "matches": [{"overlap": span_to_json(mu), "composite": rule_to_json(comp)} for mu, comp in matches],
        "iso_classes": _iso_classes(composites),
        "metadata": {"composite_conditions": COMPOSITE_CONDITIONS_NOTE},
    }
    _write(args.out, dumps(doc))
    print(f"admissible matches: {len(matches)}")
    print(f"isomorphism classes of composites: {doc['iso_classes']}")
    return EXIT_OK


def cmd_macs(args) -> int:
    c = load_constraints(args.constraints)
    rel = forbidden_relations(c)
    r = load_rule(args.rule, rel)
    check_rule_constraints(r, c)
    out = with_minimal_nacs(r.rule, rel)
    _write(args.out, dumps(rule_to_json(out)))
    print(f"conditions: {len(out.nacs)}")
    return EXIT_OK


def cmd_census(args) -> int:
    if args.max_vertices < 0:
        raise ParseError("--max-vertices must be non-negative")
    print("vertices,classes")
    for k, n in enumerate(census(args.max_vertices, args.loopless)):
        print(f"{k},{n}")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.suite not in bench_mod.SUITES:
        raise ParseError(f"unknown suite {args.suite!r}; known: {', '.join(sorted(bench_mod.SUITES))}")
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    bad = [s for s in strategies if s not in STRATEGIES]
    if bad or not strategies:
        raise ParseError(f"unknown strategies: {bad}")
    try:
        timeout = bench_mod.parse_duration(args.timeout)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    experiments = args.experiments.split(",") if args.experiments else None

    def progress(row):
        print(",".join(row.as_list()), file=sys.stderr, flush=True)

    rows = bench_mod.run_suite(args.suite, strategies, timeout, args.reps, experiments, progress)
    _write(args.csv, bench_mod.rows_to_csv(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="resqpo", description="Rule composition and overlap enumeration under graph constraints.")
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("overlaps", help="curate constraint-respecting overlaps of two graphs")
    o.add_argument("--left", required=True)
    o.add_argument("--right", required=True)
    o.add_argument("--constraints", default="rigid")
    o.add_argument("--strategy", choices=STRATEGIES, default="implicit")
    o.add_argument("--out")
    o.set_defaults(func=cmd_overlaps)

    c = sub.add_parser("compose", help="all admissible compositions of rule2 after rule1")
    c.add_argument("--rule1", required=True)
    c.add_argument("--rule2", required=True)
    c.add_argument("--constraints", default="rigid")
    c.add_argument("--strategy", choices=STRATEGIES, default="implicit")
    c.add_argument("--out")
    c.set_defaults(func=cmd_compose)

    m = sub.add_parser("macs", help="attach minimal constraint-preserving conditions to a rule")
    m.add_argument("--rule", required=True)
    m.add_argument("--constraints", default="rigid")
    m.add_argument("--out")
    m.set_defaults(func=cmd_macs)

    n = sub.add_parser("census", help="count rigid graphs up to isomorphism")
    n.add_argument("--max-vertices", type=int, required=True)
    n.add_argument("--loopless", action="store_true")
    n.set_defaults(func=cmd_census)

    b = sub.add_parser("bench", help="run a benchmark suite and write a CSV table")
    b.add_argument("--suite", default="gcm2020")
    b.add_argument("--strategies", default=",".join(STRATEGIES))
    b.add_argument("--csv")
    b.add_argument("--timeout", default="600s")
    b.add_argument("--reps", type=int, default=bench_mod.REPS)
    b.add_argument("--experiments", help="comma separated subset, e.g. P1,P3")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"resqpo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstraintViolation as exc:
        print(f"resqpo: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"resqpo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
