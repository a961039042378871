"""Partial overlaps of two graphs and their curation under forbidden-pattern constraints.

An overlap is a :class:`SpanPredicate`: a bi-injective relation between
the vertices and the edges of two graphs that is closed under edge
endpoints.  It stands for the monic span it generates, without any
ambiguity up to isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Optional, Tuple

from .catops import pushout
from .constraints import ConstraintSet, ConstraintViolation, ForbiddenRelationSet, forbidden_relations, has_dpe, satisfies
from .graph import Edge, Graph, MonicSpan, Morphism, _Index, iter_monos
from .search import Assignment, SearchProblem, solve_all


Pair = Tuple[str, str]


@dataclass(frozen=True)
class SpanPredicate:
    left: Graph
    right: Graph
    pv: FrozenSet[Pair] = frozenset()
    pe: FrozenSet[Pair] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "pv", frozenset(tuple(p) for p in self.pv))
        object.__setattr__(self, "pe", frozenset(tuple(p) for p in self.pe))
        problems = self.violations()
        if problems:
            raise ValueError("invalid span predicate: " + "; ".join(problems))

    def violations(self) -> List[str]:
        out = []
        lv, rv = set(self.left.vertices), set(self.right.vertices)
        le, re_ = self.left.edge_map, self.right.edge_map
        for pairs, kind in ((self.pv, "vertex"), (self.pe, "edge")):
            firsts = [a for a, _ in pairs]
            seconds = [b for _, b in pairs]
            if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
                out.append(f"{kind} relation is not bi-injective")
        for a, b in self.pv:
            if a not in lv or b not in rv:
                out.append(f"unknown vertex pair {(a, b)}")
        for e, f in self.pe:
            if e not in le or f not in re_:
                out.append(f"unknown edge pair {(e, f)}")
                continue
            if (le[e].src, re_[f].src) not in self.pv or (le[e].tgt, re_[f].tgt) not in self.pv:
                out.append(f"edge pair {(e, f)} without its endpoint pairs")
        return out

    @property
    def key(self) -> Tuple:
        return (len(self.pe), len(self.pv), tuple(sorted(self.pv)), tuple(sorted(self.pe)))

    def __lt__(self, other: "SpanPredicate") -> bool:
        return self.key < other.key


def span_to_monic_span(phi: SpanPredicate) -> MonicSpan:
    """Apex with one element per related pair; legs are the two projections."""
    pv = sorted(phi.pv)
    pe = sorted(phi.pe)
    name = {p: f"{p[0]}~{p[1]}" for p in pv}
    ename = {p: f"{p[0]}~{p[1]}" for p in pe}
    le = phi.left.edge_map
    mv_left = {a: name[(a, b)] for a, b in pv}
    apex = Graph(
        tuple(name[p] for p in pv),
        tuple(Edge(ename[(e, f)], mv_left[le[e].src], mv_left[le[e].tgt]) for e, f in pe),
    )
    left = Morphism(apex, phi.left, {name[p]: p[0] for p in pv}, {ename[p]: p[0] for p in pe})
    right = Morphism(apex, phi.right, {name[p]: p[1] for p in pv}, {ename[p]: p[1] for p in pe})
    return MonicSpan(left, right)


def monic_span_to_predicate(span: MonicSpan) -> SpanPredicate:
    al, be = span.left, span.right
    return SpanPredicate(
        al.target,
        be.target,
        frozenset((al.vmap[m], be.vmap[m]) for m in al.vmap),
        frozenset((al.emap[m], be.emap[m]) for m in al.emap),
    )


@dataclass(frozen=True)
class CuratedOverlap:
    span: SpanPredicate
    apex: Graph
    pushout: Graph
    left_leg: Morphism  # A -> P
    right_leg: Morphism  # B -> P

    @property
    def monic_span(self) -> MonicSpan:
        return span_to_monic_span(self.span)


def _curated(phi: SpanPredicate) -> CuratedOverlap:
    mu = span_to_monic_span(phi)
    p, ia, ib = pushout(mu)
    return CuratedOverlap(phi, mu.apex, p, ia, ib)


# --- search encoding ------------------------------------------------------


def _variable_order(a: Graph) -> List[Tuple[str, str]]:
    """Vertices of A in breadth-first order, each edge right after its later endpoint."""
    idx = a.index
    order: List[Tuple[str, str]] = []
    placed: set = set()
    done_e: set = set()
    seen: set = set()
    for start in idx.vertices:
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(("v", v))
            placed.add(v)
            nbrs = []
            for e in sorted(idx.out[v] + idx.inc[v]):
                other = idx.tgt[e] if idx.src[e] == v else idx.src[e]
                if e not in done_e and idx.src[e] in placed and idx.tgt[e] in placed:
                    order.append(("e", e))
                    done_e.add(e)
                if other not in seen:
                    seen.add(other)
                    nbrs.append(other)
            queue.extend(nbrs)
    return order


class OverlapProblem(SearchProblem):
    """Each A-element picks a partner in B or ``None``; edges only pick edges whose ends agree."""

    def __init__(self, a: Graph, b: Graph) -> None:
        self.a, self.b = a, b
        self.order = _variable_order(a)
        self.used_v: set = set()
        self.used_e: set = set()

    def variables(self):
        return self.order

    def domain(self, var, assignment: Assignment):
        kind, x = var
        if kind == "v":
            return [None] + [y for y in self.b.index.vertices if y not in self.used_v]
        ai, bi = self.a.index, self.b.index
        s = assignment[("v", ai.src[x])]
        t = assignment[("v", ai.tgt[x])]
        if s is None or t is None:
            return [None]
        return [None] + [f for f in bi.out[s] if bi.tgt[f] == t and f not in self.used_e]

    def push(self, var, value, assignment) -> bool:
        if value is not None:
            (self.used_v if var[0] == "v" else self.used_e).add(value)
        return True

    def pop(self, var, value, assignment) -> None:
        if value is not None:
            (self.used_v if var[0] == "v" else self.used_e).discard(value)

    def predicate(self, assignment: Assignment) -> SpanPredicate:
        pv = frozenset((x, y) for (k, x), y in assignment.items() if k == "v" and y is not None)
        pe = frozenset((x, y) for (k, x), y in assignment.items() if k == "e" and y is not None)
        return SpanPredicate(self.a, self.b, pv, pe)


def enumerate_spans(a: Graph, b: Graph) -> Iterator[SpanPredicate]:
    """Every span predicate over ``(a, b)``, the empty one included."""
    prob = OverlapProblem(a, b)
    for asg in solve_all(prob):
        yield prob.predicate(asg)


def count_spans(a: Graph, b: Graph) -> int:
    return sum(1 for _ in solve_all(OverlapProblem(a, b)))


def _check_inputs(a: Graph, b: Graph, c: ConstraintSet) -> None:
    if not (satisfies(a, c) and satisfies(b, c)):
        raise ConstraintViolation("inputs must satisfy constraints")


def curate_direct(a: Graph, b: Graph, c: ConstraintSet, stats: Optional[dict] = None) -> List[CuratedOverlap]:
    """Generate every overlap, build its pushout, keep those satisfying ``c``."""
    _check_inputs(a, b, c)
    out = []
    n = 0
    for phi in enumerate_spans(a, b):
        n += 1
        cur = _curated(phi)
        if satisfies(cur.pushout, c):
            out.append(cur)
    if stats is not None:
        stats["candidates"] = n
    return sorted(out, key=lambda o: o.span.key)


def curate_dpe(a: Graph, b: Graph, s: ForbiddenRelationSet, stats: Optional[dict] = None) -> List[CuratedOverlap]:
    """Reject overlaps admitting a double-pullback embedding of a forbidden relation.

    Pushouts are only formed for the surviving overlaps.
    """
    _check_inputs(a, b, s.source)
    kept = []
    n = 0
    for phi in enumerate_spans(a, b):
        n += 1
        if not has_dpe(span_to_monic_span(phi), s):
            kept.append(phi)
    if stats is not None:
        stats["candidates"] = n
    return [_curated(phi) for phi in sorted(kept, key=lambda p: p.key)]


class ImplicitOverlapProblem(OverlapProblem):
    """Overlap search that grows the pushout alongside the relation.

    The working graph holds all of B plus the decided part of A, glued along
    the decided pairs.  It is always a subgraph of the final pushout, so a
    forbidden pattern found in it can never disappear and the branch is cut.
    Only a new unmatched A-element changes the working graph, and any new
    embedding must use it, so checks are anchored there.
    """

    def __init__(self, a: Graph, b: Graph, c: ConstraintSet) -> None:
        super().__init__(a, b)
        self.c = c
        self.work = _Index()
        for y in b.index.vertices:
            self.work.add_vertex("b:" + y)
        for f in b.index.edges:
            self.work.add_edge("b:" + f, "b:" + b.index.src[f], "b:" + b.index.tgt[f])
        self.nodes = 0
        self.pruned = 0

    def _cls(self, x: str, assignment: Assignment) -> str:
        y = assignment[("v", x)]
        return "a:" + x if y is None else "b:" + y

    def _violates_at_vertex(self, v: str) -> bool:
        for n in self.c.patterns:
            for pv in n.index.vertices:
                if next(iter_monos(n.index, self.work, {pv: v}), None) is not None:
                    return True
        return False

    def _violates_at_edge(self, e: str) -> bool:
        loop = self.work.src[e] == self.work.tgt[e]
        for n in self.c.patterns:
            ni = n.index
            for pe in ni.edges:
                if (ni.src[pe] == ni.tgt[pe]) != loop:
                    continue
                if next(iter_monos(ni, self.work, None, {pe: e}), None) is not None:
                    return True
        return False

    def push(self, var, value, assignment) -> bool:
        self.nodes += 1
        kind, x = var
        if value is not None:
            return super().push(var, value, assignment)
        if kind == "v":
            self.work.add_vertex("a:" + x)
            bad = self._violates_at_vertex("a:" + x)
        else:
            ai = self.a.index
            self.work.add_edge("a:" + x, self._cls(ai.src[x], assignment), self._cls(ai.tgt[x], assignment))
            bad = self._violates_at_edge("a:" + x)
        if bad:
            self.pruned += 1
        return not bad

    def pop(self, var, value, assignment) -> None:
        if value is not None:
            return super().pop(var, value, assignment)
        if var[0] == "v":
            self.work.pop_vertex()
        else:
            self.work.pop_edge()

    def quotient(self, assignment: Assignment) -> Tuple[Graph, Morphism, Morphism]:
        """Read off the pushout ``P`` with its legs from a complete assignment."""
        a, b = self.a, self.b
        vpart = {x: y for (k, x), y in assignment.items() if k == "v"}
        epart = {x: y for (k, x), y in assignment.items() if k == "e"}
        bv_glued = {y: x for x, y in vpart.items() if y is not None}
        be_glued = {y: x for x, y in epart.items() if y is not None}
        av = {x: ("q:" if vpart[x] is not None else "a:") + x for x in a.vertices}
        ae = {e.id: ("q:" if epart[e.id] is not None else "a:") + e.id for e in a.edges}
        bvn = {y: ("q:" + bv_glued[y]) if y in bv_glued else "b:" + y for y in b.vertices}
        ben = {f.id: ("q:" + be_glued[f.id]) if f.id in be_glued else "b:" + f.id for f in b.edges}
        p = Graph(
            tuple(av[x] for x in a.vertices) + tuple(bvn[y] for y in b.vertices if y not in bv_glued),
            tuple(Edge(ae[e.id], av[e.src], av[e.tgt]) for e in a.edges)
            + tuple(Edge(ben[f.id], bvn[f.src], bvn[f.tgt]) for f in b.edges if f.id not in be_glued),
        )
        return p, Morphism(a, p, av, ae), Morphism(b, p, bvn, ben)


def curate_implicit(
    a: Graph, b: Graph, c: ConstraintSet, stats: Optional[dict] = None, audit: bool = False
) -> List[CuratedOverlap]:
    """Single search building overlap and pushout together, pruning on forbidden patterns.

    With ``audit`` every completed overlap is re-checked with :func:`satisfies`;
    ``stats["completed_rejected"]`` counts failures (expected to stay 0).
    """
    _check_inputs(a, b, c)
    prob = ImplicitOverlapProblem(a, b, c)
    out = []
    rejected = 0
    for asg in solve_all(prob):
        phi = prob.predicate(asg)
        p, ia, ib = prob.quotient(asg)
        if audit and not satisfies(p, c):
            rejected += 1
            continue
        out.append(CuratedOverlap(phi, span_to_monic_span(phi).apex, p, ia, ib))
    if stats is not None:
        stats.update(nodes=prob.nodes, pruned=prob.pruned, completed=len(out) + rejected, completed_rejected=rejected)
    return sorted(out, key=lambda o: o.span.key)


STRATEGIES = ("direct", "dpe", "implicit")


def curate(a: Graph, b: Graph, c: ConstraintSet, strategy: str, stats: Optional[dict] = None) -> List[CuratedOverlap]:
    if strategy == "direct":
        return curate_direct(a, b, c, stats)
    if strategy == "dpe":
        return curate_dpe(a, b, forbidden_relations(c), stats)
    if strategy == "implicit":
        return curate_implicit(a, b, c, stats)
    raise ValueError(f"unknown strategy {strategy!r}")
