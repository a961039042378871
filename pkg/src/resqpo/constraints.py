"""Negative global constraints given by forbidden patterns.

A :class:`ForbiddenRelationSet` decomposes every forbidden pattern into
spans of constraint-satisfying pieces whose pushout is the pattern.  Testing
an overlap span for a double-pullback embedding of such a piece-span is
equivalent to testing its pushout for the pattern, without building the
pushout.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from .catops import pushout
from .graph import Graph, MonicSpan, Morphism, exists_mono, iter_isomorphisms, is_isomorphic, iter_monos


class ConstraintViolation(ValueError):
    """Graphs or rules do not satisfy the constraint set they are used with."""


@dataclass(frozen=True, init=False)
class ConstraintSet:
    patterns: Tuple[Graph, ...]

    def __init__(self, patterns: Sequence[Graph]) -> None:
        kept: List[Graph] = []
        for p in patterns:
            if p.is_empty():
                raise ValueError("the empty graph cannot be a forbidden pattern")
            if not any(is_isomorphic(p, q) for q in kept):
                kept.append(p)
        object.__setattr__(self, "patterns", tuple(kept))

    def __len__(self) -> int:
        return len(self.patterns)


def satisfies(g: Graph, c: ConstraintSet) -> bool:
    return not any(exists_mono(n, g) for n in c.patterns)


def violating_pattern(g: Graph, c: ConstraintSet) -> Optional[int]:
    for i, n in enumerate(c.patterns):
        if exists_mono(n, g):
            return i
    return None


@lru_cache(maxsize=None)
def rigid_constraints() -> ConstraintSet:
    """Parallel edges, forks, joins and double self-loops are forbidden."""
    return ConstraintSet(
        [
            Graph.build(["x", "y"], [("e1", "x", "y"), ("e2", "x", "y")]),
            Graph.build(["x", "y", "z"], [("e1", "x", "y"), ("e2", "x", "z")]),
            Graph.build(["x", "y", "z"], [("e1", "y", "x"), ("e2", "z", "x")]),
            Graph.build(["x"], [("e1", "x", "x"), ("e2", "x", "x")]),
        ]
    )


@dataclass(frozen=True)
class ForbiddenRelation:
    """``C1 <- D -> C2`` with ``span.left: D -> C1`` and ``span.right: D -> C2``."""

    span: MonicSpan
    pattern_index: int

    @property
    def c1(self) -> Graph:
        return self.span.left.target

    @property
    def c2(self) -> Graph:
        return self.span.right.target

    @property
    def d(self) -> Graph:
        return self.span.apex

    @cached_property
    def orientations(self) -> Tuple[Tuple[Morphism, Morphism], ...]:
        """``(D -> first, D -> second)`` in both orders; symmetric spans appear once."""
        if spans_isomorphic(self.span, MonicSpan(self.span.right, self.span.left)):
            return ((self.span.left, self.span.right),)
        return ((self.span.left, self.span.right), (self.span.right, self.span.left))


@dataclass(frozen=True)
class ForbiddenRelationSet:
    relations: Tuple[ForbiddenRelation, ...]
    source: ConstraintSet

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)


def spans_isomorphic(s: MonicSpan, t: MonicSpan) -> bool:
    """Triple of isos between apexes and feet commuting with both legs."""
    for d in iter_isomorphisms(s.apex, t.apex):
        ok = True
        for sl, tl in ((s.left, t.left), (s.right, t.right)):
            vseed = {sl.vmap[x]: tl.vmap[d.vmap[x]] for x in sl.vmap}
            eseed = {sl.emap[x]: tl.emap[d.emap[x]] for x in sl.emap}
            if next(iter_isomorphisms(sl.target, tl.target, vseed, eseed), None) is None:
                ok = False
                break
        if ok:
            return True
    return False


def _covering_subgraph_pairs(n: Graph) -> Iterator[Tuple[Graph, Graph]]:
    """Ordered pairs of subgraphs of ``n`` whose union is ``n``.

    Edges are distributed first; vertex membership is then forced by edge
    endpoints except for the remaining free choices.
    """
    edges = list(n.edges)
    for sides in product((1, 2, 3), repeat=len(edges)):
        e1 = [e for e, s in zip(edges, sides) if s & 1]
        e2 = [e for e, s in zip(edges, sides) if s & 2]
        need1 = {v for e in e1 for v in (e.src, e.tgt)}
        need2 = {v for e in e2 for v in (e.src, e.tgt)}
        choices = []
        for v in n.vertices:
            opts = [m for m in (1, 2, 3) if (v not in need1 or m & 1) and (v not in need2 or m & 2)]
            choices.append(opts)
        for vsides in product(*choices):
            v1 = [v for v, m in zip(n.vertices, vsides) if m & 1]
            v2 = [v for v, m in zip(n.vertices, vsides) if m & 2]
            yield n.subgraph(v1, [e.id for e in e1]), n.subgraph(v2, [e.id for e in e2])


def decompose_forbidden_relations(c: ConstraintSet) -> ForbiddenRelationSet:
    found: List[ForbiddenRelation] = []
    for k, n in enumerate(c.patterns):
        for c1, c2 in _covering_subgraph_pairs(n):
            if not (satisfies(c1, c) and satisfies(c2, c)):
                continue
            d = c1.subgraph(
                [v for v in c1.vertices if v in set(c2.vertices)],
                [e.id for e in c1.edges if e.id in {f.id for f in c2.edges}],
            )
            if not satisfies(d, c):
                continue
            span = MonicSpan(c1.inclusion(d), c2.inclusion(d))
            p, _, _ = pushout(span)
            if not is_isomorphic(p, n):
                raise AssertionError("pushout of a covering pair must recover the pattern")
            flipped = MonicSpan(span.right, span.left)
            if any(
                r.pattern_index == k and (spans_isomorphic(span, r.span) or spans_isomorphic(flipped, r.span))
                for r in found
            ):
                continue
            found.append(ForbiddenRelation(span, k))
    found.sort(key=lambda r: (r.c1.size[0] + r.c2.size[0] + r.c1.size[1] + r.c2.size[1], r.pattern_index))
    return ForbiddenRelationSet(tuple(found), c)


@lru_cache(maxsize=None)
def forbidden_relations(c: ConstraintSet) -> ForbiddenRelationSet:
    """Cached :func:`decompose_forbidden_relations`."""
    return decompose_forbidden_relations(c)


def rigid_forbidden_relations() -> ForbiddenRelationSet:
    return forbidden_relations(rigid_constraints())


# --- double-pullback embeddings ------------------------------------------


@dataclass(frozen=True)
class DPEWitness:
    relation: ForbiddenRelation
    to_left: Morphism  # C on the span's left side -> A
    to_apex: Morphism  # D -> M
    to_right: Morphism  # C on the span's right side -> B


def find_dpe(mu: MonicSpan, s: ForbiddenRelationSet) -> Optional[DPEWitness]:
    """First double-pullback embedding of a relation of ``s`` into ``mu = (A <- M -> B)``.

    For a relation oriented as ``(Ca <- D -> Cb)`` we look for monos
    ``ga: Ca -> A`` and ``gb: Cb -> B`` such that D is exactly the part of
    ``Ca`` landing in the image of M, likewise for ``Cb``, and both routes
    through M agree on D.
    """
    alpha, beta = mu.left, mu.right
    a, b = alpha.target, beta.target
    inv_a_v = {w: m for m, w in alpha.vmap.items()}
    inv_a_e = {w: m for m, w in alpha.emap.items()}
    inv_b_v = {w: m for m, w in beta.vmap.items()}
    inv_b_e = {w: m for m, w in beta.emap.items()}
    for rel in s.relations:
        for la, lb in rel.orientations:
            ca, cb, d = la.target, lb.target, la.source
            in_d_v = set(la.vmap.values())
            in_d_e = set(la.emap.values())
            for gv, ge in iter_monos(ca.index, a.index):
                if any((gv[y] in inv_a_v) != (y in in_d_v) for y in ca.vertices):
                    continue
                if any((ge[y.id] in inv_a_e) != (y.id in in_d_e) for y in ca.edges):
                    continue
                dv = {x: inv_a_v[gv[la.vmap[x]]] for x in d.vertices}
                de = {x: inv_a_e[ge[la.emap[x]]] for x in la.emap}
                vseed = {lb.vmap[x]: beta.vmap[m] for x, m in dv.items()}
                eseed = {lb.emap[x]: beta.emap[m] for x, m in de.items()}
                in_db_v = set(lb.vmap.values())
                in_db_e = set(lb.emap.values())
                for hv, he in iter_monos(cb.index, b.index, vseed, eseed):
                    if any((hv[y] in inv_b_v) != (y in in_db_v) for y in cb.vertices):
                        continue
                    if any((he[y.id] in inv_b_e) != (y.id in in_db_e) for y in cb.edges):
                        continue
                    return DPEWitness(
                        rel,
                        Morphism(ca, a, dict(gv), dict(ge)),
                        Morphism(d, mu.apex, dv, de),
                        Morphism(cb, b, dict(hv), dict(he)),
                    )
    return None


def has_dpe(mu: MonicSpan, s: ForbiddenRelationSet) -> bool:
    return find_dpe(mu, s) is not None
