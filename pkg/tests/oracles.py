"""Brute-force reference implementations used only by the tests.

Nothing here calls the library's mono search, union-find pushout or census
generator; inputs and outputs are plain tuples so the two routes can be
compared without sharing code.
"""
from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Dict, FrozenSet, Iterator, List, Set, Tuple

from resqpo.graph import Edge, Graph, Morphism, disjoint_union
from resqpo.rules import Rule


def brute_monos(p: Graph, h: Graph) -> Set[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
    """All injective homomorphisms as (vertex images, edge images) in the pattern's declared order."""
    out = set()
    pe = list(p.edges)
    for vimg in permutations(h.vertices, len(p.vertices)):
        vm = dict(zip(p.vertices, vimg))
        for eimg in permutations(h.edges, len(pe)):
            if all(f.src == vm[e.src] and f.tgt == vm[e.tgt] for e, f in zip(pe, eimg)):
                out.add((vimg, tuple(f.id for f in eimg)))
    return out


def brute_has_mono(p: Graph, h: Graph) -> bool:
    return bool(brute_monos(p, h))


def brute_satisfies(g: Graph, patterns) -> bool:
    return not any(brute_has_mono(n, g) for n in patterns)


def brute_isomorphic(a: Graph, b: Graph) -> bool:
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False
    return bool(brute_monos(a, b))


def edge_multiset(g: Graph, vm: Dict[str, str]) -> List[Tuple[str, str]]:
    return sorted((vm[e.src], vm[e.tgt]) for e in g.edges)


def brute_iso_by_vertices(a: Graph, b: Graph) -> bool:
    """Isomorphism test by vertex permutation and edge multiset comparison."""
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False
    target = sorted((e.src, e.tgt) for e in b.edges)
    return any(
        edge_multiset(a, dict(zip(a.vertices, perm))) == target for perm in permutations(b.vertices)
    )


# --- rigidity without the mono machinery -----------------------------------


def is_rigid_by_degrees(g: Graph) -> bool:
    """At most one edge per ordered vertex pair, out/in degree at most one
    ignoring loops, and at most one loop per vertex."""
    pairs = [(e.src, e.tgt) for e in g.edges]
    if len(set(pairs)) != len(pairs):
        return False
    for v in g.vertices:
        outs = [e for e in g.edges if e.src == v and e.tgt != v]
        ins = [e for e in g.edges if e.tgt == v and e.src != v]
        if len(outs) > 1 or len(ins) > 1:
            return False
    return True


def rigid_census_by_filter(k: int, loopless: bool) -> int:
    """Isomorphism classes among all 0/1 digraphs on k labeled vertices that are rigid."""
    vs = [f"x{i}" for i in range(k)]
    slots = [(i, j) for i in range(k) for j in range(k) if not (loopless and i == j)]
    seen: List[Graph] = []
    for bits in product((0, 1), repeat=len(slots)):
        es = tuple(Edge(f"f{n}", vs[i], vs[j]) for n, ((i, j), b) in enumerate(zip(slots, bits)) if b)
        g = Graph(tuple(vs), es)
        if not is_rigid_by_degrees(g):
            continue
        if not any(brute_iso_by_vertices(g, h) for h in seen):
            seen.append(g)
    return len(seen)


# --- span predicates and their pushouts --------------------------------------


def brute_spans(a: Graph, b: Graph) -> Iterator[Tuple[FrozenSet, FrozenSet]]:
    """Every bi-injective vertex/edge relation closed under edge endpoints."""
    av = list(a.vertices)
    for r in range(min(len(av), len(b.vertices)) + 1):
        for dom in combinations(av, r):
            for img in permutations(b.vertices, r):
                pv = dict(zip(dom, img))
                compat = [
                    (e.id, f.id)
                    for e in a.edges
                    for f in b.edges
                    if e.src in pv and e.tgt in pv and pv[e.src] == f.src and pv[e.tgt] == f.tgt
                ]
                yield from _edge_matchings(frozenset(pv.items()), compat)


def _edge_matchings(pv, compat) -> Iterator[Tuple[FrozenSet, FrozenSet]]:
    def rec(i, used_a, used_b, chosen):
        if i == len(compat):
            yield pv, frozenset(chosen)
            return
        yield from rec(i + 1, used_a, used_b, chosen)
        x, y = compat[i]
        if x not in used_a and y not in used_b:
            yield from rec(i + 1, used_a | {x}, used_b | {y}, chosen + [(x, y)])

    yield from rec(0, frozenset(), frozenset(), [])


def glue(a: Graph, b: Graph, pv, pe) -> Graph:
    """Pushout of the span given by (pv, pe): A plus the unrelated part of B."""
    back_v = {y: x for x, y in pv}
    back_e = {y for _, y in pe}
    vs = ["A" + v for v in a.vertices] + ["B" + v for v in b.vertices if v not in back_v]

    def vname(v):
        return "A" + back_v[v] if v in back_v else "B" + v

    es = [Edge("A" + e.id, "A" + e.src, "A" + e.tgt) for e in a.edges]
    es += [Edge("B" + f.id, vname(f.src), vname(f.tgt)) for f in b.edges if f.id not in back_e]
    return Graph(tuple(vs), tuple(es))


def brute_curated(a: Graph, b: Graph, patterns) -> Set[Tuple[FrozenSet, FrozenSet]]:
    return {(pv, pe) for pv, pe in brute_spans(a, b) if brute_satisfies(glue(a, b, pv, pe), patterns)}


def pushout_oracle(span, p: Graph, ia, ib) -> bool:
    """For a monic span, a commuting square is a pushout iff both legs are
    injective, they jointly cover P, and two elements meet in P exactly when
    they come from a common apex element."""
    f, g = span.left, span.right
    a, b = f.target, g.target
    for kind in ("v", "e"):
        am = ia.vmap if kind == "v" else ia.emap
        bm = ib.vmap if kind == "v" else ib.emap
        fm = f.vmap if kind == "v" else f.emap
        gm = g.vmap if kind == "v" else g.emap
        pel = set(p.vertices) if kind == "v" else {e.id for e in p.edges}
        if len(set(am.values())) != len(am) or len(set(bm.values())) != len(bm):
            return False
        if set(am.values()) | set(bm.values()) != pel:
            return False
        if any(am[fm[d]] != bm[gm[d]] for d in fm):
            return False
        meets = {(x, y) for x in am for y in bm if am[x] == bm[y]}
        if meets != {(fm[d], gm[d]) for d in fm}:
            return False
    for e in a.edges:
        pe = p.edge_map[ia.emap[e.id]]
        if (pe.src, pe.tgt) != (ia.vmap[e.src], ia.vmap[e.tgt]):
            return False
    for e in b.edges:
        pe = p.edge_map[ib.emap[e.id]]
        if (pe.src, pe.tgt) != (ib.vmap[e.src], ib.vmap[e.tgt]):
            return False
    return True


# --- rules ------------------------------------------------------------------


def disjoint_rule(r2: Rule, r1: Rule) -> Rule:
    """Side-by-side union of two rules (what composing along an empty overlap should give)."""
    o, oa, ob = disjoint_union(r2.output, r1.output)
    k, ka, kb = disjoint_union(r2.interface, r1.interface)
    i, ia, ib = disjoint_union(r2.input, r1.input)
    ko = {**{ka.vmap[x]: oa.vmap[r2.ko.vmap[x]] for x in ka.vmap}, **{kb.vmap[x]: ob.vmap[r1.ko.vmap[x]] for x in kb.vmap}}
    ki = {**{ka.vmap[x]: ia.vmap[r2.ki.vmap[x]] for x in ka.vmap}, **{kb.vmap[x]: ib.vmap[r1.ki.vmap[x]] for x in kb.vmap}}
    koe = {**{ka.emap[x]: oa.emap[r2.ko.emap[x]] for x in ka.emap}, **{kb.emap[x]: ob.emap[r1.ko.emap[x]] for x in kb.emap}}
    kie = {**{ka.emap[x]: ia.emap[r2.ki.emap[x]] for x in ka.emap}, **{kb.emap[x]: ib.emap[r1.ki.emap[x]] for x in kb.emap}}
    return Rule(o, k, i, Morphism(k, o, ko, koe), Morphism(k, i, ki, kie))
