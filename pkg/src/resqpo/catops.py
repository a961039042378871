"""Pushouts, pullbacks and the complements used by SqPO rewriting, plus square checks.

Everything here assumes monic legs where the rewriting theory does; the
square checkers work for arbitrary commuting squares.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .graph import Cospan, Edge, Graph, MonicSpan, Morphism, MorphismError


def _require_monic(*maps: Morphism) -> None:
    for m in maps:
        if not m.is_monic:
            raise MorphismError("expected a monomorphism")


def _commutes(f: Morphism, h: Morphism, g: Morphism, k: Morphism) -> bool:
    """True iff ``h ∘ f == k ∘ g`` (both as maps on the shared source)."""
    return all(h.vmap[f.vmap[x]] == k.vmap[g.vmap[x]] for x in f.vmap) and all(
        h.emap[f.emap[x]] == k.emap[g.emap[x]] for x in f.emap
    )


class _UnionFind:
    def __init__(self, items) -> None:
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _class_name(members: List[Tuple[int, str]]) -> str:
    sides = {s for s, _ in members}
    if sides == {0}:
        return "a:" + min(x for _, x in members)
    if sides == {1}:
        return "b:" + min(x for _, x in members)
    return "q:" + min(x for s, x in members if s == 0)


def _pushout(f: Morphism, g: Morphism) -> Tuple[Graph, Morphism, Morphism]:
    """Quotient of ``A ⊎ B`` by the identifications generated by ``f: D->A``, ``g: D->B``."""
    a, b = f.target, g.target
    uv = _UnionFind([(0, v) for v in a.vertices] + [(1, v) for v in b.vertices])
    ue = _UnionFind([(0, e.id) for e in a.edges] + [(1, e.id) for e in b.edges])
    for x in f.vmap:
        uv.union((0, f.vmap[x]), (1, g.vmap[x]))
    for x in f.emap:
        ue.union((0, f.emap[x]), (1, g.emap[x]))

    def names(uf: _UnionFind) -> Dict[Tuple[int, str], str]:
        groups: Dict[Tuple[int, str], List[Tuple[int, str]]] = {}
        for item in uf.parent:
            groups.setdefault(uf.find(item), []).append(item)
        out = {}
        for members in groups.values():
            name = _class_name(members)
            for m in members:
                out[m] = name
        return out

    vname, ename = names(uv), names(ue)
    vertices: List[str] = []
    for key in [(0, v) for v in a.vertices] + [(1, v) for v in b.vertices]:
        if vname[key] not in vertices:
            vertices.append(vname[key])
    seen = set()
    edges: List[Edge] = []
    for side, g_ in ((0, a), (1, b)):
        for e in g_.edges:
            n = ename[(side, e.id)]
            if n not in seen:
                seen.add(n)
                edges.append(Edge(n, vname[(side, e.src)], vname[(side, e.tgt)]))
    p = Graph(tuple(dict.fromkeys(vertices)), tuple(edges))
    left = Morphism(a, p, {v: vname[(0, v)] for v in a.vertices}, {e.id: ename[(0, e.id)] for e in a.edges})
    right = Morphism(b, p, {v: vname[(1, v)] for v in b.vertices}, {e.id: ename[(1, e.id)] for e in b.edges})
    return p, left, right


def pushout(span: MonicSpan) -> Tuple[Graph, Morphism, Morphism]:
    """Pushout of ``A <- D -> B``; returns ``(P, A->P, B->P)``.

    Ids of the result: ``a:x`` for elements only in A, ``b:y`` for elements
    only in B, ``q:x`` for glued classes (named by their A element).
    """
    return _pushout(span.left, span.right)


def pushout_along(f: Morphism, g: Morphism) -> Tuple[Graph, Morphism, Morphism]:
    """Pushout of the monic span given by its two legs."""
    return pushout(MonicSpan(f, g))


def pullback(cospan: Cospan) -> Tuple[Graph, Morphism, Morphism]:
    """Intersection of the images of two monos into a common target.

    The apex reuses the ids of the left object, so the left leg is an inclusion.
    """
    h, k = cospan.left, cospan.right
    _require_monic(h, k)
    kv = {w: y for y, w in k.vmap.items()}
    ke = {w: y for y, w in k.emap.items()}
    a = h.source
    vs = [v for v in a.vertices if h.vmap[v] in kv]
    es = [e.id for e in a.edges if h.emap[e.id] in ke]
    d = a.subgraph(vs, es)
    left = a.inclusion(d)
    right = Morphism(d, k.source, {v: kv[h.vmap[v]] for v in vs}, {e: ke[h.emap[e]] for e in es})
    return d, left, right


def pushout_complement(k_to_o: Morphism, o_to_n: Morphism) -> Optional[Tuple[Graph, Morphism, Morphism]]:
    """``K'`` with ``K -> K' -> N`` completing a pushout, or ``None`` if an edge would dangle."""
    _require_monic(k_to_o, o_to_n)
    o, n = o_to_n.source, o_to_n.target
    kept_v = set(k_to_o.vmap.values())
    kept_e = set(k_to_o.emap.values())
    del_v = {o_to_n.vmap[v] for v in o.vertices if v not in kept_v}
    del_e = {o_to_n.emap[e.id] for e in o.edges if e.id not in kept_e}
    for e in n.edges:
        if e.id not in del_e and (e.src in del_v or e.tgt in del_v):
            return None
    kp = n.subgraph([v for v in n.vertices if v not in del_v], [e.id for e in n.edges if e.id not in del_e])
    k_to_kp = k_to_o.then(o_to_n)
    k_to_kp = Morphism(k_to_o.source, kp, k_to_kp.vmap, k_to_kp.emap)
    return kp, k_to_kp, n.inclusion(kp)


def final_pullback_complement(k_to_i: Morphism, i_to_x: Morphism) -> Tuple[Graph, Morphism, Morphism]:
    """Delete the image of ``I \\ K`` from X together with every edge incident to a deleted vertex."""
    _require_monic(k_to_i, i_to_x)
    i, x = i_to_x.source, i_to_x.target
    kept_v = set(k_to_i.vmap.values())
    kept_e = set(k_to_i.emap.values())
    del_v = {i_to_x.vmap[v] for v in i.vertices if v not in kept_v}
    del_e = {i_to_x.emap[e.id] for e in i.edges if e.id not in kept_e}
    xb = x.subgraph(
        [v for v in x.vertices if v not in del_v],
        [e.id for e in x.edges if e.id not in del_e and e.src not in del_v and e.tgt not in del_v],
    )
    comp = k_to_i.then(i_to_x)
    return xb, Morphism(k_to_i.source, xb, comp.vmap, comp.emap), x.inclusion(xb)


def is_pushout_square(f: Morphism, g: Morphism, h: Morphism, k: Morphism) -> bool:
    """Square ``f: D->A, g: D->B, h: A->P, k: B->P``.

    Compares ``P`` against the constructed pushout of ``(f, g)`` via the
    canonical comparison map; the square is a pushout iff that map is an iso.
    """
    if not _commutes(f, h, g, k):
        raise MorphismError("square does not commute")
    q, qa, qb = _pushout(f, g)
    vm: Dict[str, str] = {}
    em: Dict[str, str] = {}
    for leg, out in ((qa, h), (qb, k)):
        for x, y in leg.vmap.items():
            vm[y] = out.vmap[x]
        for x, y in leg.emap.items():
            em[y] = out.emap[x]
    return Morphism(q, h.target, vm, em).is_iso


def is_pullback_square(f: Morphism, g: Morphism, h: Morphism, k: Morphism) -> bool:
    """Square ``f: D->A, g: D->B, h: A->C, k: B->C``; pullback iff ``d -> (f d, g d)``
    is a bijection onto the pairs over a common element of C."""
    if not _commutes(f, h, g, k):
        raise MorphismError("square does not commute")
    a, b = h.source, k.source
    pv = {(x, y) for x in a.vertices for y in b.vertices if h.vmap[x] == k.vmap[y]}
    pe = {(x.id, y.id) for x in a.edges for y in b.edges if h.emap[x.id] == k.emap[y.id]}
    dv = [(f.vmap[d], g.vmap[d]) for d in f.vmap]
    de = [(f.emap[d], g.emap[d]) for d in f.emap]
    return len(set(dv)) == len(dv) == len(pv) and set(dv) == pv and len(set(de)) == len(de) == len(pe) and set(
        de
    ) == pe


def is_final_pullback_complement(
    k_to_i: Morphism, k_to_xb: Morphism, i_to_x: Morphism, xb_to_x: Morphism
) -> bool:
    """Brute-force finality check; intended for small test instances.

    For every pullback complement ``K -> P -> X`` with ``P`` a subgraph of X
    containing the image of K, a mediating map into ``X̄`` must exist.
    Subgraph complements suffice because any mono ``P -> X`` factors through
    its image.
    """
    from itertools import combinations

    if not is_pullback_square(k_to_i, k_to_xb, i_to_x, xb_to_x):
        return False
    x = i_to_x.target
    xb_v, xb_e = xb_to_x.image()
    base_v = set(k_to_i.then(i_to_x).vmap.values())
    base_e = set(k_to_i.then(i_to_x).emap.values())
    free_v = [v for v in x.vertices if v not in base_v]
    free_e = [e for e in x.edges if e.id not in base_e]
    for r in range(len(free_v) + 1):
        for vs in combinations(free_v, r):
            vset = base_v | set(vs)
            cand_e = [e.id for e in free_e if e.src in vset and e.tgt in vset]
            for s in range(len(cand_e) + 1):
                for es in combinations(cand_e, s):
                    p = x.subgraph(vset, base_e | set(es))
                    p_to_x = x.inclusion(p)
                    comp = k_to_i.then(i_to_x)
                    k_to_p = Morphism(k_to_i.source, p, comp.vmap, comp.emap)
                    if not is_pullback_square(k_to_i, k_to_p, i_to_x, p_to_x):
                        continue
                    if not (set(p.vertices) <= xb_v and {e.id for e in p.edges} <= xb_e):
                        return False
    return True
