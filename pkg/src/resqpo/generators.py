"""Seeded random instances for property suites and fuzzing.

All generators take a ``random.Random``; :func:`rng` builds one from the
``RESQPO_SEED`` environment variable so a failing run can be replayed.
"""
from __future__ import annotations

import os
import random
from functools import lru_cache
from typing import List, Optional, Tuple

from .census import rigid_graphs
from .graph import Edge, Graph, Morphism, MonicSpan
from .overlaps import SpanPredicate, span_to_monic_span

DEFAULT_SEED = 20200614


def rng(offset: int = 0) -> random.Random:
    seed = int(os.environ.get("RESQPO_SEED", DEFAULT_SEED))
    return random.Random(seed + offset)


def _fresh_names(r: random.Random, n: int, tag: str) -> List[str]:
    # sampled names make sure nothing relies on the v0/e0 convention
    return [f"{tag}{k}" for k in r.sample(range(10 * n + 10), n)]


def shuffle_ids(g: Graph, r: random.Random) -> Tuple[Graph, Morphism]:
    """Random renaming and reordering of ``g``; returns the copy and the iso ``g -> copy``."""
    vn = _fresh_names(r, len(g.vertices), "x")
    en = _fresh_names(r, len(g.edges), "f")
    vmap = dict(zip(g.vertices, vn))
    emap = dict(zip((e.id for e in g.edges), en))
    h, iso = g.relabel(vmap, emap)
    vs = list(h.vertices)
    es = list(h.edges)
    r.shuffle(vs)
    r.shuffle(es)
    h = Graph(tuple(vs), tuple(es))
    return h, Morphism(g, h, iso.vmap, iso.emap)


def random_graph(r: random.Random, max_vertices: int = 4, max_edges: int = 4, min_vertices: int = 0) -> Graph:
    """Arbitrary multigraph, loops and parallel edges allowed."""
    n = r.randint(min_vertices, max_vertices)
    vs = tuple(f"v{i}" for i in range(n))
    m = r.randint(0, max_edges) if n else 0
    es = tuple(Edge(f"e{i}", r.choice(vs), r.choice(vs)) for i in range(m))
    return Graph(vs, es)


@lru_cache(maxsize=None)
def _rigid_pool(max_vertices: int, loopless: bool) -> Tuple[Graph, ...]:
    return tuple(g for k in range(max_vertices + 1) for g in rigid_graphs(k, loopless))


def random_rigid_graph(r: random.Random, max_vertices: int = 4, max_edges: Optional[int] = None,
                       loopless: bool = False) -> Graph:
    pool = [g for g in _rigid_pool(max_vertices, loopless) if max_edges is None or len(g.edges) <= max_edges]
    return shuffle_ids(r.choice(pool), r)[0]


def random_subgraph(g: Graph, r: random.Random) -> Graph:
    vs = [v for v in g.vertices if r.random() < 0.6]
    keep = set(vs)
    es = [e.id for e in g.edges if e.src in keep and e.tgt in keep and r.random() < 0.6]
    return g.subgraph(vs, es)


def random_mono_into(target: Graph, r: random.Random) -> Morphism:
    """A random mono ``S -> target`` whose source is a renamed random subgraph."""
    sub = random_subgraph(target, r)
    copy, iso = shuffle_ids(sub, r)
    return iso.inverse().then(target.inclusion(sub))


def random_mono_out_of(source: Graph, r: random.Random, extra_vertices: int = 2, extra_edges: int = 2) -> Morphism:
    """A random mono ``source -> T`` where ``T`` adds a few vertices and edges."""
    vs = list(source.vertices) + [f"new{i}" for i in range(r.randint(0, extra_vertices))]
    es = list(source.edges)
    if vs:
        es += [Edge(f"newe{i}", r.choice(vs), r.choice(vs)) for i in range(r.randint(0, extra_edges))]
    big = Graph(tuple(vs), tuple(es))
    copy, iso = shuffle_ids(big, r)
    return big.inclusion(source).then(iso)


def random_span_predicate(a: Graph, b: Graph, r: random.Random) -> SpanPredicate:
    """Random bi-injective relation closed under edge endpoints."""
    bv = list(b.vertices)
    r.shuffle(bv)
    pv = {}
    for v in a.vertices:
        if bv and r.random() < 0.6:
            pv[v] = bv.pop()
    pe = {}
    used = set()
    edges = list(a.edges)
    r.shuffle(edges)
    for e in edges:
        if e.src not in pv or e.tgt not in pv:
            continue
        options = [f for f in b.edges if f.id not in used and f.src == pv[e.src] and f.tgt == pv[e.tgt]]
        if options and r.random() < 0.7:
            f = r.choice(options)
            pe[e.id] = f.id
            used.add(f.id)
    return SpanPredicate(a, b, frozenset(pv.items()), frozenset(pe.items()))


def random_monic_span(r: random.Random, max_vertices: int = 4, rigid: bool = True) -> MonicSpan:
    if rigid:
        a = random_rigid_graph(r, max_vertices)
        b = random_rigid_graph(r, max_vertices)
    else:
        a = random_graph(r, max_vertices)
        b = random_graph(r, max_vertices)
    return span_to_monic_span(random_span_predicate(a, b, r))
