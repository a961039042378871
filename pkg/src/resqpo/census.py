"""Isomorphism classes of rigid graphs, counted by number of vertices.

Graphs are assembled from their connected components (isolated vertices,
directed paths, directed cycles, each vertex optionally carrying one
self-loop) and then deduplicated with :func:`find_isomorphism`.
"""
from __future__ import annotations

from itertools import product
from typing import Dict, List, Tuple

from .graph import Edge, Graph, find_isomorphism


def _decorated(base: Graph, loops: Tuple[int, ...], prefix: str) -> Graph:
    vs = tuple(prefix + v for v in base.vertices)
    es = [Edge(prefix + e.id, prefix + e.src, prefix + e.tgt) for e in base.edges]
    es += [Edge(f"{prefix}l{i}", vs[i], vs[i]) for i, bit in enumerate(loops) if bit]
    return Graph(vs, tuple(es))


def _min_rotation(bits: Tuple[int, ...]) -> Tuple[int, ...]:
    return min(bits[i:] + bits[:i] for i in range(len(bits)))


def components(m: int, loopless: bool = True) -> List[Tuple[str, int, Tuple[int, ...]]]:
    """Connected rigid component shapes on ``m`` vertices as ``(kind, m, loop bits)``."""
    if m < 1:
        return []
    decorations = [tuple([0] * m)] if loopless else list(product((0, 1), repeat=m))
    shapes: List[Tuple[str, int, Tuple[int, ...]]] = []
    if m == 1:
        shapes += [("vertex", 1, d) for d in decorations]
    else:
        shapes += [("path", m, d) for d in decorations]
        # cycles only need one decoration per rotation class
        shapes += [("cycle", m, d) for d in sorted({_min_rotation(d) for d in decorations})]
    return shapes


def _component_graph(shape: Tuple[str, int, Tuple[int, ...]], prefix: str) -> Graph:
    kind, m, loops = shape
    vs = tuple(f"v{i}" for i in range(m))
    if kind == "vertex":
        base = Graph(vs)
    elif kind == "path":
        base = Graph(vs, tuple(Edge(f"e{i}", vs[i], vs[i + 1]) for i in range(m - 1)))
    else:
        base = Graph(vs, tuple(Edge(f"e{i}", vs[i], vs[(i + 1) % m]) for i in range(m)))
    return _decorated(base, loops, prefix)


def _multisets(k: int, shapes: List[Tuple], start: int = 0) -> List[List[int]]:
    """Non-decreasing index lists of shapes whose vertex counts sum to ``k``."""
    if k == 0:
        return [[]]
    out = []
    for i in range(start, len(shapes)):
        m = shapes[i][1]
        if m <= k:
            out += [[i] + rest for rest in _multisets(k - m, shapes, i)]
    return out


def rigid_graphs(k: int, loopless: bool = True) -> List[Graph]:
    """One representative per isomorphism class of rigid graphs with ``k`` vertices."""
    shapes = [s for m in range(1, k + 1) for s in components(m, loopless)]
    reps: Dict[Tuple, List[Graph]] = {}
    for combo in _multisets(k, shapes):
        vs: Tuple[str, ...] = ()
        es: Tuple[Edge, ...] = ()
        for j, i in enumerate(combo):
            c = _component_graph(shapes[i], f"c{j}.")
            vs += c.vertices
            es += c.edges
        g = Graph(vs, es)
        bucket = reps.setdefault((g.size, g.degree_profile()), [])
        if not any(find_isomorphism(g, h) is not None for h in bucket):
            bucket.append(g)
    return [g for bucket in reps.values() for g in bucket]


def census(max_vertices: int, loopless: bool = True) -> List[int]:
    return [len(rigid_graphs(k, loopless)) for k in range(max_vertices + 1)]
