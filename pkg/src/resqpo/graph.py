"""Finite directed multigraphs, morphisms and monomorphism search."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple


class MorphismError(ValueError):
    """Raised for maps that are not total, not monic where required, or mismatched."""


class Edge(NamedTuple):
    id: str
    src: str
    tgt: str


class _Index:
    """Adjacency lists keyed by id; the matcher works on this shape only."""

    __slots__ = ("vertices", "edges", "src", "tgt", "out", "inc")

    def __init__(self) -> None:
        self.vertices: List[str] = []
        self.edges: List[str] = []
        self.src: Dict[str, str] = {}
        self.tgt: Dict[str, str] = {}
        self.out: Dict[str, List[str]] = {}
        self.inc: Dict[str, List[str]] = {}

    def add_vertex(self, v: str) -> None:
        self.vertices.append(v)
        self.out[v] = []
        self.inc[v] = []

    def add_edge(self, e: str, s: str, t: str) -> None:
        self.edges.append(e)
        self.src[e] = s
        self.tgt[e] = t
        self.out[s].append(e)
        self.inc[t].append(e)

    def pop_edge(self) -> None:
        e = self.edges.pop()
        self.out[self.src.pop(e)].pop()
        self.inc[self.tgt.pop(e)].pop()

    def pop_vertex(self) -> None:
        v = self.vertices.pop()
        del self.out[v], self.inc[v]


@dataclass(frozen=True)
class Graph:
    """Immutable directed multigraph.

    Construction does not validate; use :func:`validate_graph` or
    :meth:`Graph.build`, which raises on invalid input.
    """

    vertices: Tuple[str, ...] = ()
    edges: Tuple[Edge, ...] = ()

    @classmethod
    def build(cls, vertices: Iterable[str] = (), edges: Iterable[Sequence[str]] = ()) -> "Graph":
        g = cls(tuple(vertices), tuple(Edge(*e) for e in edges))
        problems = validate_graph(g)
        if problems:
            raise ValueError("invalid graph: " + "; ".join(problems))
        return g

    @cached_property
    def index(self) -> _Index:
        idx = _Index()
        for v in sorted(self.vertices):
            idx.add_vertex(v)
        for e in sorted(self.edges):
            idx.add_edge(e.id, e.src, e.tgt)
        return idx

    @cached_property
    def edge_map(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @property
    def vertex_ids(self) -> List[str]:
        return self.index.vertices

    @property
    def edge_ids(self) -> List[str]:
        return self.index.edges

    def src(self, e: str) -> str:
        return self.edge_map[e].src

    def tgt(self, e: str) -> str:
        return self.edge_map[e].tgt

    @property
    def size(self) -> Tuple[int, int]:
        return len(self.vertices), len(self.edges)

    def is_empty(self) -> bool:
        return not self.vertices and not self.edges

    def subgraph(self, vertices: Iterable[str], edges: Iterable[str] = ()) -> "Graph":
        vs = set(vertices)
        es = set(edges)
        return Graph(
            tuple(v for v in self.vertices if v in vs),
            tuple(e for e in self.edges if e.id in es),
        )

    def inclusion(self, sub: "Graph") -> "Morphism":
        """Identity-named inclusion of a subgraph built by :meth:`subgraph`."""
        return Morphism(sub, self, {v: v for v in sub.vertices}, {e.id: e.id for e in sub.edges})

    def identity(self) -> "Morphism":
        return self.inclusion(self)

    def relabel(self, vmap: Mapping[str, str], emap: Mapping[str, str]) -> Tuple["Graph", "Morphism"]:
        """Rename ids; returns the renamed graph and the iso ``self -> renamed``."""
        g = Graph(
            tuple(vmap[v] for v in self.vertices),
            tuple(Edge(emap[e.id], vmap[e.src], vmap[e.tgt]) for e in self.edges),
        )
        return g, Morphism(self, g, dict(vmap), dict(emap))

    def degree_profile(self) -> Tuple:
        idx = self.index
        degs = Counter(
            (len(idx.out[v]), len(idx.inc[v]), sum(1 for e in idx.out[v] if idx.tgt[e] == v))
            for v in idx.vertices
        )
        return tuple(sorted(degs.items()))


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Graph
    target: Graph
    vmap: Dict[str, str] = field(default_factory=dict)
    emap: Dict[str, str] = field(default_factory=dict)

    @property
    def is_monic(self) -> bool:
        return len(set(self.vmap.values())) == len(self.vmap) and len(set(self.emap.values())) == len(self.emap)

    @property
    def is_iso(self) -> bool:
        return (
            self.is_monic
            and len(self.vmap) == len(self.target.vertices)
            and len(self.emap) == len(self.target.edges)
        )

    def then(self, other: "Morphism") -> "Morphism":
        """Composite ``other ∘ self``."""
        return Morphism(
            self.source,
            other.target,
            {v: other.vmap[w] for v, w in self.vmap.items()},
            {e: other.emap[f] for e, f in self.emap.items()},
        )

    def inverse(self) -> "Morphism":
        if not self.is_iso:
            raise MorphismError("only isomorphisms can be inverted")
        return Morphism(
            self.target,
            self.source,
            {w: v for v, w in self.vmap.items()},
            {f: e for e, f in self.emap.items()},
        )

    def key(self) -> Tuple:
        return (tuple(sorted(self.vmap.items())), tuple(sorted(self.emap.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.vmap == other.vmap
            and self.emap == other.emap
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def image(self) -> Tuple[set, set]:
        return set(self.vmap.values()), set(self.emap.values())


@dataclass(frozen=True)
class Cospan:
    left: Morphism
    right: Morphism

    def __post_init__(self) -> None:
        if self.left.target != self.right.target:
            raise MorphismError("cospan legs must share their target")


@dataclass(frozen=True)
class MonicSpan:
    left: Morphism
    right: Morphism

    def __post_init__(self) -> None:
        if self.left.source != self.right.source:
            raise MorphismError("span legs must share their source")
        if not (self.left.is_monic and self.right.is_monic):
            raise MorphismError("span legs must be monic")

    @property
    def apex(self) -> Graph:
        return self.left.source


def validate_graph(g: Graph) -> List[str]:
    """Return the list of invariant violations; an empty list means the graph is valid."""
    problems = []
    seen = set()
    for v in g.vertices:
        if v in seen:
            problems.append(f"duplicate vertex id {v!r}")
        seen.add(v)
    seen_e = set()
    for e in g.edges:
        if e.id in seen_e:
            problems.append(f"duplicate edge id {e.id!r}")
        seen_e.add(e.id)
        if e.src not in seen:
            problems.append(f"edge {e.id!r} has unknown source {e.src!r}")
        if e.tgt not in seen:
            problems.append(f"edge {e.id!r} has unknown target {e.tgt!r}")
    return problems


def is_homomorphism(m: Morphism) -> bool:
    if set(m.vmap) != set(m.source.vertices) or set(m.emap) != {e.id for e in m.source.edges}:
        raise MorphismError("map not total")
    tv = set(m.target.vertices)
    tgt_edges = m.target.edge_map
    if any(w not in tv for w in m.vmap.values()):
        return False
    for e in m.source.edges:
        f = tgt_edges.get(m.emap[e.id])
        if f is None or f.src != m.vmap[e.src] or f.tgt != m.vmap[e.tgt]:
            return False
    return True


# --- monomorphism search -------------------------------------------------


def _plan(pattern: _Index, seeded: Iterable[str]) -> List[Tuple[str, str]]:
    """Order pattern edges so each one touches an already placed vertex when possible."""
    placed = set(seeded)
    todo = list(pattern.edges)
    steps: List[Tuple[str, str]] = []
    while todo:
        best = 0
        for i, e in enumerate(todo):
            if pattern.src[e] in placed or pattern.tgt[e] in placed:
                best = i
                break
        e = todo.pop(best)
        steps.append(("e", e))
        placed.add(pattern.src[e])
        placed.add(pattern.tgt[e])
    steps.extend(("v", v) for v in pattern.vertices if v not in placed)
    return steps


def iter_monos(
    pattern: _Index,
    host: _Index,
    vseed: Optional[Mapping[str, str]] = None,
    eseed: Optional[Mapping[str, str]] = None,
) -> Iterator[Tuple[Dict[str, str], Dict[str, str]]]:
    """Yield monic homomorphisms ``pattern -> host`` extending the given seeds.

    Works on raw indexes so callers holding a mutable working graph can use it.
    Yielded dicts are live; copy them if they must outlive the iteration step.
    """
    vmap: Dict[str, str] = dict(vseed or {})
    emap: Dict[str, str] = {}
    used_v = set(vmap.values())
    if len(used_v) != len(vmap):
        return
    used_e: set = set()
    for pe, he in (eseed or {}).items():
        if he in used_e or he not in host.src:
            return
        for pv, hv in ((pattern.src[pe], host.src[he]), (pattern.tgt[pe], host.tgt[he])):
            cur = vmap.get(pv)
            if cur is None:
                if hv in used_v:
                    return
                vmap[pv] = hv
                used_v.add(hv)
            elif cur != hv:
                return
        emap[pe] = he
        used_e.add(he)
    steps = [s for s in _plan(pattern, vmap) if not (s[0] == "e" and s[1] in emap)]
    yield from _extend(pattern, host, steps, 0, vmap, emap, used_v, used_e)


def _extend(pattern, host, steps, i, vmap, emap, used_v, used_e):
    if i == len(steps):
        yield vmap, emap
        return
    kind, x = steps[i]
    if kind == "v":
        for hv in host.vertices:
            if hv in used_v:
                continue
            vmap[x] = hv
            used_v.add(hv)
            yield from _extend(pattern, host, steps, i + 1, vmap, emap, used_v, used_e)
            used_v.discard(hv)
            del vmap[x]
        return
    ps, pt = pattern.src[x], pattern.tgt[x]
    hs, ht = vmap.get(ps), vmap.get(pt)
    loop = ps == pt
    if hs is not None:
        cands = host.out[hs]
    elif ht is not None:
        cands = host.inc[ht]
    else:
        cands = host.edges
    for he in cands:
        if he in used_e:
            continue
        s, t = host.src[he], host.tgt[he]
        if loop:
            if s != t:
                continue
        elif s == t:
            continue
        if hs is not None:
            if s != hs:
                continue
        elif s in used_v:
            continue
        if ht is not None:
            if t != ht:
                continue
        elif t in used_v:
            continue
        new_v = []
        if hs is None:
            vmap[ps] = s
            used_v.add(s)
            new_v.append(ps)
        if ht is None and not loop:
            vmap[pt] = t
            used_v.add(t)
            new_v.append(pt)
        emap[x] = he
        used_e.add(he)
        yield from _extend(pattern, host, steps, i + 1, vmap, emap, used_v, used_e)
        used_e.discard(he)
        del emap[x]
        for pv in new_v:
            used_v.discard(vmap.pop(pv))


def enumerate_monos(
    pattern: Graph,
    host: Graph,
    vseed: Optional[Mapping[str, str]] = None,
    eseed: Optional[Mapping[str, str]] = None,
) -> List[Morphism]:
    """All monomorphisms ``pattern -> host`` (extending optional seeds), sorted canonically."""
    found = [
        (tuple(vm[v] for v in pattern.vertex_ids), tuple(em[e] for e in pattern.edge_ids), dict(vm), dict(em))
        for vm, em in iter_monos(pattern.index, host.index, vseed, eseed)
    ]
    found.sort(key=lambda r: (r[0], r[1]))
    return [Morphism(pattern, host, vm, em) for _, _, vm, em in found]


def exists_mono(
    pattern: Graph,
    host: Graph,
    vseed: Optional[Mapping[str, str]] = None,
    eseed: Optional[Mapping[str, str]] = None,
) -> bool:
    return next(iter_monos(pattern.index, host.index, vseed, eseed), None) is not None


def iter_isomorphisms(
    a: Graph, b: Graph, vseed: Optional[Mapping[str, str]] = None, eseed: Optional[Mapping[str, str]] = None
) -> Iterator[Morphism]:
    if a.size != b.size or a.degree_profile() != b.degree_profile():
        return
    for vm, em in iter_monos(a.index, b.index, vseed, eseed):
        yield Morphism(a, b, dict(vm), dict(em))


def find_isomorphism(a: Graph, b: Graph) -> Optional[Morphism]:
    return next(iter_isomorphisms(a, b), None)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    return find_isomorphism(a, b) is not None


def disjoint_union(a: Graph, b: Graph) -> Tuple[Graph, Morphism, Morphism]:
    """Coproduct with ``a:``/``b:`` prefixed ids."""
    u = Graph(
        tuple("a:" + v for v in a.vertices) + tuple("b:" + v for v in b.vertices),
        tuple(Edge("a:" + e.id, "a:" + e.src, "a:" + e.tgt) for e in a.edges)
        + tuple(Edge("b:" + e.id, "b:" + e.src, "b:" + e.tgt) for e in b.edges),
    )
    ia = Morphism(a, u, {v: "a:" + v for v in a.vertices}, {e.id: "a:" + e.id for e in a.edges})
    ib = Morphism(b, u, {v: "b:" + v for v in b.vertices}, {e.id: "b:" + e.id for e in b.edges})
    return u, ia, ib


def path(n: int, prefix: str = "") -> Graph:
    """Directed path with ``n`` edges."""
    vs = [f"{prefix}v{i}" for i in range(n + 1)]
    return Graph(tuple(vs), tuple(Edge(f"{prefix}e{i}", vs[i], vs[i + 1]) for i in range(n)))


def cycle(n: int, prefix: str = "") -> Graph:
    """Directed cycle with ``n`` edges (``n == 1`` is a single self-loop)."""
    vs = [f"{prefix}v{i}" for i in range(n)]
    return Graph(tuple(vs), tuple(Edge(f"{prefix}e{i}", vs[i], vs[(i + 1) % n]) for i in range(n)))


def discrete(n: int, prefix: str = "") -> Graph:
    return Graph(tuple(f"{prefix}v{i}" for i in range(n)))
