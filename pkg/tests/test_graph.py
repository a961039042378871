import pytest
from hypothesis import given, strategies as st

from oracles import brute_iso_by_vertices, brute_monos
from resqpo.generators import random_graph, rng, shuffle_ids
from resqpo.graph import (
    Edge,
    Graph,
    Morphism,
    MorphismError,
    cycle,
    discrete,
    disjoint_union,
    enumerate_monos,
    exists_mono,
    find_isomorphism,
    is_homomorphism,
    is_isomorphic,
    path,
    validate_graph,
)

seeds = st.integers(min_value=0, max_value=10**6)


def _images(ms, p):
    return {(tuple(m.vmap[v] for v in p.vertices), tuple(m.emap[e.id] for e in p.edges)) for m in ms}


def test_builders():
    assert path(2).size == (3, 2)
    assert cycle(1).edges[0].src == cycle(1).edges[0].tgt
    assert discrete(3).size == (3, 0)
    assert path(0).size == (1, 0)


def test_validate_graph_reports_problems():
    g = Graph(("a", "a"), (Edge("e", "a", "zz"),))
    problems = validate_graph(g)
    assert any("duplicate vertex" in p for p in problems)
    assert any("unknown target" in p for p in problems)
    assert validate_graph(path(3)) == []
    with pytest.raises(ValueError):
        Graph.build(["a"], [("e", "a", "b")])


def test_homomorphism_checks():
    p = path(1)
    loop = cycle(1)
    collapse = Morphism(p, loop, {"v0": "v0", "v1": "v0"}, {"e0": "e0"})
    assert is_homomorphism(collapse)
    assert not collapse.is_monic
    wrong = Morphism(p, path(1), {"v0": "v1", "v1": "v0"}, {"e0": "e0"})
    assert not is_homomorphism(wrong)
    with pytest.raises(MorphismError):
        is_homomorphism(Morphism(p, loop, {"v0": "v0"}, {"e0": "e0"}))


def test_mono_counts_on_examples():
    assert len(enumerate_monos(path(1), cycle(3))) == 3
    assert len(enumerate_monos(path(1), path(1))) == 1
    # parallel edges give two edge choices
    par = Graph.build(["x", "y"], [("a", "x", "y"), ("b", "x", "y")])
    assert len(enumerate_monos(path(1), par)) == 2
    assert len(enumerate_monos(discrete(2), discrete(3))) == 6
    assert enumerate_monos(Graph(), path(2))[0].vmap == {}
    assert not exists_mono(discrete(3), discrete(2))


def test_seeded_monos_extend_the_seed():
    ms = enumerate_monos(path(1), cycle(4), vseed={"v0": "v2"})
    assert [m.vmap for m in ms] == [{"v0": "v2", "v1": "v3"}]


@given(seeds)
def test_monos_match_brute_force(seed):
    r = rng(seed)
    p = random_graph(r, 3, 3)
    h = random_graph(r, 4, 5)
    ms = enumerate_monos(p, h)
    assert _images(ms, p) == brute_monos(p, h)
    assert all(is_homomorphism(m) and m.is_monic for m in ms)


@given(seeds)
def test_monos_invariant_under_renaming(seed):
    r = rng(seed)
    p, h = random_graph(r, 3, 3), random_graph(r, 4, 5)
    p2, _ = shuffle_ids(p, r)
    h2, _ = shuffle_ids(h, r)
    assert len(enumerate_monos(p, h)) == len(enumerate_monos(p2, h2))


@given(seeds)
def test_isomorphism_matches_vertex_permutation_oracle(seed):
    r = rng(seed)
    a = random_graph(r, 4, 4)
    b = random_graph(r, 4, 4) if seed % 2 else shuffle_ids(a, r)[0]
    iso = find_isomorphism(a, b)
    assert (iso is not None) == brute_iso_by_vertices(a, b)
    if iso is not None:
        assert iso.is_iso and is_homomorphism(iso)


def test_composition_and_inverse():
    g = cycle(3)
    h, iso = shuffle_ids(g, rng(1))
    back = iso.inverse()
    assert iso.then(back) == g.identity()
    assert is_isomorphic(g, h)


def test_disjoint_union():
    u, ia, ib = disjoint_union(path(1), cycle(1))
    assert u.size == (3, 2)
    assert set(ia.vmap.values()).isdisjoint(ib.vmap.values())
