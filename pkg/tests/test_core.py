import json

import pytest
from hypothesis import given, strategies as st

from lcpw.core import (Graph, IdAssignment, LabeledInstance, Labeling, PortAssignment, View, bit_width,
                       canonical_key, count_port_assignments, cycle_graph, enumerate_id_assignments,
                       enumerate_port_assignments, extract_view, is_bipartite, path_graph,
                       shortest_odd_cycle, complete_graph, unlabeled)
from lcpw.classes import enumerate_connected_graphs

import oracles


@st.composite
def connected_graphs(draw, n_min=1, n_max=7):
    n = draw(st.integers(n_min, n_max))
    # random spanning tree plus extra edges
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in edges]
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), max_size=min(len(pairs), n), unique=True))
        edges.update(extra)
    return Graph.from_edges(n, edges)


@st.composite
def instances(draw, n_max=7, bits=3):
    g = draw(connected_graphs(n_max=n_max))
    order = tuple(tuple(draw(st.permutations(a))) for a in g.adj)
    N = g.n * g.n
    ids = tuple(draw(st.permutations(range(1, N + 1)))[:g.n]) if g.n else ()
    labels = tuple(draw(st.lists(st.integers(0, 2 ** bits - 1), min_size=g.n, max_size=g.n)))
    return LabeledInstance(g, PortAssignment(order), IdAssignment(ids, max(N, 1)), Labeling(labels, bits))


def test_bit_width():
    assert [bit_width(N) for N in (1, 2, 3, 4, 7, 8, 16, 25)] == [1, 2, 2, 3, 3, 4, 5, 5]


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_port_assignment_from_map_checks_bijection():
    g = path_graph(3)
    PortAssignment.from_map(g, {(0, 1): 1, (1, 0): 2, (1, 2): 1, (2, 1): 1}).validate(g)
    with pytest.raises(ValueError):
        PortAssignment.from_map(g, {(0, 1): 1, (1, 0): 1, (1, 2): 1, (2, 1): 1})


def test_id_assignment_validation():
    with pytest.raises(ValueError):
        IdAssignment((1, 1), 4)
    with pytest.raises(ValueError):
        IdAssignment((1, 5), 4)
    with pytest.raises(ValueError):
        list(enumerate_id_assignments(path_graph(4), 3))
    assert len(list(enumerate_id_assignments(path_graph(3), 9, "all-orderings"))) == 6


@given(connected_graphs(n_max=6))
def test_port_assignment_count(g):
    assert count_port_assignments(g) == oracles.ports_count(g)
    if oracles.ports_count(g) <= 300:
        seen = {p.order for p in enumerate_port_assignments(g)}
        assert len(seen) == oracles.ports_count(g)


@given(instances(), st.integers(0, 3))
def test_view_is_the_ball(inst, r):
    for v in range(inst.n):
        assert oracles.view_matches_ball(inst, v, r)


@given(instances(n_max=6))
def test_view_monotone_in_radius(inst):
    for v in range(inst.n):
        small = extract_view(inst, v, 1)
        big = extract_view(inst, v, 2)
        assert set(small.origin) <= set(big.origin)
        es_small = {frozenset((small.origin[a], small.origin[b])) for a, b, _, _ in small.edges}
        es_big = {frozenset((big.origin[a], big.origin[b])) for a, b, _, _ in big.edges}
        assert es_small <= es_big


def test_boundary_edges_excluded():
    inst = unlabeled(cycle_graph(3))
    mu = extract_view(inst, 0, 1)
    # the edge between the two neighbors lies at distance exactly 1
    assert len(mu.edges) == 2
    assert len(extract_view(inst, 0, 2).edges) == 3


@given(instances(n_max=5))
def test_canonical_key_separates_views(inst):
    views = [extract_view(inst, v, 1) for v in range(inst.n)]
    keys = [canonical_key(mu) for mu in views]
    for a in range(inst.n):
        for b in range(inst.n):
            assert (keys[a] == keys[b]) == (views[a] == views[b])
    # ids are unique, so distinct centers give distinct keys
    assert len(set(keys)) == inst.n


def test_canonical_key_ignores_instance_numbering():
    g = path_graph(3)
    a = LabeledInstance(g, PortAssignment.identity(g), IdAssignment((1, 2, 3), 9), Labeling((0, 1, 0), 1))
    perm = (2, 1, 0)  # an involution, so it is its own inverse
    h = g.relabel(perm)
    order = tuple(tuple(perm[u] for u in a.ports.order[perm[v]]) for v in range(3))
    b = LabeledInstance(h, PortAssignment(order), IdAssignment((3, 2, 1), 9), Labeling((0, 1, 0), 1))
    assert canonical_key(extract_view(a, 1, 1)) == canonical_key(extract_view(b, 1, 1))


@given(instances())
def test_json_roundtrip(inst):
    text = inst.to_json()
    back = LabeledInstance.from_json(text)
    assert back == inst
    assert back.to_json() == text
    assert list(json.loads(text))[:6] == ["n", "edges", "ports", "ids", "labels", "label_bits"]


@pytest.mark.parametrize("n", range(1, 7))
def test_bipartite_against_networkx(n):
    for g in enumerate_connected_graphs(n):
        res = is_bipartite(g)
        assert res.ok == oracles.bipartite(g)
        if res.ok:
            assert all(res.coloring[u] != res.coloring[v] for u, v in g.edges)
        else:
            cyc = res.odd_cycle
            assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
            assert all((min(a, b), max(a, b)) in g.edges for a, b in zip(cyc, cyc[1:] + cyc[:1]))


@given(connected_graphs(n_min=3, n_max=8))
def test_bipartite_fuzz(g):
    assert is_bipartite(g).ok == oracles.bipartite(g)


def test_shortest_odd_cycle():
    assert shortest_odd_cycle(range(4), {v: [u for u in range(4) if u != v] for v in range(4)}).__len__() == 3
    c9 = cycle_graph(9)
    assert len(shortest_odd_cycle(range(9), c9.adj)) == 9
    assert shortest_odd_cycle(range(6), cycle_graph(6).adj) is None
    k = complete_graph(5)
    assert len(shortest_odd_cycle(range(5), k.adj)) == 3


def test_view_origin_not_part_of_equality():
    inst = unlabeled(path_graph(2))
    a = extract_view(inst, 0, 1)
    b = View(a.radius, a.N, a.label_bits, a.ids, a.labels, a.dist, a.edges, origin=(9, 9))
    assert a == b
