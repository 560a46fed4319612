import random

import pytest

from lcpw.core import LabeledInstance, PortAssignment, canonical_key, cycle_graph, extract_view, path_graph
from lcpw.core import IdAssignment, Labeling
from lcpw.decoders import get_decoder, run
from lcpw.neighborhood import (NotBipartite, RealizationError, ViewSet, build_neighborhood_graph,
                               export_dot, hiding_verdict, is_non_backtracking, is_realizable, is_walk_in,
                               lift_walk, make_extraction_decoder, monochromatic_pair, node_compatible,
                               odd_cycle_witness, proper_tables, realize, verdict_for, views_of_instance)


@pytest.fixture(scope="module")
def shatter_nbr():
    return build_neighborhood_graph("shatter", 8, scope="witness")


@pytest.fixture(scope="module")
def revealing_nbr():
    return build_neighborhood_graph("revealing", 4)


def test_every_vertex_and_edge_has_a_faithful_witness(revealing_nbr, shatter_nbr):
    for nbr in (revealing_nbr, shatter_nbr):
        d = get_decoder(nbr.decoder)
        for k in nbr.keys():
            p = nbr.provenance[k]
            inst = nbr.instances[p.instance]
            assert all(run(d, inst))
            assert nbr.key_of(extract_view(inst, p.nodes[0], 1)) == k
        for a, b in nbr.edges:
            p = nbr.provenance[(a, b)]
            inst = nbr.instances[p.instance]
            u, v = p.nodes
            assert v in inst.graph.adj[u]
            assert nbr.key_of(extract_view(inst, u, 1)) == a
            assert nbr.key_of(extract_view(inst, v, 1)) == b


@pytest.mark.parametrize("name", ["revealing", "deg1"])
def test_monotone_in_n(name):
    small = build_neighborhood_graph(name, 3, N=16)
    big = build_neighborhood_graph(name, 4, N=16)
    assert set(small.keys()) <= set(big.keys())
    assert set(small.edges) <= set(big.edges)


def test_extraction_decoder_colors_every_collected_instance(revealing_nbr):
    v = hiding_verdict(revealing_nbr)
    assert not v.hiding and v.label == "NOT HIDING"
    ext = make_extraction_decoder(revealing_nbr)
    for inst in revealing_nbr.instances:
        colors = ext.color_instance(inst)
        assert all(colors[a] != colors[b] for a, b in inst.graph.sorted_edges())


def test_extraction_decoder_refuses_odd_graph(shatter_nbr):
    with pytest.raises(NotBipartite):
        make_extraction_decoder(shatter_nbr)


def test_shatter_witness_is_an_odd_cycle(shatter_nbr):
    v = verdict_for(shatter_nbr)
    assert v.hiding and len(v.witness) % 2 == 1
    assert len(shatter_nbr.keys()) == 13 and len(shatter_nbr.edges) == 13
    # 3 colors suffice, so it is hiding only for k = 2
    assert not verdict_for(shatter_nbr, k=3).hiding


def test_no_table_colors_an_odd_cycle(shatter_nbr):
    keys, bits, ok = proper_tables(shatter_nbr)
    assert bits.shape == (1 << 13, 13) and not ok.any()
    w = odd_cycle_witness(shatter_nbr)
    pos = {k: i for i, k in enumerate(keys)}
    rng = random.Random(0)
    for row in rng.sample(range(1 << 13), 200):
        i = monochromatic_pair(w, lambda k: bits[row, pos[k]])
        a, b = w.keys[i], w.keys[(i + 1) % len(w)]
        assert bits[row, pos[a]] == bits[row, pos[b]]


def test_anonymous_keys_give_cycle_decoder_a_self_loop():
    nbr = build_neighborhood_graph("cycle", 4, ids="canonical", keys="anonymous")
    w = odd_cycle_witness(nbr)
    assert w is not None and len(w) == 1
    assert nbr.scope["keys"] == "anonymous"


def test_build_is_deterministic(shatter_nbr):
    again = build_neighborhood_graph("shatter", 8, scope="witness")
    assert again.keys() == shatter_nbr.keys() and again.edges == shatter_nbr.edges
    w = odd_cycle_witness(shatter_nbr)
    assert export_dot(again, odd_cycle_witness(again)) == export_dot(shatter_nbr, w)
    assert again.to_json() == shatter_nbr.to_json()


def test_dot_shape(shatter_nbr):
    w = odd_cycle_witness(shatter_nbr)
    dot = export_dot(shatter_nbr, w)
    assert dot.startswith("graph V {")
    assert dot.count(" -- ") == 13 and dot.count("penwidth") == len(w)


def _cycle_instance(n=6):
    d = get_decoder("cycle")
    g = cycle_graph(n)
    ports = PortAssignment.identity(g)
    ids = IdAssignment(tuple(range(1, n + 1)), n * n)
    return d, LabeledInstance(g, ports, ids, d.prove(g, ports, ids))


def test_lifted_cycle_walk():
    d, inst = _cycle_instance()
    nbr = build_neighborhood_graph(d, 6, labelings="prover", instances=[(inst.graph, inst.ids)])
    w = lift_walk(d, inst, range(6))
    assert is_walk_in(w, nbr) and is_non_backtracking(w)
    back = lift_walk(d, inst, [0, 1, 0], closed=False)
    assert is_walk_in(back, nbr) and not is_non_backtracking(back)
    with pytest.raises(ValueError):
        lift_walk(d, inst, [0, 2])


def test_realize_a_two_path():
    d, inst = _cycle_instance()
    H = views_of_instance(d, inst, [0, 1])
    # candidates for the boundary ids come from the pool only
    assert not is_realizable(H).ok
    r = is_realizable(H, pool=views_of_instance(d, inst).views)
    assert r.ok and sorted(r.witnesses) == sorted({i for mu in H.views for i in mu.ids})
    bad = realize(H, r.witnesses, d)
    for mu in H.views:
        v = bad.ids.ids.index(mu.center_id)
        assert canonical_key(extract_view(bad, v, 1)) == canonical_key(mu)


def test_realize_whole_instance_reproduces_it():
    d, inst = _cycle_instance(8)
    H = views_of_instance(d, inst)
    r = is_realizable(H)
    bad = realize(H, r.witnesses, d)
    assert bad.n == inst.n and all(run(d, bad))


def test_inconsistent_views_block_realization():
    d = get_decoder("revealing")
    g = path_graph(3)
    ports = PortAssignment.identity(g)
    ids = IdAssignment((1, 2, 3), 9)
    a = LabeledInstance(g, ports, ids, Labeling((0, 1, 0), 1))
    b = LabeledInstance(g, ports, ids, Labeling((1, 0, 1), 1))
    H = ViewSet((extract_view(a, 0, 1), extract_view(b, 1, 1)), frozenset({(0, 1)}))
    r = is_realizable(H)
    assert not r.ok and r.blocking_id in (1, 2)
    # forcing the gluing anyway trips the postcondition
    with pytest.raises(RealizationError):
        realize(H, {1: extract_view(a, 0, 1), 2: extract_view(a, 1, 1), 3: extract_view(a, 2, 1)}, d)


def test_closed_compatibility_is_stricter():
    d = get_decoder("revealing")
    g = path_graph(3)
    ports = PortAssignment.identity(g)
    ids = IdAssignment((1, 2, 3), 9)
    a = LabeledInstance(g, ports, ids, Labeling((0, 1, 0), 1))
    b = LabeledInstance(g, ports, ids, Labeling((0, 0, 0), 1))
    mu1 = extract_view(a, 0, 1)  # sees node 2 with label 1
    mu2 = extract_view(b, 1, 1)  # node 2 itself with label 0
    u = mu1.ids.index(2)
    assert node_compatible(mu1, u, mu2)
    assert not node_compatible(mu1, u, mu2, closed=True)
    assert node_compatible(mu1, u, extract_view(a, 1, 1), closed=True)
