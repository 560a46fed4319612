import random

import pytest
from hypothesis import given, settings, strategies as st

from lcpw.classes import enumerate_connected_graphs, generate, realize_watermelon, WatermelonShape
from lcpw.core import (Graph, IdAssignment, LabeledInstance, Labeling, PortAssignment, bit_width,
                       cycle_graph, enumerate_port_assignments, extract_view, path_graph, View)
from lcpw.decoders import PROTOCOLS, WidthMismatch, get_decoder, run
from lcpw.decoders.shatter import SHATTER_PATH_IDS, body_width, decode_shatter, shatter_witness
from lcpw.decoders.simple import BOT, ONE, TOP, ZERO, decode_cycle_label, encode_cycle_label
from lcpw.decoders.watermelon import MelonLabel, decode_melon, encode_melon, melon_bits, melon_witness
from lcpw.search import search_labelings

import oracles

ALL = PROTOCOLS + ("accept-all", "deg1-loose")


def canonical(g, N=None):
    return IdAssignment(tuple(range(1, g.n + 1)), N or g.n * g.n)


def test_constant_widths():
    for name, w in (("revealing", 1), ("deg1", 2), ("cycle", 10), ("accept-all", 1)):
        d = get_decoder(name)
        assert {d.label_bits(n, n * n, 3) for n in range(2, 60)} == {w}


def test_shatter_and_watermelon_widths():
    d = get_decoder("shatter")
    assert d.label_bits(8, 8, 2) == 2 + 4 + 4
    assert d.label_bits(50, 2500, 3) == 2 + 12 + 9
    assert get_decoder("watermelon").label_bits(8, 8, 2) == 5 * 4 + 4 == melon_bits(8)


def test_run_checks_width():
    g = path_graph(3)
    inst = LabeledInstance(g, PortAssignment.identity(g), canonical(g), Labeling((0, 0, 0), 3))
    with pytest.raises(WidthMismatch):
        run(get_decoder("deg1"), inst)


@pytest.mark.parametrize("name", ["revealing", "deg1", "cycle", "shatter", "watermelon"])
def test_prover_accepted_on_small_class_members(name):
    from lcpw.decoders import DEFAULT_CLASS
    d = get_decoder(name)
    for n in range(2, 7):
        for g in generate(DEFAULT_CLASS[name], n):
            if not oracles.bipartite(g):
                continue
            ports = next(enumerate_port_assignments(g))
            lab = d.prove(g, ports, canonical(g))
            assert lab is not None
            assert all(run(d, LabeledInstance(g, ports, canonical(g), lab)))


def test_provers_refuse_off_class():
    assert get_decoder("cycle").prove(cycle_graph(5), PortAssignment.identity(cycle_graph(5)),
                                      canonical(cycle_graph(5))) is None
    assert get_decoder("deg1").prove(cycle_graph(6), PortAssignment.identity(cycle_graph(6)),
                                     canonical(cycle_graph(6))) is None
    assert get_decoder("shatter").prove(cycle_graph(6), PortAssignment.identity(cycle_graph(6)),
                                        canonical(cycle_graph(6))) is None
    assert get_decoder("revealing").prove(cycle_graph(3), PortAssignment.identity(cycle_graph(3)),
                                          canonical(cycle_graph(3))) is None


def test_deg1_rules():
    d = get_decoder("deg1")
    g = path_graph(4)
    ports, ids = PortAssignment.identity(g), canonical(g)

    def verdict(labels):
        return run(d, LabeledInstance(g, ports, ids, Labeling(labels, 2)))

    assert verdict((BOT, TOP, ZERO, ONE)) == (True,) * 4
    assert verdict((BOT, TOP, ONE, ZERO)) == (True,) * 4
    assert verdict((ZERO, ONE, ZERO, ONE)) == (True,) * 4
    assert verdict((BOT, TOP, ZERO, ZERO))[2:] == (False, False)
    assert not verdict((TOP, BOT, ZERO, ONE))[1]


def test_deg1_loose_accepts_an_odd_cycle():
    # triangle 0-1-2 plus pendant 3 on node 0: TOP at 0, BOT at 3
    paw = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    labels = Labeling((TOP, ZERO, ONE, BOT), 2)
    inst = LabeledInstance(paw, PortAssignment.identity(paw), canonical(paw), labels)
    assert all(run(get_decoder("deg1-loose"), inst))
    assert not all(run(get_decoder("deg1"), inst)[:3])


def test_cycle_label_codec():
    for e1 in [(1, 2, 0), (2, 1, 1)]:
        for e2 in [(2, 2, 1), (1, 1, 0)]:
            assert decode_cycle_label(encode_cycle_label(e1, e2)) == (e1, e2)
    assert decode_cycle_label(0) is None


def test_cycle_decoder_rejects_every_labeling_of_c3():
    d = get_decoder("cycle")
    g = cycle_graph(3)
    alphabet = d.alphabet(g, canonical(g))
    for ports in enumerate_port_assignments(g):
        assert next(search_labelings(d, g, ports, canonical(g), alphabet), None) is None


def test_melon_codec():
    N = 8
    lab = MelonLabel(2, 1, 8, 3, 2, 0, 1, 1)
    assert decode_melon(encode_melon(lab, N), N) == lab
    assert decode_melon(encode_melon(MelonLabel(1, 2, 5), N), N) == MelonLabel(1, 2, 5)
    assert decode_melon(encode_melon(MelonLabel(1, 5, 2), N), N) is None
    assert decode_melon(encode_melon(MelonLabel(2, 1, 8, 3, 2, 0, 1, 0), N), N) is None


def test_shatter_codec():
    N, W = 8, 4
    d = get_decoder("shatter")
    bits = 2 + bit_width(N) + W
    assert decode_shatter(d.sentinel(N, W), bits, N) is None
    assert decode_shatter(0, bits, N) is None  # id 0 is out of range


def test_shatter_witness_reproduces_the_hiding_labelings():
    d = get_decoder("shatter")
    (g1, ids1), (g2, ids2) = shatter_witness()
    assert ids1.ids == SHATTER_PATH_IDS and ids2.ids == SHATTER_PATH_IDS[:2] + SHATTER_PATH_IDS[3:]
    W = body_width(8, 2)
    colors = []
    for g, ids in ((g1, ids1), (g2, ids2)):
        ports = PortAssignment.identity(g)
        lab = d.prove(g, ports, ids)
        assert all(run(d, LabeledInstance(g, ports, ids, lab)))
        v = ids.ids.index(1)
        u = g.adj[v][0]
        c = decode_shatter(lab.labels[u], lab.size_bits, ids.N)
        colors.append((c.color_of(1, W), c.color_of(2, W)))
    assert colors == [(0, 0), (1, 0)]


def test_watermelon_witness_accepts_under_every_port_assignment():
    d = get_decoder("watermelon")
    for g, ids in melon_witness():
        for ports in enumerate_port_assignments(g):
            lab = d.prove(g, ports, ids)
            assert all(run(d, LabeledInstance(g, ports, ids, lab)))


def test_watermelon_ports_shared_toward_a_node():
    # both neighbors of the middle node reach it through their port 1
    d = get_decoder("watermelon")
    g = realize_watermelon(WatermelonShape((2, 4)))
    ids = canonical(g)
    for ports in enumerate_port_assignments(g):
        lab = d.prove(g, ports, ids)
        assert all(run(d, LabeledInstance(g, ports, ids, lab)))


# -- the search engine against brute force --

SMALL = [g for n in range(2, 5) for g in enumerate_connected_graphs(n)]


@pytest.mark.parametrize("name", ["revealing", "deg1", "deg1-loose", "cycle", "accept-all"])
def test_search_matches_brute_force(name):
    d = get_decoder(name)
    for g in SMALL:
        ids = canonical(g)
        alphabet = d.alphabet(g, ids)
        if len(alphabet) ** g.n > 5000:
            continue
        for ports in list(enumerate_port_assignments(g))[:2]:
            for must in (None, [0], [0, 1]):
                want = set(oracles.all_accepting(d, g, ports, ids, alphabet, must))
                got = set()
                for lab in search_labelings(d, g, ports, ids, alphabet, must):
                    got.add(lab.labels)
                # the search fixes labels far from `must`; expand them back
                mset = set(range(g.n)) if must is None else set(must)
                near = set(mset)
                for m in mset:
                    near.update(g.adj[m])
                expanded = {w for w in want if all(w[x] == alphabet[0] for x in range(g.n) if x not in near)}
                assert got == expanded


def test_search_matches_brute_force_shatter():
    d = get_decoder("shatter")
    g = path_graph(3)
    ids = canonical(g)
    alphabet = d.alphabet(g, ids)
    ports = PortAssignment.identity(g)
    want = set(oracles.all_accepting(d, g, ports, ids, alphabet))
    got = {lab.labels for lab in search_labelings(d, g, ports, ids, alphabet)}
    assert got == want and want


# -- invariance fuzzing --

def _random_instance(rng, name, accepted):
    d = get_decoder(name)
    from lcpw.decoders import DEFAULT_CLASS
    n = rng.randint(3, 6)
    pool = [g for g in generate(DEFAULT_CLASS[name] if accepted else "all-connected", n)
            if not accepted or oracles.bipartite(g)]
    if not pool:
        return None
    g = rng.choice(pool)
    N = n * n
    ids = IdAssignment(tuple(rng.sample(range(1, N + 1), n)), N)
    order = tuple(tuple(rng.sample(a, len(a))) for a in g.adj)
    ports = PortAssignment(order)
    if accepted:
        lab = d.prove(g, ports, ids)
    else:
        alphabet = d.alphabet(g, ids)
        lab = Labeling(tuple(rng.choice(alphabet) for _ in range(n)), d.bits_for(g, ids))
    return None if lab is None else LabeledInstance(g, ports, ids, lab)


def _renamed(d, mu: View, mapping) -> View:
    ids = tuple(mapping[i] for i in mu.ids)
    labels = tuple(d.relabel_ids(x, mu.label_bits, mu.N, mapping) for x in mu.labels)
    return View(mu.radius, mu.N, mu.label_bits, ids, labels, mu.dist, mu.edges)


@pytest.mark.parametrize("name", ALL)
def test_id_equality_invariance_fuzz(name):
    """100 injective renamings per view never change a verdict."""
    d = get_decoder(name)
    rng = random.Random(7)
    checked = 0
    for trial in range(30):
        inst = _random_instance(rng, name, accepted=trial % 2 == 0)
        if inst is None:
            continue
        for v in range(inst.n):
            mu = extract_view(inst, v, 1)
            base = d.decide(mu)
            carried = set(mu.ids)
            for x in mu.labels:
                carried.update(d.label_ids(x, mu.label_bits, mu.N))
            carried = sorted(carried)
            for _ in range(100):
                img = rng.sample(range(1, mu.N + 1), len(carried))
                mapping = dict(zip(carried, img))
                assert d.decide(_renamed(d, mu, mapping)) == base
                checked += 1
    assert checked > 0


@pytest.mark.parametrize("name", [x for x in ALL if get_decoder(x).anonymous])
def test_anonymity_fuzz(name):
    d = get_decoder(name)
    rng = random.Random(11)
    for trial in range(30):
        inst = _random_instance(rng, name, accepted=trial % 2 == 0)
        if inst is None:
            continue
        for v in range(inst.n):
            mu = extract_view(inst, v, 1)
            base = d.decide(mu)
            for _ in range(100):
                ids = tuple(rng.sample(range(1, mu.N + 1), mu.size))
                other = View(mu.radius, mu.N, mu.label_bits, ids, mu.labels, mu.dist, mu.edges)
                assert d.decide(other) == base


@pytest.mark.parametrize("name", ["revealing", "deg1", "cycle", "shatter", "watermelon"])
def test_alphabet_reduction_fuzz(name):
    """Arbitrary labels map into the finite alphabet without changing any verdict."""
    d = get_decoder(name)
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(2, 5)
        g = rng.choice(list(enumerate_connected_graphs(n)))
        N = n * n
        ids = IdAssignment(tuple(rng.sample(range(1, N + 1), n)), N)
        ports = PortAssignment(tuple(tuple(rng.sample(a, len(a))) for a in g.adj))
        bits = d.bits_for(g, ids)
        if rng.random() < 0.5:
            labs = tuple(rng.randrange(1 << bits) for _ in range(n))
        else:
            # perturb a near-valid labeling so that the interesting branches run
            base = rng.choice(d.alphabet(g, ids, fresh=3))
            labs = tuple(base if rng.random() < 0.5 else rng.randrange(1 << bits) for _ in range(n))
        inst = LabeledInstance(g, ports, ids, Labeling(labs, bits))
        red = d.reduce_labeling(inst)
        assert run(d, red) == run(d, inst)
        foreign = {i for x in labs for i in d.label_ids(x, bits, N)} - set(ids.ids)
        alphabet = set(d.alphabet(g, ids, fresh=max(d.id_fields, len(foreign))))
        assert set(red.labels.labels) <= alphabet


def test_single_fresh_id_only_grows_acceptance():
    # the search alphabet merges all foreign ids into one; checks compare ids
    # only for equality, so no accepting node is lost
    d = get_decoder("shatter")
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(3, 5)
        g = rng.choice(list(enumerate_connected_graphs(n)))
        ids = canonical(g)
        alph = d.alphabet(g, ids, fresh=3)
        labs = tuple(rng.choice(alph) for _ in range(n))
        inst = LabeledInstance(g, PortAssignment.identity(g), ids, Labeling(labs, d.bits_for(g, ids)))
        foreign = sorted({i for x in labs for i in d.label_ids(x, inst.labels.size_bits, ids.N)} - set(ids.ids))
        one = min(set(range(1, ids.N + 1)) - set(ids.ids))
        merged = {i: one for i in foreign}
        m = inst.with_labels(Labeling(tuple(d.relabel_ids(x, inst.labels.size_bits, ids.N, merged) for x in labs),
                                      inst.labels.size_bits))
        before, after = run(d, inst), run(d, m)
        assert all(b <= a for b, a in zip(before, after))
