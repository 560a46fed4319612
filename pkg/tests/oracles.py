"""Independent reference implementations used only by the tests."""
import itertools
from math import factorial

import networkx as nx

from lcpw.core import Graph, LabeledInstance, Labeling, extract_view


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def bipartite(g: Graph) -> bool:
    return nx.is_bipartite(to_nx(g))


def ports_count(g: Graph) -> int:
    out = 1
    for v in range(g.n):
        out *= factorial(g.degree(v))
    return out


def ball(inst: LabeledInstance, v: int, r: int):
    """Ball as (node set, edge set of (x, y, port x, port y)) in instance coordinates."""
    h = to_nx(inst.graph)
    dist = nx.single_source_shortest_path_length(h, v, cutoff=r)
    es = set()
    for x, y in h.edges:
        if x in dist and y in dist and not (dist[x] == r and dist[y] == r):
            es.add((min(x, y), max(x, y)))
    return set(dist), es


def view_matches_ball(inst, v, r) -> bool:
    mu = extract_view(inst, v, r)
    nodes, es = ball(inst, v, r)
    origin = mu.origin
    if set(origin) != nodes:
        return False
    got = set()
    for a, b, pa, pb in mu.edges:
        x, y = origin[a], origin[b]
        if pa != inst.ports.port(x, y) or pb != inst.ports.port(y, x):
            return False
        got.add((min(x, y), max(x, y)))
    if got != es:
        return False
    return all(mu.ids[i] == inst.ids.ids[x] and mu.labels[i] == inst.labels.labels[x]
               for i, x in enumerate(origin))


def all_accepting(decoder, g, ports, ids, alphabet, must=None):
    """Brute force over the product space, via real views."""
    must = range(g.n) if must is None else must
    bits = decoder.bits_for(g, ids)
    out = []
    for labs in itertools.product(alphabet, repeat=g.n):
        inst = LabeledInstance(g, ports, ids, Labeling(labs, bits))
        if all(decoder.decide(extract_view(inst, v, 1)) for v in must):
            out.append(labs)
    return out


def odd_chordless_cycles(g: Graph) -> set:
    return {frozenset(c) for c in nx.chordless_cycles(to_nx(g)) if len(c) % 2}


def diameter(g: Graph) -> int:
    return nx.diameter(to_nx(g))
