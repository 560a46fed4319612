"""The accepting neighborhood graph V(D,n), hiding verdicts, extraction
decoders and the realizability primitives.

Vertices are canonical view keys.  Views carry identifiers, so an
extraction rule may read them even when the decoder is anonymous; the
build can optionally strip them (keys="anonymous"), which asks the
stronger question of whether an id-oblivious extractor exists.  Every
vertex and edge keeps a witness: an accepted labeled instance and the
node(s) where the view(s) occur.
"""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import (Graph, IdAssignment, LabeledInstance, Labeling, PortAssignment, View, canonical_key,
                   extract_view, shortest_odd_cycle, two_color, view_digest)
from .decoders import DEFAULT_CLASS, Decoder, get_decoder
from .scope import Scope, accepted_labelings, exhaustive_mode, ports_count, scope_graphs, scope_ports
from .search import BudgetExceeded, Counter, default_budget


class NotBipartite(ValueError):
    pass


class RealizationError(ValueError):
    pass


@dataclass(frozen=True)
class Provenance:
    instance: int  # index into NeighborhoodGraph.instances
    nodes: tuple  # (v,) for a view, (u, v) for an edge


@dataclass
class NeighborhoodGraph:
    decoder: str
    n_bound: int
    anonymous: bool
    scope: dict
    views: dict = field(default_factory=dict)  # key -> representative View (ids kept)
    adj: dict = field(default_factory=lambda: defaultdict(set))
    provenance: dict = field(default_factory=dict)  # key or (k1, k2) -> Provenance
    instances: list = field(default_factory=list)
    pool: dict = field(default_factory=lambda: defaultdict(dict))  # center id -> {full key: View}

    def keys(self) -> list:
        return sorted(self.views)

    @property
    def edges(self) -> list:
        out = set()
        for a, nb in self.adj.items():
            for b in nb:
                out.add((a, b) if a <= b else (b, a))
        return sorted(out)

    def key_of(self, view: View) -> bytes:
        return canonical_key(view.anonymized() if self.anonymous else view)

    def has_edge(self, a: bytes, b: bytes) -> bool:
        return b in self.adj.get(a, ())

    def add_instance(self, inst: LabeledInstance, views: Sequence[View]) -> None:
        idx = len(self.instances)
        self.instances.append(inst)
        keys = []
        for v, mu in enumerate(views):
            k = self.key_of(mu)
            keys.append(k)
            if k not in self.views:
                self.views[k] = mu
                self.provenance[k] = Provenance(idx, (v,))
            self.pool[mu.center_id].setdefault(canonical_key(mu), mu)
        for u, v in inst.graph.sorted_edges():
            a, b = keys[u], keys[v]
            if a > b:
                a, b, u, v = b, a, v, u
            if (a, b) not in self.provenance:
                self.provenance[(a, b)] = Provenance(idx, (u, v))
            self.adj[a].add(b)
            self.adj[b].add(a)

    def neighbors(self, k: bytes) -> list:
        return sorted(self.adj.get(k, ()))

    def subgraph(self, keys: Iterable[bytes]) -> "ViewSet":
        ks = list(dict.fromkeys(keys))
        pos = {k: i for i, k in enumerate(ks)}
        es = {(pos[a], pos[b]) for a, b in self.edges if a in pos and b in pos}
        return ViewSet(tuple(self.views[k] for k in ks), frozenset(es))

    def pool_views(self) -> list:
        return [mu for i in sorted(self.pool) for _, mu in sorted(self.pool[i].items())]

    def digest(self, k: bytes) -> str:
        return view_digest(k)

    def to_dict(self) -> dict:
        keys = self.keys()
        index = {k: i for i, k in enumerate(keys)}
        inst_digest = [inst.digest() for inst in self.instances]
        used = set()
        views = []
        for k in keys:
            p = self.provenance[k]
            used.add(p.instance)
            views.append({"digest": view_digest(k), "view": self.views[k].to_dict(),
                          "provenance": {"instance": inst_digest[p.instance], "node": p.nodes[0]}})
        edges = []
        for a, b in self.edges:
            p = self.provenance[(a, b)]
            used.add(p.instance)
            edges.append({"views": [index[a], index[b]],
                          "provenance": {"instance": inst_digest[p.instance], "nodes": list(p.nodes)}})
        return {"decoder": self.decoder, "n_bound": self.n_bound, "anonymous": self.anonymous,
                "scope": self.scope, "views": views, "edges": edges,
                "instances": {inst_digest[i]: self.instances[i].to_dict() for i in sorted(used)}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def _instance_views(decoder: Decoder, inst: LabeledInstance) -> list:
    return [extract_view(inst, v, decoder.radius) for v in range(inst.n)]


def build_neighborhood_graph(decoder, n: int, class_tag: str | None = None, *, labelings: str = "auto",
                             scope: str = "class", N: int | None = None, ids: str = "all-orderings",
                             ports: str = "all", budget: int | None = None, cap: int | None = None,
                             instances: Iterable[tuple] | None = None, keys: str = "full") -> NeighborhoodGraph:
    """Collect accepting views and yes-instance compatibility edges.

    scope "class" ranges over the bipartite class members with at most n
    nodes, with one id space N (default n^2) shared by all of them so that
    views from different sizes are comparable.  scope "witness" uses the
    decoder's own witness family (graphs with fixed ids), and `instances`
    overrides both with explicit (Graph, IdAssignment) pairs.
    """
    d = get_decoder(decoder) if isinstance(decoder, str) else decoder
    class_tag = class_tag or DEFAULT_CLASS.get(d.name, "bipartite")
    budget = default_budget() if budget is None else budget
    counter = Counter(budget)
    if instances is None and scope == "witness":
        instances = d.witness_family(N)
        if not instances:
            raise ValueError(f"decoder {d.name} has no witness family; use scope 'class'")
    if instances is not None:
        pairs = list(instances)
        N = max(i.N for _, i in pairs)
        sc = Scope(class_tag=class_tag, n_max=max(g.n for g, _ in pairs), n_min=1, N=N, ports=ports,
                   labelings=labelings)
        desc = dict(sc.describe(), source="witness")
    else:
        N = n * n if N is None else N
        kw = {} if cap is None else {"cap": cap}
        sc = Scope(class_tag=class_tag, n_max=n, n_min=1, N=N, ids=ids, ports=ports, labelings=labelings, **kw)
        pairs = None
        desc = dict(sc.describe(), source="class")
    desc["labeling_scope"] = _labeling_scope(sc)
    if keys not in ("full", "anonymous"):
        raise ValueError(f"unknown key mode {keys!r}")
    desc["keys"] = keys
    nbr = NeighborhoodGraph(d.name, n, keys == "anonymous", desc)
    cache = {}

    def configs():
        if pairs is not None:
            for g, idv in pairs:
                yield g, idv
            return
        from .scope import scope_ids
        for g in scope_graphs(sc, bipartite_only=True):
            if g.n > N:
                continue
            for idv in scope_ids(g, sc):
                yield g, idv

    for g, idv in configs():
        for pa in scope_ports(d, g, sc):
            for lab in accepted_labelings(d, g, pa, idv, sc, counter, cache):
                inst = LabeledInstance(g, pa, idv, lab)
                views = _instance_views(d, inst)
                counter.charge(len(views))
                if all(d.decide(mu) for mu in views):
                    nbr.add_instance(inst, views)
    nbr.scope["decode_calls"] = counter.calls
    return nbr


def _labeling_scope(sc: Scope) -> str:
    if sc.labelings == "exhaustive":
        return "exhaustive"
    if sc.labelings == "prover":
        return "prover-scope"
    return "exhaustive up to 4 nodes, prover-scope above" if sc.n_max > 4 else "exhaustive"


def build_estimate(decoder, n: int, class_tag: str | None = None, *, labelings: str = "auto",
                   ports: str = "all") -> int:
    """Naive configuration count: graphs x ports x (alphabet^n or 1)."""
    d = get_decoder(decoder) if isinstance(decoder, str) else decoder
    class_tag = class_tag or DEFAULT_CLASS.get(d.name, "bipartite")
    sc = Scope(class_tag=class_tag, n_max=n, N=n * n, ports=ports, labelings=labelings)
    total = 0
    for g in scope_graphs(sc, bipartite_only=True):
        idv = IdAssignment(tuple(range(1, g.n + 1)), n * n)
        labs = len(d.alphabet(g, idv)) ** g.n if exhaustive_mode(sc, g.n) else 1
        total += ports_count(d, g, sc) * (labs + 1) * g.n
    return total


# -- hiding ------------------------------------------------------------------

@dataclass
class OddCycleWitness:
    keys: tuple  # cyclic sequence of view keys, odd length
    instances: tuple  # per consecutive pair: (LabeledInstance, u, v)

    def __len__(self) -> int:
        return len(self.keys)

    def pairs(self) -> list:
        k = self.keys
        return [(k[i], k[(i + 1) % len(k)]) for i in range(len(k))]

    def to_dict(self) -> dict:
        return {"length": len(self.keys), "views": [view_digest(k) for k in self.keys],
                "edges": [{"instance": inst.digest(), "nodes": [u, v]} for inst, u, v in self.instances]}


@dataclass
class HidingVerdict:
    hiding: bool
    k: int
    n: int
    decoder: str
    scope: dict
    views: int
    edges: int
    witness: OddCycleWitness | None = None
    coloring: dict | None = None  # key -> color when not hiding
    certificate: str | None = None  # for k > 2 without a coloring

    @property
    def label(self) -> str:
        return "HIDING" if self.hiding else "NOT HIDING"

    def to_dict(self, nbr: NeighborhoodGraph | None = None) -> dict:
        d = {"decoder": self.decoder, "n": self.n, "k": self.k, "verdict": "hiding" if self.hiding else "not_hiding",
             "scope": self.scope, "views": self.views, "edges": self.edges}
        if self.witness is not None:
            d["odd_cycle"] = self.witness.to_dict()
        if self.coloring is not None:
            d["coloring"] = {view_digest(k): c for k, c in sorted(self.coloring.items())}
        if self.certificate is not None:
            d["certificate"] = self.certificate
        return d


def odd_cycle_witness(nbr: NeighborhoodGraph) -> OddCycleWitness | None:
    keys = nbr.keys()
    loops = [k for k in keys if nbr.has_edge(k, k)]
    if loops:
        cyc = [loops[0]]
    else:
        cyc = shortest_odd_cycle(keys, {k: nbr.neighbors(k) for k in keys})
        if cyc is None:
            return None
    insts = []
    for i, a in enumerate(cyc):
        b = cyc[(i + 1) % len(cyc)]
        p = nbr.provenance[(a, b) if a <= b else (b, a)]
        u, v = p.nodes if a <= b else p.nodes[::-1]
        insts.append((nbr.instances[p.instance], u, v))
    return OddCycleWitness(tuple(cyc), tuple(insts))


def first_two_coloring(nbr: NeighborhoodGraph) -> dict | None:
    """Lexicographically first proper 2-coloring in ascending key order."""
    keys = nbr.keys()
    if any(nbr.has_edge(k, k) for k in keys):
        return None
    col, _ = two_color(keys, {k: nbr.neighbors(k) for k in keys})
    return col


def k_coloring(nbr: NeighborhoodGraph, k: int, cap: int = 64) -> dict | None:
    """Lexicographically first proper k-coloring by backtracking (views <= cap)."""
    keys = nbr.keys()
    if len(keys) > cap:
        raise BudgetExceeded(f"{len(keys)} views exceed the k-coloring cap {cap}", len(keys))
    if any(nbr.has_edge(x, x) for x in keys):
        return None
    pos = {x: i for i, x in enumerate(keys)}
    earlier = [[pos[y] for y in nbr.neighbors(x) if pos[y] < i] for i, x in enumerate(keys)]
    col = [0] * len(keys)

    def rec(i):
        if i == len(keys):
            return True
        for c in range(k):
            if all(col[j] != c for j in earlier[i]):
                col[i] = c
                if rec(i + 1):
                    return True
        return False

    return {x: col[i] for i, x in enumerate(keys)} if rec(0) else None


def verdict_for(nbr: NeighborhoodGraph, k: int = 2, cap: int = 64) -> HidingVerdict:
    base = dict(k=k, n=nbr.n_bound, decoder=nbr.decoder, scope=nbr.scope, views=len(nbr.views),
                edges=len(nbr.edges))
    if k == 2:
        w = odd_cycle_witness(nbr)
        if w is not None:
            return HidingVerdict(True, witness=w, **base)
        return HidingVerdict(False, coloring=first_two_coloring(nbr), **base)
    col = k_coloring(nbr, k, cap)
    if col is None:
        return HidingVerdict(True, certificate=f"exhaustive backtracking found no proper {k}-coloring", **base)
    return HidingVerdict(False, coloring=col, **base)


def hiding_verdict(decoder, n: int | None = None, class_tag: str | None = None, k: int = 2, *, cap: int = 64,
                   **build_kw) -> HidingVerdict:
    """Hiding at this n iff V(D,n) is not k-colorable."""
    if isinstance(decoder, NeighborhoodGraph):
        return verdict_for(decoder, k, cap)
    if n is None:
        raise ValueError("n is required unless a built NeighborhoodGraph is passed")
    nbr = build_neighborhood_graph(decoder, n, class_tag, **build_kw)
    return verdict_for(nbr, k, cap)


@dataclass
class ExtractionDecoder:
    """Maps each accepting view to a color."""

    lookup: dict
    anonymous: bool
    source: str = "lexicographically first 2-coloring in ascending key order"

    def key(self, view: View) -> bytes:
        return canonical_key(view.anonymized() if self.anonymous else view)

    def __call__(self, view: View) -> int:
        return self.lookup[self.key(view)]

    def color_instance(self, inst: LabeledInstance, radius: int = 1) -> list:
        return [self(extract_view(inst, v, radius)) for v in range(inst.n)]


def make_extraction_decoder(nbr: NeighborhoodGraph) -> ExtractionDecoder:
    col = first_two_coloring(nbr)
    if col is None:
        w = odd_cycle_witness(nbr)
        raise NotBipartite(f"neighborhood graph has an odd cycle of length {len(w)}")
    return ExtractionDecoder(dict(col), nbr.anonymous)


def monochromatic_pair(witness: OddCycleWitness, table) -> int:
    """Index i where table gives witness views i and i+1 the same color.

    Exists for every table because the cycle is odd; the scan is the
    pigeonhole argument made explicit.
    """
    ks = witness.keys
    for i in range(len(ks)):
        if table(ks[i]) == table(ks[(i + 1) % len(ks)]):
            return i
    raise AssertionError("an odd cycle cannot be properly 2-colored")


def extraction_tables(nbr: NeighborhoodGraph, limit: int = 20):
    """Every view -> bit table, when there are at most `limit` views."""
    import numpy as np

    keys = nbr.keys()
    m = len(keys)
    if m > limit:
        raise BudgetExceeded(f"{m} accepting views; exhaustive tables need at most {limit}", 2 ** m)
    rows = np.arange(2 ** m, dtype=np.int64)[:, None]
    bits = (rows >> np.arange(m, dtype=np.int64)) & 1
    return keys, bits.astype(np.int8)


def proper_tables(nbr: NeighborhoodGraph, limit: int = 20):
    """Boolean mask over all tables: which ones color every edge properly."""
    import numpy as np

    keys, bits = extraction_tables(nbr, limit)
    pos = {k: i for i, k in enumerate(keys)}
    ok = np.ones(bits.shape[0], dtype=bool)
    for a, b in nbr.edges:
        ok &= bits[:, pos[a]] != bits[:, pos[b]]
    return keys, bits, ok


# -- realizability -------------------------------------------------------------

def radius1_view(mu: View, w: int) -> tuple:
    """w's radius-one view inside mu, in port order (only exact for w at distance < r)."""
    return (mu.ids[w], mu.labels[w], tuple((p, mu.ids[x], q, mu.labels[x]) for p, x, q in mu.adj[w]))


def node_compatible(mu1: View, u: int, mu2: View, *, closed: bool = False) -> bool:
    """Is node u of mu1 compatible with mu2?

    u must carry mu2's center id, and nodes at distance < r from the centers
    of both views that share an id must have identical radius-one views.
    With closed=True u's own visible edges (both ports, neighbor id) and its
    label must also match mu2's center; for one-round views this is what
    makes the identification construction well defined.
    """
    if mu1.ids[u] is None or mu1.ids[u] != mu2.center_id:
        return False
    r = mu1.radius
    inner2 = {mu2.ids[w]: w for w in range(mu2.size) if mu2.dist[w] < r}
    for w1 in range(mu1.size):
        if mu1.dist[w1] >= r:
            continue
        w2 = inner2.get(mu1.ids[w1])
        if w2 is not None and radius1_view(mu1, w1) != radius1_view(mu2, w2):
            return False
    if closed:
        if mu1.labels[u] != mu2.labels[0]:
            return False
        at_center = {(p, mu2.ids[x], q) for p, x, q in mu2.adj[0]}
        for p, x, q in mu1.adj[u]:
            if (p, mu1.ids[x], q) not in at_center:
                return False
    return True


@dataclass(frozen=True)
class ViewSet:
    """A subgraph H of views: concrete views (with ids) and index pairs."""

    views: tuple
    edges: frozenset

    def ids(self) -> list:
        return sorted({i for mu in self.views for i in mu.ids if i is not None})

    def containing(self, i: int) -> list:
        return [j for j, mu in enumerate(self.views) if i in mu.ids]

    def components_of(self, members: list) -> list:
        ms = set(members)
        adj = {j: [] for j in members}
        for a, b in self.edges:
            if a in ms and b in ms:
                adj[a].append(b)
                adj[b].append(a)
        seen, out = set(), []
        for s in members:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out


def views_of_instance(decoder: Decoder, inst: LabeledInstance, nodes: Sequence[int] | None = None) -> ViewSet:
    nodes = list(range(inst.n)) if nodes is None else list(nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    views = tuple(extract_view(inst, v, decoder.radius) for v in nodes)
    es = frozenset((pos[u], pos[v]) for u, v in inst.graph.sorted_edges() if u in pos and v in pos)
    return ViewSet(views, es)


@dataclass
class Realizability:
    ok: bool
    witnesses: dict | None = None  # id -> View (plain) or id -> [(component, View)]
    blocking_id: int | None = None
    reason: str = ""


def is_realizable(H: ViewSet, mode: str = "plain", pool: Iterable[View] = (), *, closed: bool = True) -> Realizability:
    """Search witness views mu_i for every identifier i in H.

    Candidates are the pool plus H's own views.  A "no" is relative to the
    pool.  The component-wise mode looks for one witness per connected
    component of S(i) instead of one per identifier.
    """
    if mode not in ("plain", "component-wise"):
        raise ValueError(f"unknown mode {mode!r}")
    cand = defaultdict(dict)
    for mu in list(pool) + list(H.views):
        if mu.center_id is not None:
            cand[mu.center_id].setdefault(canonical_key(mu), mu)
    if any(mu.center_id is None for mu in H.views):
        return Realizability(False, reason="views without identifiers cannot be realized")
    centers = defaultdict(list)
    for j, mu in enumerate(H.views):
        centers[mu.center_id].append(j)
    if mode == "plain":
        for i, js in sorted(centers.items()):
            if len({canonical_key(H.views[j]) for j in js}) > 1:
                return Realizability(False, blocking_id=i, reason=f"two different views of H are centered at id {i}")
    for (a, b) in H.edges:
        ma, mb = H.views[a], H.views[b]
        if not any(ma.ids[x] == mb.center_id for _, x, _ in ma.adj[0]) or \
                not any(mb.ids[x] == ma.center_id for _, x, _ in mb.adj[0]):
            return Realizability(False, blocking_id=ma.center_id,
                                 reason=f"edge between views centered at {ma.center_id} and {mb.center_id} "
                                        f"is not an adjacency of their centers")
    out = {}
    for i in H.ids():
        members = H.containing(i)
        groups = [members] if mode == "plain" else H.components_of(members)
        found = []
        for grp in groups:
            occ = [(H.views[j], H.views[j].ids.index(i)) for j in grp]
            hit = None
            for _, mu_i in sorted(cand[i].items()):
                if all(node_compatible(mu, u, mu_i, closed=closed) for mu, u in occ):
                    hit = mu_i
                    break
            if hit is None:
                return Realizability(False, blocking_id=i,
                                     reason=f"no candidate view centered at id {i} is compatible with all its occurrences")
            found.append((tuple(grp), hit))
        out[i] = found[0][1] if mode == "plain" else found
    return Realizability(True, witnesses=out)


def realize(H: ViewSet, witnesses: dict, decoder: Decoder) -> LabeledInstance:
    """G_bad: glue the witness views along identifiers.

    Nodes whose witness ports are not all used get pendant filler nodes on
    the missing ports (with unused ids); these sit at distance at least two
    from every center, so one-round verdicts at centers are unaffected.
    Raises RealizationError when the witnesses disagree or the
    postcondition fails.
    """
    ids = sorted(witnesses)
    if not ids:
        raise RealizationError("no witnesses")
    ws = [witnesses[i] for i in ids]
    N = ws[0].N
    bits = ws[0].label_bits
    if any(mu.N != N or mu.label_bits != bits for mu in ws):
        raise RealizationError("witness views disagree on the id space or the label width")
    idx = {i: x for x, i in enumerate(ids)}
    port_at = defaultdict(dict)  # node -> {port: neighbor}

    def put(a, p, b):
        cur = port_at[a].get(p)
        if cur is not None and cur != b:
            raise RealizationError(f"port {p} at id {ids[a]} leads to both id {ids[cur]} and id {ids[b]}")
        port_at[a][p] = b

    edges = set()
    for i, mu in zip(ids, ws):
        for p, x, q in mu.adj[0]:
            j = mu.ids[x]
            if j not in idx:
                continue
            a, b = idx[i], idx[j]
            put(a, p, b)
            put(b, q, a)
            edges.add((min(a, b), max(a, b)))
    # every edge must have a consistent port at both ends
    for a in list(port_at):
        back = {}
        for p, b in port_at[a].items():
            if b in back:
                raise RealizationError(f"id {ids[a]} reaches id {ids[b]} through two ports")
            back[b] = p
    labels = [mu.labels[0] for mu in ws]
    used = set(ids)
    spare = (x for x in range(1, N + 1) if x not in used)
    extra_ids = []
    nodes = len(ids)
    for a in range(len(ids)):
        deg = max(port_at[a], default=0)
        for p in range(1, deg + 1):
            if p in port_at[a]:
                continue
            try:
                fid = next(spare)
            except StopIteration:
                raise RealizationError("not enough unused ids for filler nodes") from None
            f = nodes
            nodes += 1
            extra_ids.append(fid)
            labels.append(0)
            port_at[a][p] = f
            port_at[f][1] = a
            edges.add((a, f))
    g = Graph(nodes, frozenset(edges))
    order = tuple(tuple(port_at[v][p] for p in range(1, len(port_at[v]) + 1)) for v in range(nodes))
    ports = PortAssignment(order)
    ports.validate(g)
    inst = LabeledInstance(g, ports, IdAssignment(tuple(ids) + tuple(extra_ids), N), Labeling(tuple(labels), bits))
    _check_realization(H, inst, idx, decoder)
    return inst


def _check_realization(H: ViewSet, inst: LabeledInstance, idx: dict, decoder: Decoder) -> None:
    for mu in H.views:
        v = idx.get(mu.center_id)
        if v is None:
            raise RealizationError(f"center id {mu.center_id} missing from G_bad")
        got = extract_view(inst, v, decoder.radius)
        if canonical_key(got) != canonical_key(mu) or not decoder.decide(got):
            raise RealizationError(f"view of id {mu.center_id} in G_bad differs from H or rejects")
    centers = [mu.center_id for mu in H.views]
    want = {frozenset((centers[a], centers[b])) for a, b in H.edges}
    ids = inst.ids.ids
    cs = set(centers)
    have = {frozenset((ids[u], ids[v])) for u, v in inst.graph.sorted_edges() if ids[u] in cs and ids[v] in cs}
    if want != have:
        raise RealizationError("center nodes of G_bad do not induce a copy of H")


# -- walks ----------------------------------------------------------------------

@dataclass(frozen=True)
class Walk:
    views: tuple
    closed: bool = False

    @property
    def centers(self) -> tuple:
        return tuple(mu.center_id for mu in self.views)


def is_walk_in(w: Walk, nbr: NeighborhoodGraph) -> bool:
    ks = [nbr.key_of(mu) for mu in w.views]
    pairs = list(zip(ks, ks[1:])) + ([(ks[-1], ks[0])] if w.closed and len(ks) > 1 else [])
    return all(nbr.has_edge(a, b) for a, b in pairs)


def is_non_backtracking(w: Walk) -> bool:
    c = w.centers
    m = len(c)
    if w.closed:
        return m >= 3 and all(c[i - 1] != c[(i + 1) % m] for i in range(m))
    return all(c[i - 1] != c[i + 1] for i in range(1, m - 1))


def lift_walk(decoder: Decoder, inst: LabeledInstance, nodes: Sequence[int], closed: bool = True) -> Walk:
    """The views along a node walk of an accepted instance."""
    g = inst.graph
    seq = list(nodes)
    steps = list(zip(seq, seq[1:])) + ([(seq[-1], seq[0])] if closed else [])
    for a, b in steps:
        if b not in g.adj[a]:
            raise ValueError(f"{a}-{b} is not an edge")
    return Walk(tuple(extract_view(inst, v, decoder.radius) for v in seq), closed)


# -- export ----------------------------------------------------------------------

def export_dot(nbr: NeighborhoodGraph, highlight: OddCycleWitness | None = None) -> str:
    keys = nbr.keys()
    name = {k: f"v{i}" for i, k in enumerate(keys)}
    hot = set()
    if highlight is not None:
        hot = {frozenset(p) for p in highlight.pairs()}
    lines = [f"graph V {{  // {nbr.decoder}, n <= {nbr.n_bound}",
             "  node [shape=box, fontname=\"monospace\"];"]
    for k in keys:
        attrs = f"label=\"{view_digest(k)}\""
        if highlight is not None and k in highlight.keys:
            attrs += ", color=red"
        lines.append(f"  {name[k]} [{attrs}];")
    for a, b in nbr.edges:
        attrs = " [color=red, penwidth=2]" if frozenset((a, b)) in hot else ""
        lines.append(f"  {name[a]} -- {name[b]}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def empty_graph(decoder: str = "none", n: int = 0) -> NeighborhoodGraph:
    return NeighborhoodGraph(decoder, n, True, {})
