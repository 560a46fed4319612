"""Labeled graph instances, radius-r views and their canonical encoding."""
from __future__ import annotations

import hashlib
import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence


def bit_width(N: int) -> int:
    """ceil(log2(N+1)): bits needed to write any id in [1, N]."""
    return int(N).bit_length()


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative node count")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen))

    @cached_property
    def adj(self) -> tuple:
        nb = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self.adj, 0)) == self.n

    def induced(self, nodes: Iterable[int]) -> tuple["Graph", list]:
        """Induced subgraph on `nodes`, relabeled 0..k-1 in the given order."""
        nodes = list(nodes)
        idx = {v: i for i, v in enumerate(nodes)}
        es = [(idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx]
        return Graph.from_edges(len(nodes), es), nodes

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with node v renamed perm[v]."""
        return Graph(self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 nodes")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def bfs_distances(adj, src, limit=None) -> dict:
    dist = {src: 0}
    q = deque([src])
    while q:
        x = q.popleft()
        if limit is not None and dist[x] >= limit:
            continue
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


@dataclass(frozen=True)
class PortAssignment:
    """order[v][p-1] is the neighbor reached through port p of v."""

    order: tuple

    @classmethod
    def identity(cls, g: Graph) -> "PortAssignment":
        return cls(tuple(g.adj))

    @classmethod
    def from_map(cls, g: Graph, prt: Mapping) -> "PortAssignment":
        """Build from {(v, u): port} covering every (node, neighbor) pair."""
        order = []
        for v in range(g.n):
            slots = [None] * g.degree(v)
            for u in g.adj[v]:
                p = prt[(v, u)]
                if not 1 <= p <= len(slots) or slots[p - 1] is not None:
                    raise ValueError(f"ports at node {v} are not a bijection onto [1, deg]")
                slots[p - 1] = u
            order.append(tuple(slots))
        return cls(tuple(order))

    @cached_property
    def _lookup(self) -> tuple:
        return tuple({u: i + 1 for i, u in enumerate(o)} for o in self.order)

    def port(self, v: int, u: int) -> int:
        return self._lookup[v][u]

    def validate(self, g: Graph) -> None:
        if len(self.order) != g.n:
            raise ValueError("port assignment size mismatch")
        for v in range(g.n):
            if tuple(sorted(self.order[v])) != g.adj[v]:
                raise ValueError(f"ports at node {v} are not a bijection onto [1, deg]")


@dataclass(frozen=True)
class IdAssignment:
    ids: tuple
    N: int

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(int(i) for i in self.ids))
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("identifiers are not injective")
        for i in self.ids:
            if not 1 <= i <= self.N:
                raise ValueError(f"identifier {i} outside [1, {self.N}]")

    @property
    def bit_width(self) -> int:
        return bit_width(self.N)

    @classmethod
    def canonical(cls, n: int, N: int | None = None) -> "IdAssignment":
        N = n * n if N is None else N
        return cls(tuple(range(1, n + 1)), max(N, 1))


@dataclass(frozen=True)
class Labeling:
    labels: tuple
    size_bits: int

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        lim = 1 << self.size_bits
        for x in self.labels:
            if not 0 <= x < lim:
                raise ValueError(f"label {x} does not fit in {self.size_bits} bits")

    def bitstring(self, v: int) -> str:
        return format(self.labels[v], f"0{self.size_bits}b") if self.size_bits else ""


def _hex(label: int, bits: int) -> str:
    width = (bits + 3) // 4
    return format(label, f"0{width}x") if width else ""


@dataclass(frozen=True)
class LabeledInstance:
    graph: Graph
    ports: PortAssignment
    ids: IdAssignment
    labels: Labeling

    def __post_init__(self):
        self.ports.validate(self.graph)
        if len(self.ids.ids) != self.graph.n or len(self.labels.labels) != self.graph.n:
            raise ValueError("assignments must cover exactly the graph's nodes")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def N(self) -> int:
        return self.ids.N

    def with_labels(self, labels: Labeling) -> "LabeledInstance":
        return LabeledInstance(self.graph, self.ports, self.ids, labels)

    def to_dict(self) -> dict:
        g = self.graph
        return {
            "n": g.n,
            "edges": [list(e) for e in g.sorted_edges()],
            "ports": {f"{u}-{v}": [self.ports.port(u, v), self.ports.port(v, u)]
                      for u, v in g.sorted_edges()},
            "ids": list(self.ids.ids),
            "labels": [_hex(x, self.labels.size_bits) for x in self.labels.labels],
            "label_bits": self.labels.size_bits,
            "N": self.ids.N,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> "LabeledInstance":
        n = int(d["n"])
        g = Graph.from_edges(n, [tuple(e) for e in d["edges"]])
        prt = {}
        for k, (pu, pv) in d["ports"].items():
            u, v = (int(x) for x in k.split("-"))
            prt[(u, v)] = int(pu)
            prt[(v, u)] = int(pv)
        ports = PortAssignment.from_map(g, prt)
        N = int(d.get("N", n * n))
        bits = int(d["label_bits"])
        labels = [int(h, 16) if h else 0 for h in d["labels"]]
        return cls(g, ports, IdAssignment(tuple(d["ids"]), N), Labeling(tuple(labels), bits))

    @classmethod
    def from_json(cls, text: str) -> "LabeledInstance":
        return cls.from_dict(json.loads(text))

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]


def unlabeled(g: Graph, ports: PortAssignment | None = None, ids: IdAssignment | None = None) -> LabeledInstance:
    ports = ports or PortAssignment.identity(g)
    ids = ids or IdAssignment.canonical(g.n)
    return LabeledInstance(g, ports, ids, Labeling((0,) * g.n, 0))


@dataclass(frozen=True)
class View:
    """A radius-r ball in local coordinates; local node 0 is the center.

    Local nodes are numbered by a breadth-first walk from the center that
    visits neighbors in port order, so the numbering depends only on the
    labeled structure.  ids entries are None in anonymized views.
    """

    radius: int
    N: int
    label_bits: int
    ids: tuple
    labels: tuple
    dist: tuple
    edges: tuple  # (a, b, port at a, port at b) with a < b
    origin: tuple = field(default=(), compare=False, hash=False)

    @property
    def size(self) -> int:
        return len(self.ids)

    @property
    def center_id(self):
        return self.ids[0]

    @cached_property
    def adj(self) -> tuple:
        nb = [[] for _ in range(self.size)]
        for a, b, pa, pb in self.edges:
            nb[a].append((pa, b, pb))
            nb[b].append((pb, a, pa))
        return tuple(tuple(sorted(x)) for x in nb)

    def anonymized(self) -> "View":
        return View(self.radius, self.N, self.label_bits, (None,) * self.size,
                    self.labels, self.dist, self.edges, self.origin)

    def local_of_id(self, i: int):
        try:
            return self.ids.index(i)
        except ValueError:
            return None

    def to_dict(self) -> dict:
        return {
            "radius": self.radius, "N": self.N, "label_bits": self.label_bits,
            "ids": list(self.ids), "labels": [_hex(x, self.label_bits) for x in self.labels],
            "dist": list(self.dist), "edges": [list(e) for e in self.edges],
        }


def _port_bfs_order(center, nodes_adj) -> list:
    """nodes_adj[x] = list of (port_at_x, y); returns visit order."""
    order = [center]
    seen = {center}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for _, y in sorted(nodes_adj[x]):
            if y not in seen:
                seen.add(y)
                order.append(y)
    return order


def extract_view(instance: LabeledInstance, v: int, r: int) -> View:
    g = instance.graph
    if not 0 <= v < g.n:
        raise IndexError(f"node {v} out of range")
    if r < 0:
        raise ValueError("radius must be non-negative")
    dist = bfs_distances(g.adj, v, limit=r)
    ports = instance.ports
    local_adj = {x: [] for x in dist}
    ball_edges = []
    for x in dist:
        for y in g.adj[x]:
            if y in dist and x < y and min(dist[x], dist[y]) < r:
                ball_edges.append((x, y))
                local_adj[x].append((ports.port(x, y), y))
                local_adj[y].append((ports.port(y, x), x))
    order = _port_bfs_order(v, local_adj)
    loc = {x: i for i, x in enumerate(order)}
    edges = []
    for x, y in ball_edges:
        a, b = loc[x], loc[y]
        pa, pb = ports.port(x, y), ports.port(y, x)
        if a > b:
            a, b, pa, pb = b, a, pb, pa
        edges.append((a, b, pa, pb))
    ids = instance.ids.ids
    labs = instance.labels.labels
    return View(r, instance.N, instance.labels.size_bits,
                tuple(ids[x] for x in order), tuple(labs[x] for x in order),
                tuple(dist[x] for x in order), tuple(sorted(edges)), tuple(order))


def canonical_key(view: View) -> bytes:
    """Deterministic byte serialization; equal iff the labeled views coincide."""
    return repr(("view/1", view.radius, view.N, view.label_bits, view.ids,
                 view.labels, view.edges)).encode()


def view_digest(key: bytes) -> str:
    return hashlib.sha1(key).hexdigest()[:8]


class LocalContext(NamedTuple):
    """What a one-round decoder reads: own data plus (port, id, back port, label) per neighbor.

    Labels may be None while a search has not assigned them yet.
    """

    id: int | None
    label: int | None
    nbrs: tuple
    N: int
    bits: int


def context_from_view(view: View) -> LocalContext:
    nbrs = tuple((p, view.ids[b], pb, view.labels[b]) for p, b, pb in view.adj[0])
    return LocalContext(view.ids[0], view.labels[0], nbrs, view.N, view.label_bits)


def enumerate_port_assignments(g: Graph) -> Iterator[PortAssignment]:
    for combo in itertools.product(*(itertools.permutations(a) for a in g.adj)):
        yield PortAssignment(tuple(combo))


def count_port_assignments(g: Graph) -> int:
    out = 1
    for a in g.adj:
        for k in range(2, len(a) + 1):
            out *= k
    return out


def enumerate_id_assignments(g: Graph, N: int, mode: str = "canonical") -> Iterator[IdAssignment]:
    if N < g.n:
        raise ValueError(f"id space N={N} smaller than node count {g.n}")
    if mode == "canonical":
        yield IdAssignment(tuple(range(1, g.n + 1)), max(N, 1))
    elif mode == "all-orderings":
        for perm in itertools.permutations(range(1, g.n + 1)):
            yield IdAssignment(perm, max(N, 1))
    else:
        raise ValueError(f"unknown id mode {mode!r}")


class Bipartition(NamedTuple):
    ok: bool
    coloring: tuple | None
    odd_cycle: tuple | None


def two_color(nodes: Sequence[Hashable], adj: Mapping) -> tuple[dict | None, list | None]:
    """BFS 2-coloring of an arbitrary graph given by adjacency.

    Returns (coloring, None) or (None, odd cycle).  Components are seeded in
    the order of `nodes`, each seed colored 0.
    """
    color = {}
    parent = {}
    for s in nodes:
        if s in color:
            continue
        color[s] = 0
        parent[s] = None
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    parent[y] = x
                    q.append(y)
                elif color[y] == color[x]:
                    return None, _tree_cycle(parent, x, y)
    return color, None


def _tree_cycle(parent, x, y) -> list:
    px = [x]
    while parent[px[-1]] is not None:
        px.append(parent[px[-1]])
    py = [y]
    while parent[py[-1]] is not None:
        py.append(parent[py[-1]])
    sx = set(px)
    lca = next(z for z in py if z in sx)
    a = px[:px.index(lca) + 1]
    b = py[:py.index(lca)]
    return list(reversed(a)) + b


def is_bipartite(g: Graph) -> Bipartition:
    col, cyc = two_color(range(g.n), g.adj)
    if col is None:
        return Bipartition(False, None, tuple(cyc))
    return Bipartition(True, tuple(col[v] for v in range(g.n)), None)


def shortest_odd_cycle(nodes: Sequence[Hashable], adj: Mapping) -> list | None:
    """Shortest odd cycle as a node list, or None if the graph is bipartite.

    From every start s, BFS records which child of s each node hangs under;
    an edge inside one BFS layer joining different branches closes a simple
    odd cycle through s.  The minimum over all s is the odd girth.
    """
    best = None
    for s in nodes:
        dist = {s: 0}
        parent = {s: None}
        branch = {s: None}
        q = deque([s])
        found = None
        while q and found is None:
            x = q.popleft()
            if best is not None and 2 * dist[x] + 1 >= len(best):
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    branch[y] = y if x == s else branch[x]
                    q.append(y)
                elif dist[y] == dist[x] and branch[x] != branch[y]:
                    found = (x, y)
                    break
        if found is None:
            continue
        x, y = found
        a = [x]
        while parent[a[-1]] is not None:
            a.append(parent[a[-1]])
        b = [y]
        while parent[b[-1]] is not None:
            b.append(parent[b[-1]])
        cyc = list(reversed(a)) + b[:-1]
        if best is None or len(cyc) < len(best):
            best = cyc
    return best
