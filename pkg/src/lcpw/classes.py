"""Graph classes: exhaustive enumeration, class predicates and generators."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .core import Graph, bfs_distances, cycle_graph, is_bipartite, path_graph

DEFAULT_CAP = 7


# -- canonical forms ---------------------------------------------------------

def _refine(g: Graph) -> list:
    """Stable color refinement; colors are ranks of canonical signatures."""
    color = [len(a) for a in g.adj]
    while True:
        sig = [(color[v], tuple(sorted(color[u] for u in g.adj[v]))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(color)):
            return new
        color = new


def canonical_order(g: Graph) -> tuple[tuple, tuple]:
    """(certificate, node order) minimizing the adjacency bitstring.

    Only orders compatible with the refined color partition are tried, which
    keeps n <= 8 cheap while remaining a complete invariant.
    """
    color = _refine(g)
    cells = [[v for v in range(g.n) if color[v] == c] for c in sorted(set(color))]
    es = g.edges
    best = None
    best_order = None
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for p in parts for v in p]
        bits = tuple((min(order[i], order[j]), max(order[i], order[j])) in es
                     for i in range(g.n) for j in range(i + 1, g.n))
        if best is None or bits > best:
            best, best_order = bits, order
    return (g.n, tuple(sorted(color)), best), tuple(best_order or ())


def canonical_form(g: Graph) -> tuple:
    return canonical_order(g)[0]


def canonical_graph(g: Graph) -> Graph:
    _, order = canonical_order(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


@lru_cache(maxsize=None)
def _connected_level(n: int) -> tuple:
    if n == 1:
        return (Graph(1, frozenset()),)
    seen = {}
    for g in _connected_level(n - 1):
        for k in range(1, n):
            for nbrs in itertools.combinations(range(n - 1), k):
                h = Graph(n, g.edges | {(u, n - 1) for u in nbrs})
                cert, _ = canonical_order(h)
                if cert not in seen:
                    seen[cert] = canonical_graph(h)
    return tuple(seen[c] for c in sorted(seen))


def enumerate_connected_graphs(n: int, cap: int = DEFAULT_CAP) -> Iterator[Graph]:
    """Every connected graph on n nodes exactly once up to isomorphism."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    yield from _connected_level(n)


def _tree_centers(t: Graph) -> list:
    deg = [len(a) for a in t.adj]
    layer = [v for v in range(t.n) if deg[v] <= 1]
    left = t.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for u in t.adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def tree_code(t: Graph) -> tuple:
    """Rooted-at-center parenthesis code of a tree plus the matching node order.

    Linear-time alternative to canonical_order for trees, whose symmetric
    cells make permutation search explode.
    """
    def code(v, parent):
        kids = sorted((code(u, v) for u in t.adj[v] if u != parent), key=lambda x: x[0])
        return "(" + "".join(k[0] for k in kids) + ")", [v] + [x for k in kids for x in k[1]]

    best = None
    for c in _tree_centers(t):
        cand = code(c, None)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


@lru_cache(maxsize=None)
def _tree_level(n: int) -> tuple:
    if n == 1:
        return (Graph(1, frozenset()),)
    seen = {}
    for t in _tree_level(n - 1):
        for u in range(n - 1):
            h = Graph(n, t.edges | {(u, n - 1)})
            cert, order = tree_code(h)
            if cert not in seen:
                perm = [0] * n
                for i, v in enumerate(order):
                    perm[v] = i
                seen[cert] = h.relabel(perm)
    return tuple(seen[c] for c in sorted(seen))


def enumerate_trees(n: int) -> Iterator[Graph]:
    yield from _tree_level(n)


# -- predicates --------------------------------------------------------------

def components(adj, nodes) -> list:
    nodes = set(nodes)
    out = []
    while nodes:
        s = min(nodes)
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in nodes and y not in comp:
                    comp.add(y)
                    stack.append(y)
        nodes -= comp
        out.append(sorted(comp))
    return out


def shatter_components(g: Graph, v: int) -> list:
    closed = set(g.adj[v]) | {v}
    return components(g.adj, [x for x in range(g.n) if x not in closed])


def has_shatter_point(g: Graph, order=None):
    """Smallest node (in `order`, default index order) whose closed
    neighborhood disconnects the rest into at least two parts."""
    for v in (order if order is not None else range(g.n)):
        if len(shatter_components(g, v)) >= 2:
            return v
    return None


@dataclass(frozen=True)
class WatermelonShape:
    lengths: tuple

    def __post_init__(self):
        ls = tuple(int(x) for x in self.lengths)
        if len(ls) < 1 or any(x < 2 for x in ls):
            raise ValueError("watermelon paths need length >= 2")
        object.__setattr__(self, "lengths", ls)

    @property
    def n(self) -> int:
        return 2 + sum(x - 1 for x in self.lengths)


class WatermelonDecomposition(NamedTuple):
    endpoints: tuple
    paths: tuple  # node sequences from endpoints[0] to endpoints[1]


def realize_watermelon(shape: WatermelonShape) -> Graph:
    """Endpoints are nodes 0 and 1; internal nodes follow path by path."""
    edges = []
    nxt = 2
    for length in shape.lengths:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def decompose_watermelon(g: Graph, *, allow_cycles: bool = True, min_paths: int = 2):
    """Endpoints and endpoint-to-endpoint paths, or None.

    allow_cycles admits a cycle of length >= 4 as a two-path watermelon (its
    endpoints are node 0 and the antipodal node).  min_paths=1 admits paths
    with at least 3 nodes.
    """
    if g.n < 3 or not g.is_connected():
        return None
    deg = [len(a) for a in g.adj]
    special = [v for v in range(g.n) if deg[v] != 2]
    if not special:
        if not allow_cycles or min_paths > 2 or g.n < 4:
            return None
        far = max(range(g.n), key=lambda x: (bfs_distances(g.adj, 0)[x], -x))
        v1, v2 = 0, far
    else:
        if len(special) != 2:
            return None
        v1, v2 = special
        if deg[v1] != deg[v2] or v2 in g.adj[v1]:
            return None
        if deg[v1] < min_paths or deg[v1] == 2:
            return None
    paths = []
    for start in g.adj[v1]:
        path = [v1, start]
        while path[-1] != v2:
            x = path[-1]
            if deg[x] != 2:
                return None
            nxt = [y for y in g.adj[x] if y != path[-2]]
            if len(nxt) != 1:
                return None
            path.append(nxt[0])
            if len(path) > g.n + 1:
                return None
        if len(path) < 3:
            return None
        paths.append(tuple(path))
    if sum(len(p) - 2 for p in paths) + 2 != g.n:
        return None
    if len(paths) < min_paths:
        return None
    paths.sort(key=lambda p: min(p[1:-1]))
    return WatermelonDecomposition((v1, v2), tuple(paths))


def is_watermelon(g: Graph, **kw) -> bool:
    return decompose_watermelon(g, **kw) is not None


class Forgetful(NamedTuple):
    ok: bool
    witness: tuple | None


def all_pairs_distances(g: Graph) -> list:
    return [bfs_distances(g.adj, v) for v in range(g.n)]


def is_r_forgetful(g: Graph, r: int, *, monitor: str = "ball") -> Forgetful:
    """Check the r-forgetful property by brute-force path search.

    For each node v and neighbor u, a length-r path from v must strictly move
    away from every monitored node w, where w ranges over nodes within
    distance r of u that are closer to u than to v.  monitor="intersection"
    additionally restricts w to lie within distance r of v.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if not is_bipartite(g).ok:
        raise ValueError("r-forgetfulness is defined for bipartite graphs")
    if monitor not in ("ball", "intersection"):
        raise ValueError(f"unknown monitor mode {monitor!r}")
    d = all_pairs_distances(g)
    inf = g.n + 1
    for v in range(g.n):
        for u in g.adj[v]:
            watch = [w for w in range(g.n)
                     if d[u].get(w, inf) <= r and d[u].get(w, inf) < d[v].get(w, inf)
                     and (monitor == "ball" or d[v].get(w, inf) <= r)]

            def extend(x, depth):
                if depth == r:
                    return True
                for y in g.adj[x]:
                    if all(d[y].get(w, inf) > d[x].get(w, inf) for w in watch):
                        if extend(y, depth + 1):
                            return True
                return False

            if not extend(v, 0):
                return Forgetful(False, (v, u))
    return Forgetful(True, None)


def diameter(g: Graph) -> int:
    if g.n == 0:
        raise ValueError("empty graph has no diameter")
    best = 0
    for v in range(g.n):
        d = bfs_distances(g.adj, v)
        if len(d) != g.n:
            raise ValueError("graph is disconnected")
        best = max(best, max(d.values()))
    return best


# -- constructive families beyond the enumeration cap ------------------------

def torus_graph(a: int, b: int) -> Graph:
    idx = lambda i, j: (i % a) * b + (j % b)
    es = set()
    for i in range(a):
        for j in range(b):
            for di, dj in ((0, 1), (1, 0)):
                x, y = idx(i, j), idx(i + di, j + dj)
                if x != y:
                    es.add((min(x, y), max(x, y)))
    return Graph(a * b, frozenset(es))


def grid_graph(a: int, b: int) -> Graph:
    idx = lambda i, j: i * b + j
    es = [(idx(i, j), idx(i, j + 1)) for i in range(a) for j in range(b - 1)]
    es += [(idx(i, j), idx(i + 1, j)) for i in range(a - 1) for j in range(b)]
    return Graph.from_edges(a * b, es)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph.from_edges(n, [(x, x ^ (1 << k)) for x in range(n) for k in range(d) if x < x ^ (1 << k)])


def _random_bipartite_connected(n: int, rng: random.Random, p: float) -> Graph:
    while True:
        side = [rng.randrange(2) for _ in range(n)]
        if 0 < sum(side) < n:
            break
    es = [(u, v) for u in range(n) for v in range(u + 1, n) if side[u] != side[v] and rng.random() < p]
    g = Graph.from_edges(n, es)
    comps = components(g.adj, range(n))
    extra = []
    for a, b in zip(comps, comps[1:]):
        # join consecutive components with an edge across the two sides
        x = a[0]
        y = next((z for z in b if side[z] != side[x]), None)
        if y is None:
            x = next((z for z in a if side[z] != side[b[0]]), None)
            y = b[0]
        if x is None:
            return _random_bipartite_connected(n, rng, p)
        extra.append((x, y))
    return Graph.from_edges(n, list(g.edges) + extra)


def _search_size(g: Graph) -> int:
    out = 1
    color = _refine(g)
    for c in set(color):
        for k in range(2, color.count(c) + 1):
            out *= k
    return out


def _dedupe(graphs) -> list:
    """Drop isomorphic repeats where a canonical form is cheap to get."""
    seen = set()
    out = []
    for g in graphs:
        if len(g.edges) == g.n - 1 and g.is_connected():
            c = ("tree", tree_code(g)[0])
        elif _search_size(g) <= 20000:
            c = canonical_form(g)
        else:
            c = (g.n, tuple(sorted(g.edges)))
        if c not in seen:
            seen.add(c)
            out.append(g)
    return out


def bipartite_family(n: int, seed: int = 0) -> list:
    """Connected bipartite graphs on n nodes beyond the exhaustive cap."""
    return list(_bipartite_family(n, seed))


@lru_cache(maxsize=64)
def _bipartite_family(n: int, seed: int) -> tuple:
    out = [path_graph(n)]
    if n % 2 == 0 and n >= 4:
        out.append(cycle_graph(n))
    for a in range(1, n // 2 + 1):
        out.append(complete_bipartite(a, n - a))
    for a in range(2, n):
        if n % a == 0 and n // a >= 2:
            out.append(grid_graph(a, n // a))
            if a % 2 == 0 and (n // a) % 2 == 0 and a >= 4 and n // a >= 4:
                out.append(torus_graph(a, n // a))
    if n == 8:
        out.append(hypercube(3))
    if n <= 10:
        out.extend(enumerate_trees(n))
    rng = random.Random(seed * 1000 + n)
    for p in (0.25, 0.4, 0.6):
        for _ in range(4):
            out.append(_random_bipartite_connected(n, rng, p))
    return tuple(_dedupe(out))


def shatter_family(n: int, seed: int = 0) -> list:
    """Connected bipartite graphs on n nodes that have a shatter point."""
    cands = [g for g in bipartite_family(n, seed) if has_shatter_point(g) is not None]
    # spiders: center 0 with legs of near-equal length
    for legs in range(2, 5):
        if n - 1 >= 2 * legs:
            sizes = [(n - 1) // legs + (1 if i < (n - 1) % legs else 0) for i in range(legs)]
            es, nxt = [], 1
            for s in sizes:
                prev = 0
                for _ in range(s):
                    es.append((prev, nxt))
                    prev = nxt
                    nxt += 1
            cands.append(Graph.from_edges(n, es))
    # center with two neighbors, each carrying an even cycle or a path
    if n >= 9:
        k = n - 3
        left = k // 2 if (k // 2) % 2 == 0 else k // 2 - 1
        right = k - left
        if left >= 4:
            es = [(0, 1), (0, 2)]
            ring = list(range(3, 3 + left))
            es += [(ring[i], ring[(i + 1) % left]) for i in range(left)]
            es.append((1, ring[0]))
            tail = list(range(3 + left, n))
            es.append((2, tail[0]))
            es += [(tail[i], tail[i + 1]) for i in range(len(tail) - 1)]
            cands.append(Graph.from_edges(n, es))
    out = [g for g in _dedupe(cands)
           if g.is_connected() and is_bipartite(g).ok and has_shatter_point(g) is not None]
    return out


# -- tags and generation -----------------------------------------------------

TAGS = ("min-degree-one", "even-cycle", "cycle", "shatter-point", "watermelon",
        "r-forgetful", "bipartite", "all-connected")


@dataclass(frozen=True)
class ClassTag:
    kind: str
    param: tuple = ()

    def __post_init__(self):
        if self.kind not in TAGS:
            raise ValueError(f"unknown class {self.kind!r}; choose from {', '.join(TAGS)}")
        if self.kind == "r-forgetful" and (len(self.param) != 1 or self.param[0] < 1):
            raise ValueError("r-forgetful needs a radius r >= 1, e.g. r-forgetful:1")

    @classmethod
    def parse(cls, text: str) -> "ClassTag":
        kind, _, rest = text.partition(":")
        param = tuple(int(x) for x in rest.split(",") if x.strip()) if rest else ()
        return cls(kind.strip(), param)

    def __str__(self) -> str:
        return self.kind + (":" + ",".join(map(str, self.param)) if self.param else "")

    def contains(self, g: Graph) -> bool:
        k = self.kind
        if k == "all-connected":
            return g.is_connected()
        if not g.is_connected():
            return False
        if k == "bipartite":
            return is_bipartite(g).ok
        if k == "min-degree-one":
            return g.n >= 2 and min(len(a) for a in g.adj) == 1
        if k in ("even-cycle", "cycle"):
            ok = g.n >= 3 and all(len(a) == 2 for a in g.adj)
            return ok and (k == "cycle" or g.n % 2 == 0)
        if k == "shatter-point":
            return has_shatter_point(g) is not None
        if k == "watermelon":
            return decompose_watermelon(g) is not None
        if k == "r-forgetful":
            return is_bipartite(g).ok and is_r_forgetful(g, self.param[0]).ok
        raise AssertionError(k)


def _filtered(tag: ClassTag, n: int, cap: int) -> list:
    if n <= cap:
        return [g for g in enumerate_connected_graphs(n, cap) if tag.contains(g)]
    if tag.kind == "bipartite":
        return bipartite_family(n)
    if tag.kind == "r-forgetful":
        return [g for g in bipartite_family(n) if tag.contains(g)]
    if tag.kind == "shatter-point":
        return shatter_family(n)
    raise ValueError(f"n={n} exceeds the enumeration cap {cap} for class {tag}")


def watermelon_shapes(n: int, min_paths: int = 2) -> Iterator[WatermelonShape]:
    """All shapes (sorted path lengths) with exactly n nodes."""
    internal = n - 2

    def parts(rem, lo):
        if rem == 0:
            yield ()
            return
        for x in range(lo, rem + 1):
            for rest in parts(rem - x, x):
                yield (x,) + rest

    for p in parts(internal, 1):
        if len(p) >= min_paths:
            yield WatermelonShape(tuple(x + 1 for x in p))


def generate(tag: ClassTag | str, n: int, *, cap: int = DEFAULT_CAP) -> list:
    """Class members with exactly n nodes, in a deterministic order.

    A tag parameter overrides n where it fixes the graph ("even-cycle:6",
    "watermelon:3,3,5").
    """
    if isinstance(tag, str):
        tag = ClassTag.parse(tag)
    k = tag.kind
    if k in ("even-cycle", "cycle") and tag.param:
        m = tag.param[0]
        if m < 3 or (k == "even-cycle" and m % 2):
            raise ValueError(f"invalid cycle length {m} for {k}")
        return [cycle_graph(m)] if m == n else []
    if k == "watermelon" and tag.param:
        g = realize_watermelon(WatermelonShape(tag.param))
        return [g] if g.n == n else []
    if k == "even-cycle":
        return [cycle_graph(n)] if n >= 4 and n % 2 == 0 else []
    if k == "cycle":
        return [cycle_graph(n)] if n >= 3 else []
    if k == "watermelon":
        return [realize_watermelon(s) for s in watermelon_shapes(n)]
    return _filtered(tag, n, cap)


def generate_upto(tag: ClassTag | str, n_max: int, *, cap: int = DEFAULT_CAP, n_min: int = 1) -> Iterator[Graph]:
    for m in range(n_min, n_max + 1):
        yield from generate(tag, m, cap=cap)


def automorphisms(g: Graph) -> list:
    """All automorphisms as tuples perm with perm[v] the image of v."""
    color = _refine(g)
    cells = {}
    for v in range(g.n):
        cells.setdefault(color[v], []).append(v)
    out = []
    es = g.edges
    keys = sorted(cells)
    for parts in itertools.product(*(itertools.permutations(cells[c]) for c in keys)):
        perm = [0] * g.n
        for c, p in zip(keys, parts):
            for src, dst in zip(cells[c], p):
                perm[src] = dst
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in es for u, v in es):
            out.append(tuple(perm))
    return out
