"""Constant-size anonymous decoders: revealing, degree-one hiding, even cycles."""
from __future__ import annotations

from functools import lru_cache

from ..core import Graph, IdAssignment, Labeling, LocalContext, PortAssignment
from .base import Decoder, two_coloring_from


class AcceptAll(Decoder):
    """Accepts everything; the baseline that must fail every soundness check."""

    name = "accept-all"
    uses_ports = False

    def label_bits(self, n, N, max_degree):
        return 1

    def local_check(self, ctx):
        return True

    def prove(self, g, ports, ids):
        return Labeling((0,) * g.n, 1)

    def alphabet(self, g, ids, fresh=None):
        return (0,)

    def reduce_label(self, label, bits, N, rename, max_degree):
        return 0


class Revealing(Decoder):
    """The certificate is the node's color."""

    name = "revealing"
    uses_ports = False

    def label_bits(self, n, N, max_degree):
        return 1

    def local_check(self, ctx: LocalContext):
        own = ctx.label
        unknown = False
        for _, _, _, lab in ctx.nbrs:
            if lab is None:
                unknown = True
            elif lab == own:
                return False
        return None if unknown else True

    def prove(self, g, ports, ids):
        col = two_coloring_from(g, ids)
        return None if col is None else Labeling(tuple(col), 1)

    def alphabet(self, g, ids, fresh=None):
        return (0, 1)

    def reduce_label(self, label, bits, N, rename, max_degree):
        return label


ZERO, ONE, BOT, TOP = 0, 1, 2, 3
DEG1_SYMBOLS = {ZERO: "0", ONE: "1", BOT: "⊥", TOP: "⊤"}


class DegreeOne(Decoder):
    """Hides the color of one degree-1 node and its neighbor.

    The hidden leaf carries BOT, its neighbor TOP, and every other node its
    color.  TOP requires its remaining neighbors to share a single color
    (common_beta); without that, a triangle with a pendant TOP/BOT pair makes
    two adjacent colored nodes and the TOP node all accept.
    """

    name = "deg1"
    uses_ports = False

    def __init__(self, common_beta: bool = True):
        self.common_beta = common_beta
        if not common_beta:
            self.name = "deg1-loose"

    def label_bits(self, n, N, max_degree):
        return 2

    def local_check(self, ctx: LocalContext):
        own = ctx.label
        labs = [lab for _, _, _, lab in ctx.nbrs]
        unknown = sum(1 for x in labs if x is None)
        known = [x for x in labs if x is not None]
        if own == BOT:
            if len(labs) != 1:
                return False
            return None if unknown else known[0] == TOP
        if own == TOP:
            bots = known.count(BOT)
            if bots > 1 or TOP in known:
                return False
            colors = {x for x in known if x != BOT}
            if self.common_beta and len(colors) > 1:
                return False
            if unknown:
                return None
            return bots == 1
        # colored node
        if known.count(TOP) > 1 or BOT in known:
            return False
        if any(x == own for x in known):
            return False
        return None if unknown else True

    def prove(self, g: Graph, ports: PortAssignment, ids: IdAssignment):
        col = two_coloring_from(g, ids)
        if col is None:
            return None
        leaves = [v for v in range(g.n) if len(g.adj[v]) == 1]
        if not leaves:
            return None
        u = min(leaves, key=lambda v: ids.ids[v])
        w = g.adj[u][0]
        labels = list(col)
        labels[u] = BOT
        labels[w] = TOP
        return Labeling(tuple(labels), 2)

    def alphabet(self, g, ids, fresh=None):
        return (ZERO, ONE, BOT, TOP)

    def reduce_label(self, label, bits, N, rename, max_degree):
        return label

    def describe(self, label, bits, N):
        return DEG1_SYMBOLS[label]


# cycle labels: two entries (own port a, neighbor port b, color c); a and b
# take 2 bits each (valid values 1, 2) and c one bit
_ENTRY_BITS = 5
CYCLE_SENTINEL = 0


def encode_cycle_entry(a: int, b: int, c: int) -> int:
    return (a << 3) | (b << 1) | c


def encode_cycle_label(e1: tuple, e2: tuple) -> int:
    return (encode_cycle_entry(*e1) << _ENTRY_BITS) | encode_cycle_entry(*e2)


@lru_cache(maxsize=4096)
def decode_cycle_label(label: int):
    out = []
    for e in ((label >> _ENTRY_BITS) & 31, label & 31):
        a, b, c = (e >> 3) & 3, (e >> 1) & 3, e & 1
        if a not in (1, 2) or b not in (1, 2):
            return None
        out.append((a, b, c))
    return tuple(out)


class EvenCycle(Decoder):
    """Certificates describe a proper 2-edge-coloring with explicit ports."""

    name = "cycle"

    def label_bits(self, n, N, max_degree):
        return 2 * _ENTRY_BITS

    def local_check(self, ctx: LocalContext):
        me = decode_cycle_label(ctx.label)
        if me is None or len(ctx.nbrs) != 2:
            return False
        by_port = {a: (b, c) for a, b, c in me}
        if set(by_port) != {1, 2} or by_port[1][1] == by_port[2][1]:
            return False
        unknown = False
        for p, _, back, lab in ctx.nbrs:
            b, c = by_port[p]
            if b != back:
                return False
            if lab is None:
                unknown = True
                continue
            other = decode_cycle_label(lab)
            if other is None or (back, p, c) not in other:
                return False
        return None if unknown else True

    def prove(self, g: Graph, ports: PortAssignment, ids: IdAssignment):
        if g.n < 4 or g.n % 2 or not g.is_connected() or any(len(a) != 2 for a in g.adj):
            return None
        s = min(range(g.n), key=lambda v: ids.ids[v])
        color = {}
        prev, cur = s, ports.order[s][0]
        c = 0
        color[frozenset((s, cur))] = 0
        while cur != s:
            nxt = next(y for y in g.adj[cur] if y != prev)
            c = 1 - c
            color[frozenset((cur, nxt))] = c
            prev, cur = cur, nxt
        labels = []
        for v in range(g.n):
            es = []
            for p, u in enumerate(ports.order[v], start=1):
                es.append((p, ports.port(u, v), color[frozenset((u, v))]))
            labels.append(encode_cycle_label(es[0], es[1]))
        return Labeling(tuple(labels), 10)

    def alphabet(self, g, ids, fresh=None):
        vals = [encode_cycle_label((a1, b1, c1), (a2, b2, c2))
                for a1 in (1, 2) for b1 in (1, 2) for c1 in (0, 1)
                for a2 in (1, 2) for b2 in (1, 2) for c2 in (0, 1)]
        return tuple(sorted(vals + [CYCLE_SENTINEL]))

    def reduce_label(self, label, bits, N, rename, max_degree):
        return label if decode_cycle_label(label) is not None else CYCLE_SENTINEL

    def describe(self, label, bits, N):
        d = decode_cycle_label(label)
        return "invalid" if d is None else " ".join(f"({a},{b},{c})" for a, b, c in d)

