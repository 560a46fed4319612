"""Decoder for bipartite graphs with a shatter point.

Label layout, most significant first: type (2 bits), id (bit_width(N) bits),
body (W bits) where W = max(3, min(Delta^2, n)).  The body is zero for
type 0, the per-component color vector for type 1 (bit i-1 is component i)
and (component number << 1 | color) for type 2.  Type 3 is invalid.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from ..classes import has_shatter_point, shatter_components
from ..core import Graph, IdAssignment, Labeling, LocalContext, PortAssignment, bit_width, path_graph
from .base import Decoder, alphabet_ids, two_coloring_from


def body_width(n: int, max_degree: int) -> int:
    return max(3, min(max_degree * max_degree, n))


class ShatterLabel(NamedTuple):
    type: int
    id: int
    colors: int  # type 1 only
    num: int  # type 2 only
    x: int  # type 2 only

    def color_of(self, comp: int, W: int):
        if not 1 <= comp <= W:
            return None
        return (self.colors >> (comp - 1)) & 1


def encode_shatter(lab: ShatterLabel, N: int, W: int) -> int:
    idw = bit_width(N)
    if lab.type == 0:
        body = 0
    elif lab.type == 1:
        body = lab.colors
    elif lab.type == 2:
        body = (lab.num << 1) | lab.x
    else:
        body = 0
    return (lab.type << (idw + W)) | (lab.id << W) | body


@lru_cache(maxsize=1 << 16)
def decode_shatter(label: int, bits: int, N: int):
    idw = bit_width(N)
    W = bits - 2 - idw
    if W < 1:
        return None
    t = label >> (idw + W)
    i = (label >> W) & ((1 << idw) - 1)
    body = label & ((1 << W) - 1)
    if t > 2 or not 1 <= i <= N:
        return None
    if t == 0:
        return ShatterLabel(0, i, 0, 0, 0) if body == 0 else None
    if t == 1:
        return ShatterLabel(1, i, body, 0, 0)
    num, x = body >> 1, body & 1
    if not 1 <= num <= W:
        return None
    return ShatterLabel(2, i, 0, num, x)


class Shatter(Decoder):
    name = "shatter"
    anonymous = False
    order_invariant = True
    uses_ports = False
    id_fields = 1

    def label_bits(self, n, N, max_degree):
        return 2 + bit_width(N) + body_width(n, max_degree)

    def local_check(self, ctx: LocalContext):
        me = decode_shatter(ctx.label, ctx.bits, ctx.N)
        if me is None:
            return False
        W = ctx.bits - 2 - bit_width(ctx.N)
        unknown = False
        known = []
        for _, _, _, lab in ctx.nbrs:
            if lab is None:
                unknown = True
                continue
            d = decode_shatter(lab, ctx.bits, ctx.N)
            if d is None:
                return False
            known.append(d)
        if me.type == 0:
            if me.id != ctx.id:
                return False
            content = None
            for d in known:
                if d.type != 1 or d.id != ctx.id:
                    return False
                if content is None:
                    content = (d.id, d.colors)
                elif content != (d.id, d.colors):
                    return False
        elif me.type == 1:
            zeros = 0
            for d in known:
                if d.type == 1:
                    return False
                if d.type == 0:
                    zeros += 1
                    if d.id != me.id:
                        return False
                elif d.id != me.id or me.color_of(d.num, W) != d.x:
                    return False
            if zeros > 1 or (not unknown and zeros != 1):
                return False
        else:
            for d in known:
                if d.type == 0:
                    return False
                if d.id != me.id:
                    return False
                if d.type == 1:
                    if d.color_of(me.num, W) != me.x:
                        return False
                elif d.num != me.num or d.x == me.x:
                    return False
        return None if unknown else True

    def prove(self, g: Graph, ports: PortAssignment, ids: IdAssignment):
        col = two_coloring_from(g, ids)
        if col is None or not g.is_connected():
            return None
        v = has_shatter_point(g, order=sorted(range(g.n), key=lambda x: ids.ids[x]))
        if v is None:
            return None
        W = body_width(g.n, g.max_degree)
        comps = shatter_components(g, v)
        comps.sort(key=lambda c: min(ids.ids[x] for x in c))
        if len(comps) > W:
            return None
        N = ids.N
        nv = set(g.adj[v])
        comp_of = {}
        x = {}
        colors = 0
        for num, comp in enumerate(comps, start=1):
            root = min(comp, key=lambda y: ids.ids[y])
            flip = col[root]
            for y in comp:
                comp_of[y] = num
                x[y] = col[y] ^ flip
            seen = {x[y] for y in comp if any(z in nv for z in g.adj[y])}
            if len(seen) != 1:
                return None
            colors |= seen.pop() << (num - 1)
        vid = ids.ids[v]
        labels = []
        for u in range(g.n):
            if u == v:
                lab = ShatterLabel(0, vid, 0, 0, 0)
            elif u in nv:
                lab = ShatterLabel(1, vid, colors, 0, 0)
            else:
                lab = ShatterLabel(2, vid, 0, comp_of[u], x[u])
            labels.append(encode_shatter(lab, N, W))
        return Labeling(tuple(labels), self.bits_for(g, ids))

    def alphabet(self, g, ids, fresh=None):
        fresh = self.id_fields if fresh is None else fresh
        N = ids.N
        W = body_width(g.n, g.max_degree)
        out = []
        for i in alphabet_ids(ids, fresh):
            out.append(encode_shatter(ShatterLabel(0, i, 0, 0, 0), N, W))
            for c in range(1 << W):
                out.append(encode_shatter(ShatterLabel(1, i, c, 0, 0), N, W))
            for num in range(1, W + 1):
                for xx in (0, 1):
                    out.append(encode_shatter(ShatterLabel(2, i, 0, num, xx), N, W))
        out.append(self.sentinel(N, W))
        return tuple(sorted(set(out)))

    @staticmethod
    def sentinel(N, W):
        return 3 << (bit_width(N) + W)

    def label_ids(self, label, bits, N):
        d = decode_shatter(label, bits, N)
        return () if d is None else (d.id,)

    def relabel_ids(self, label, bits, N, mapping):
        d = decode_shatter(label, bits, N)
        if d is None:
            return label
        W = bits - 2 - bit_width(N)
        return encode_shatter(d._replace(id=mapping.get(d.id, d.id)), N, W)

    def reduce_label(self, label, bits, N, rename, max_degree):
        W = bits - 2 - bit_width(N)
        d = decode_shatter(label, bits, N)
        if d is None:
            return self.sentinel(N, W)
        return encode_shatter(d._replace(id=rename.get(d.id, d.id)), N, W)

    def describe(self, label, bits, N):
        d = decode_shatter(label, bits, N)
        if d is None:
            return "invalid"
        W = bits - 2 - bit_width(N)
        if d.type == 0:
            return f"0:{d.id}"
        if d.type == 1:
            return f"1:{d.id},{''.join(str(d.color_of(k, W)) for k in range(1, W + 1))}"
        return f"2:{d.id},#{d.num},{d.x}"

    def witness_family(self, N=None):
        return shatter_witness(N)


# node order along the path w3 w2 w1 u1 v u2 z1 z2, and the ids used for it;
# with these ids the prover reproduces the labelings of the hiding argument
SHATTER_PATH_IDS = (2, 5, 4, 6, 1, 7, 3, 8)


def shatter_witness(N=None) -> list:
    N = 8 if N is None else N
    long_ids = SHATTER_PATH_IDS
    short_ids = long_ids[:2] + long_ids[3:]
    return [(path_graph(8), IdAssignment(long_ids, N)), (path_graph(7), IdAssignment(short_ids, N))]
