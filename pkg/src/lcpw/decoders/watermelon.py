"""Decoder for bipartite watermelon graphs.

Label layout, most significant first, with w = bit_width(N): type (2 bits),
id1 (w), id2 (w), path number (w), p1 (w), c1 (1), p2 (w), c2 (1).  Type 1
(endpoint) leaves everything after id2 zero.  Valid labels have type 1 or
2 and 1 <= id1 < id2 <= N; type 2 additionally needs number and ports in
[1, N] and c1 != c2.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from ..classes import decompose_watermelon
from ..core import Graph, IdAssignment, Labeling, LocalContext, PortAssignment, bit_width, path_graph
from .base import Decoder, alphabet_ids


class MelonLabel(NamedTuple):
    type: int
    id1: int
    id2: int
    num: int = 0
    p1: int = 0
    c1: int = 0
    p2: int = 0
    c2: int = 0

    def entry(self, j: int):
        return (self.p1, self.c1) if j == 1 else (self.p2, self.c2)


def encode_melon(lab: MelonLabel, N: int) -> int:
    w = bit_width(N)
    out = lab.type
    for val, width in ((lab.id1, w), (lab.id2, w), (lab.num, w), (lab.p1, w),
                       (lab.c1, 1), (lab.p2, w), (lab.c2, 1)):
        out = (out << width) | val
    return out


@lru_cache(maxsize=1 << 18)
def decode_melon(label: int, N: int):
    w = bit_width(N)
    fields = []
    for width in (1, w, 1, w, w, w, w):
        fields.append(label & ((1 << width) - 1))
        label >>= width
    c2, p2, c1, p1, num, id2, id1 = fields
    t = label
    if t not in (1, 2) or not 1 <= id1 < id2 <= N:
        return None
    if t == 1:
        if num or p1 or c1 or p2 or c2:
            return None
        return MelonLabel(1, id1, id2)
    if not (1 <= num <= N and 1 <= p1 <= N and 1 <= p2 <= N) or c1 == c2:
        return None
    return MelonLabel(2, id1, id2, num, p1, c1, p2, c2)


def melon_bits(N: int) -> int:
    return 5 * bit_width(N) + 4


class Watermelon(Decoder):
    name = "watermelon"
    anonymous = False
    order_invariant = True
    id_fields = 2

    def label_bits(self, n, N, max_degree):
        return melon_bits(N)

    def local_check(self, ctx: LocalContext):
        me = decode_melon(ctx.label, ctx.N)
        if me is None:
            return False
        unknown = False
        known = []
        for p, nid, back, lab in ctx.nbrs:
            if lab is None:
                unknown = True
                known.append(None)
                continue
            d = decode_melon(lab, ctx.N)
            if d is None or d.id1 != me.id1 or d.id2 != me.id2:
                return False
            known.append(d)
        if me.type == 1:
            if ctx.id not in (me.id1, me.id2):
                return False
            nums = set()
            colors = set()
            for (p, _, back, _), d in zip(ctx.nbrs, known):
                if d is None:
                    continue
                # the neighbor's entry for this edge is the one indexed by its
                # own port toward u; matching on the recorded port alone is
                # ambiguous when both of its neighbors use the same port
                if d.type != 2 or back not in (1, 2):
                    return False
                pj, cj = d.entry(back)
                if pj != p or d.num in nums:
                    return False
                nums.add(d.num)
                colors.add(cj)
            if len(colors) > 1:
                return False
            if unknown:
                return None
            return len(colors) == 1
        if len(ctx.nbrs) != 2:
            return False
        for (i, nid, back, _), d in zip(ctx.nbrs, known):
            pi, ci = me.entry(i)
            if pi != back:
                return False
            if d is None:
                continue
            if d.type == 1:
                if nid not in (me.id1, me.id2):
                    return False
            else:
                if d.num != me.num or pi not in (1, 2):
                    return False
                pj, cj = d.entry(pi)
                if pj != i or cj != ci:
                    return False
        return None if unknown else True

    def prove(self, g: Graph, ports: PortAssignment, ids: IdAssignment):
        dec = decompose_watermelon(g, allow_cycles=True, min_paths=1)
        if dec is None:
            return None
        if len({len(p) % 2 for p in dec.paths}) != 1:
            return None
        a, b = dec.endpoints
        if ids.ids[a] > ids.ids[b]:
            a, b = b, a
        paths = [p if p[0] == a else p[::-1] for p in dec.paths]
        paths.sort(key=lambda p: min(ids.ids[x] for x in p[1:-1]))
        N = ids.N
        id1, id2 = ids.ids[a], ids.ids[b]
        color = {}
        num = {}
        for k, path in enumerate(paths, start=1):
            for t in range(len(path) - 1):
                color[frozenset(path[t:t + 2])] = t % 2
            for x in path[1:-1]:
                num[x] = k
        labels = []
        for u in range(g.n):
            if u in (a, b):
                lab = MelonLabel(1, id1, id2)
            else:
                (w1, w2) = ports.order[u]
                lab = MelonLabel(2, id1, id2, num[u],
                                 ports.port(w1, u), color[frozenset((u, w1))],
                                 ports.port(w2, u), color[frozenset((u, w2))])
            labels.append(encode_melon(lab, N))
        return Labeling(tuple(labels), melon_bits(N))

    def port_values(self, max_degree: int, N: int) -> list:
        # ports above max(Delta, 2) all behave alike, so one such value suffices
        top = max(max_degree, 2)
        return list(range(1, min(top + 1, N) + 1))

    def alphabet(self, g, ids, fresh=None):
        fresh = self.id_fields if fresh is None else fresh
        N = ids.N
        idv = alphabet_ids(ids, fresh)
        pv = self.port_values(g.max_degree, N)
        nums = range(1, min(g.n, N) + 1)
        out = [0]  # type 0 is invalid
        for x, id1 in enumerate(idv):
            for id2 in idv[x + 1:]:
                out.append(encode_melon(MelonLabel(1, id1, id2), N))
                for k in nums:
                    for p1 in pv:
                        for p2 in pv:
                            for c1 in (0, 1):
                                out.append(encode_melon(MelonLabel(2, id1, id2, k, p1, c1, p2, 1 - c1), N))
        return tuple(sorted(out))

    def label_ids(self, label, bits, N):
        d = decode_melon(label, N)
        return () if d is None else (d.id1, d.id2)

    def relabel_ids(self, label, bits, N, mapping):
        d = decode_melon(label, N)
        if d is None:
            return label
        a, b = sorted((mapping.get(d.id1, d.id1), mapping.get(d.id2, d.id2)))
        return encode_melon(d._replace(id1=a, id2=b), N)

    def reduce_label(self, label, bits, N, rename, max_degree):
        d = decode_melon(label, N)
        if d is None:
            return 0
        a, b = sorted((rename.get(d.id1, d.id1), rename.get(d.id2, d.id2)))
        top = min(max(max_degree, 2) + 1, N)
        d = d._replace(id1=a, id2=b)
        if d.type == 2:
            d = d._replace(p1=min(d.p1, top), p2=min(d.p2, top))
        return encode_melon(d, N)

    def reduce_labeling(self, instance):
        # path numbers are only compared for equality: rename them to 1..k
        red = super().reduce_labeling(instance)
        N = instance.N
        order = {}
        labs = []
        for lab in red.labels.labels:
            d = decode_melon(lab, N)
            if d is not None and d.type == 2:
                k = order.setdefault(d.num, len(order) + 1)
                lab = encode_melon(d._replace(num=k), N)
            labs.append(lab)
        return red.with_labels(Labeling(tuple(labs), red.labels.size_bits))

    def describe(self, label, bits, N):
        d = decode_melon(label, N)
        if d is None:
            return "invalid"
        if d.type == 1:
            return f"1:({d.id1},{d.id2})"
        return f"2:({d.id1},{d.id2}),#{d.num},({d.p1},{d.c1}),({d.p2},{d.c2})"

    def witness_family(self, N=None):
        return melon_witness(N)


def melon_witness(N=None) -> list:
    """The 8-node path under the identity ids and under ids reversed on the
    four middle nodes."""
    N = 8 if N is None else N
    first = tuple(range(1, 9))
    second = (1, 2, 6, 5, 4, 3, 7, 8)
    return [(path_graph(8), IdAssignment(first, N)), (path_graph(8), IdAssignment(second, N))]
