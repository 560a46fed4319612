"""Labeling search: enumerate labelings under which chosen nodes all accept.

The search assigns labels node by node in breadth-first order and uses the
decoders' three-valued local checks for forward checking, so it visits far
fewer partial labelings than the |alphabet|^n product it replaces.  A naive
product-space engine is kept as an oracle.
"""
from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .classes import automorphisms
from .core import (Graph, IdAssignment, LabeledInstance, Labeling, PortAssignment, extract_view,
                   enumerate_port_assignments)
from .decoders.base import Decoder, make_context, static_contexts

DEFAULT_BUDGET = 10 ** 9


def default_budget() -> int:
    env = os.environ.get("LCPW_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


@dataclass
class Counter:
    """Counts local decoder evaluations against a budget."""

    budget: int = DEFAULT_BUDGET
    calls: int = 0

    def charge(self, k: int = 1) -> None:
        self.calls += k
        if self.calls > self.budget:
            raise BudgetExceeded(f"decode-call budget {self.budget} exhausted", self.calls)


class _Problem:
    def __init__(self, decoder: Decoder, g: Graph, ports: PortAssignment, ids: IdAssignment,
                 alphabet: Sequence[int], must: Sequence[int], counter: Counter):
        if decoder.radius != 1:
            raise NotImplementedError("labeling search supports one-round decoders")
        self.d = decoder
        self.g = g
        self.ids = ids
        self.bits = decoder.bits_for(g, ids)
        self.static = static_contexts(g, ports, ids)
        self.must = set(must)
        self.counter = counter
        relevant = set(self.must)
        for m in self.must:
            relevant.update(g.adj[m])
        self.relevant = relevant
        self.closed = [set(g.adj[v]) | {v} for v in range(g.n)]
        # search order: breadth-first from the must-accept nodes
        order, seen = [], set()
        for s in sorted(self.must):
            if s in seen:
                continue
            seen.add(s)
            q = deque([s])
            while q:
                x = q.popleft()
                order.append(x)
                for y in g.adj[x]:
                    if y in relevant and y not in seen:
                        seen.add(y)
                        q.append(y)
        self.order = order
        self.labels = [None] * g.n
        self.alphabet = tuple(alphabet)

    def check(self, m: int):
        self.counter.charge()
        return self.d.local_check(make_context(self.static[m], m, self.ids, self.labels, self.bits))

    def watchers(self, x: int, y: int) -> list:
        """Assigned must-accept nodes whose verdict depends on both x and y."""
        return [m for m in self.closed[x] & self.closed[y]
                if m in self.must and (self.labels[m] is not None or m == y)]

    def solve(self) -> Iterator[tuple]:
        g = self.g
        doms = {}
        for x in self.order:
            if x in self.must:
                keep = []
                for a in self.alphabet:
                    self.labels[x] = a
                    if self.check(x) is not False:
                        keep.append(a)
                self.labels[x] = None
                if not keep:
                    return
                doms[x] = keep
            else:
                doms[x] = list(self.alphabet)
        order = self.order
        pos = {x: i for i, x in enumerate(order)}
        nearby = {}
        for x in order:
            cand = set()
            for m in self.closed[x]:
                if m in self.must:
                    cand.update(self.closed[m])
            cand.discard(x)
            nearby[x] = sorted((y for y in cand if y in pos and pos[y] > pos[x]), key=pos.get)

        def rec(i):
            if i == len(order):
                yield tuple(self.labels)
                return
            x = order[i]
            for a in doms[x]:
                self.labels[x] = a
                if any(self.labels[m] is not None and self.check(m) is False
                       for m in self.closed[x] if m in self.must):
                    continue
                saved = []
                wiped = False
                for y in nearby[x]:
                    ws = self.watchers(x, y)
                    if not ws:
                        continue
                    keep = []
                    for b in doms[y]:
                        self.labels[y] = b
                        if all(self.check(m) is not False for m in ws):
                            keep.append(b)
                    self.labels[y] = None
                    if len(keep) != len(doms[y]):
                        saved.append((y, doms[y]))
                        doms[y] = keep
                    if not keep:
                        wiped = True
                        break
                if not wiped:
                    yield from rec(i + 1)
                for y, old in saved:
                    doms[y] = old
            self.labels[x] = None

        yield from rec(0)


def search_labelings(decoder: Decoder, g: Graph, ports: PortAssignment, ids: IdAssignment,
                     alphabet: Sequence[int], must: Sequence[int] | None = None, *,
                     counter: Counter | None = None, fill: int | None = None) -> Iterator[Labeling]:
    """Yield labelings over `alphabet` under which every node in `must` accepts.

    Labels of nodes outside the closed neighborhood of `must` cannot matter;
    they are set to `fill` (default: the first alphabet symbol), so each
    yielded labeling stands for the whole class differing only there.
    """
    must = range(g.n) if must is None else must
    counter = counter or Counter(default_budget())
    prob = _Problem(decoder, g, ports, ids, alphabet, must, counter)
    fill = alphabet[0] if fill is None else fill
    bits = prob.bits
    for labs in prob.solve():
        yield Labeling(tuple(fill if x is None else x for x in labs), bits)


def exists_accepting(decoder, g, ports, ids, alphabet, must, *, counter=None) -> Labeling | None:
    return next(search_labelings(decoder, g, ports, ids, alphabet, must, counter=counter), None)


def brute_force_labelings(decoder: Decoder, g: Graph, ports: PortAssignment, ids: IdAssignment,
                          alphabet: Sequence[int], must: Sequence[int] | None = None) -> Iterator[Labeling]:
    """Oracle: try the full product space and run the decoder on real views."""
    must = list(range(g.n)) if must is None else list(must)
    bits = decoder.bits_for(g, ids)
    for labs in itertools.product(alphabet, repeat=g.n):
        inst = LabeledInstance(g, ports, ids, Labeling(labs, bits))
        if all(decoder.decide(extract_view(inst, v, decoder.radius)) for v in must):
            yield inst.labels


def port_orbit_representatives(g: Graph, auts: list | None = None) -> Iterator[PortAssignment]:
    """One port assignment per orbit of the automorphism group.

    Sound for decoders invariant under id renaming: an automorphism maps a
    labeled instance to an isomorphic one, and renaming its ids back to the
    canonical ones keeps every verdict.
    """
    auts = automorphisms(g) if auts is None else auts
    nontrivial = [a for a in auts if any(a[v] != v for v in range(g.n))]
    for p in enumerate_port_assignments(g):
        rep = True
        for a in nontrivial:
            img = [None] * g.n
            for v in range(g.n):
                img[a[v]] = tuple(a[u] for u in p.order[v])
            if tuple(img) < p.order:
                rep = False
                break
        if rep:
            yield p


def port_assignments_for(decoder: Decoder, g: Graph, mode: str = "all") -> Iterator[PortAssignment]:
    """Port assignments a check must cover.

    mode "all" enumerates everything; "orbits" keeps one per automorphism
    orbit.  Decoders that never read ports need a single representative,
    except under "every", which skips all reductions.
    """
    if mode == "every":
        yield from enumerate_port_assignments(g)
        return
    if not decoder.uses_ports:
        yield PortAssignment.identity(g)
        return
    if mode == "orbits" and decoder.id_equality_invariant:
        yield from port_orbit_representatives(g)
        return
    yield from enumerate_port_assignments(g)
