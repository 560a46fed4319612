"""Enumeration of the configurations a check or a build ranges over."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .classes import ClassTag, DEFAULT_CAP, generate
from .core import (Graph, IdAssignment, Labeling, PortAssignment, count_port_assignments,
                   enumerate_id_assignments, enumerate_port_assignments, is_bipartite)
from .decoders.base import Decoder
from .search import Counter, port_assignments_for, search_labelings


def id_space(n: int, policy: str = "n2") -> int:
    if policy == "n2":
        return max(1, n * n)
    if policy == "n3":
        return max(1, n ** 3)
    raise ValueError(f"unknown id-space policy {policy!r} (use n2 or n3)")


@dataclass(frozen=True)
class Scope:
    """Which graphs, ids, ports and labelings a run covers."""

    class_tag: str = "all-connected"
    n_max: int = 4
    n_min: int = 1
    ids: str = "canonical"
    N: int | None = None  # fixed id space; None means per-instance policy
    N_policy: str = "n2"
    ports: str = "all"  # all | every | orbits | auto (sample when above port_limit)
    port_limit: int = 2000
    labelings: str = "auto"  # prover | exhaustive | auto
    seed: int = 0
    cap: int = DEFAULT_CAP
    extra: dict = field(default_factory=dict)

    def describe(self) -> dict:
        d = {"class": self.class_tag, "n_min": self.n_min, "n_max": self.n_max, "ids": self.ids,
             "N": self.N if self.N is not None else self.N_policy, "ports": self.ports,
             "labelings": self.labelings}
        if self.ports == "auto":
            d["port_limit"] = self.port_limit
        d.update(self.extra)
        return d

    def N_for(self, n: int) -> int:
        return self.N if self.N is not None else id_space(n, self.N_policy)


def scope_graphs(scope: Scope, *, bipartite_only: bool = False) -> Iterator[Graph]:
    tag = ClassTag.parse(scope.class_tag)
    for m in range(scope.n_min, scope.n_max + 1):
        for g in generate(tag, m, cap=scope.cap):
            if bipartite_only and not is_bipartite(g).ok:
                continue
            yield g


def sampled_ports(g: Graph, k: int, seed: int) -> list:
    """k distinct port assignments: the identity plus seeded random ones."""
    rng = random.Random(seed * 7919 + g.n * 31 + len(g.edges))
    seen = {PortAssignment.identity(g).order}
    out = [PortAssignment.identity(g)]
    tries = 0
    while len(out) < k and tries < 50 * k:
        tries += 1
        order = tuple(tuple(rng.sample(a, len(a))) for a in g.adj)
        if order not in seen:
            seen.add(order)
            out.append(PortAssignment(order))
    return out


def scope_ports(decoder: Decoder, g: Graph, scope: Scope) -> Iterator[PortAssignment]:
    if scope.ports == "auto":
        if not decoder.uses_ports:
            yield PortAssignment.identity(g)
        elif count_port_assignments(g) <= scope.port_limit:
            yield from enumerate_port_assignments(g)
        else:
            yield from sampled_ports(g, scope.port_limit, scope.seed)
        return
    yield from port_assignments_for(decoder, g, scope.ports)


def ports_count(decoder: Decoder, g: Graph, scope: Scope) -> int:
    if not decoder.uses_ports and scope.ports != "every":
        return 1
    c = count_port_assignments(g)
    if scope.ports == "auto":
        return min(c, scope.port_limit)
    return c


def scope_ids(g: Graph, scope: Scope) -> Iterator[IdAssignment]:
    yield from enumerate_id_assignments(g, scope.N_for(g.n), scope.ids)


def exhaustive_mode(scope: Scope, n: int) -> bool:
    return scope.labelings == "exhaustive" or (scope.labelings == "auto" and n <= 4)


def accepted_labelings(decoder: Decoder, g: Graph, ports: PortAssignment, ids: IdAssignment,
                       scope: Scope, counter: Counter, cache: dict | None = None) -> list:
    """Prover labeling first, then (in exhaustive mode) every accepting one."""
    out = []
    seen = set()
    lab = decoder.prove(g, ports, ids)
    if lab is not None:
        out.append(lab)
        seen.add(lab.labels)
    if exhaustive_mode(scope, g.n):
        key = (g, ids) if not decoder.uses_ports else None
        if cache is not None and key is not None and key in cache:
            found = cache[key]
        else:
            found = list(search_labelings(decoder, g, ports, ids, decoder.alphabet(g, ids), counter=counter))
            if cache is not None and key is not None:
                cache[key] = found
        for lab in found:
            if lab.labels not in seen:
                seen.add(lab.labels)
                out.append(lab)
    return out


def chordless_odd_cycles(g: Graph) -> list:
    """Induced odd cycles, each once, as node tuples starting at their smallest node."""
    adj = [set(a) for a in g.adj]
    out = []

    def extend(s, path):
        x = path[-1]
        for y in g.adj[x]:
            if y <= s or y in path or any(z in adj[y] for z in path[1:-1]):
                continue
            if s in adj[y] and len(path) >= 2:
                cyc = path + [y]
                if cyc[1] < cyc[-1] and len(cyc) % 2:
                    out.append(tuple(cyc))
                continue
            extend(s, path + [y])

    for s in range(g.n):
        extend(s, [s])
    return sorted(out, key=lambda c: (len(c), c))
