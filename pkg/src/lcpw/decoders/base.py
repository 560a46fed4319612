from __future__ import annotations

from typing import Iterable, Sequence

from ..core import (Graph, IdAssignment, LabeledInstance, Labeling, LocalContext,
                    PortAssignment, View, context_from_view, extract_view)


class WidthMismatch(ValueError):
    pass


class Decoder:
    """A one-round binary verifier together with its prover.

    Subclasses implement `local_check`, which reads a LocalContext whose
    neighbor labels may be None (unassigned).  It returns False as soon as
    the known labels force a reject, True when every label is known and the
    node accepts, and None otherwise.  That three-valued form lets the
    labeling search prune partial assignments.
    """

    name = "base"
    radius = 1
    anonymous = True
    order_invariant = True
    # every decoder here is invariant under injective id renaming applied to
    # node ids and label id fields together
    id_equality_invariant = True
    # False when neither decide nor prove looks at port numbers
    uses_ports = True
    # distinct foreign ids one labeling needs to exhaust all behaviors
    id_fields = 0

    def label_bits(self, n: int, N: int, max_degree: int) -> int:
        raise NotImplementedError

    def bits_for(self, g: Graph, ids: IdAssignment) -> int:
        return self.label_bits(g.n, ids.N, g.max_degree)

    def local_check(self, ctx: LocalContext):
        raise NotImplementedError

    def decide(self, view: View) -> bool:
        return self.local_check(context_from_view(view)) is True

    def prove(self, g: Graph, ports: PortAssignment, ids: IdAssignment) -> Labeling | None:
        raise NotImplementedError

    def alphabet(self, g: Graph, ids: IdAssignment, fresh: int | None = None) -> tuple:
        """Finite label set that is verdict-complete for this graph and ids."""
        raise NotImplementedError

    def reduce_label(self, label: int, bits: int, N: int, rename: dict, max_degree: int) -> int:
        """Map an arbitrary label into the alphabet (see reduce_labeling)."""
        raise NotImplementedError

    def label_ids(self, label: int, bits: int, N: int) -> Iterable[int]:
        """Identifier values carried inside a label."""
        return ()

    def relabel_ids(self, label: int, bits: int, N: int, mapping) -> int:
        """Apply an id substitution to the id fields of a label."""
        return label

    def describe(self, label: int, bits: int, N: int) -> str:
        return format(label, "x")

    def witness_family(self, N: int | None = None) -> list:
        """(Graph, IdAssignment) pairs from the hiding construction, if any."""
        return []

    # -- helpers shared by all decoders --

    def reduce_labeling(self, instance: LabeledInstance) -> LabeledInstance:
        """Verdict-equivalent instance whose labels lie in the finite alphabet.

        Ids that occur in labels but not on nodes are renamed injectively to
        the smallest unused ids, in order of first occurrence.
        """
        present = set(instance.ids.ids)
        bits, N = instance.labels.size_bits, instance.N
        foreign = []
        for lab in instance.labels.labels:
            for i in self.label_ids(lab, bits, N):
                if i not in present and i not in foreign:
                    foreign.append(i)
        fresh = fresh_ids(instance.ids, len(foreign))
        rename = dict(zip(foreign, fresh))
        dmax = instance.graph.max_degree
        labs = tuple(self.reduce_label(x, bits, N, rename, dmax) for x in instance.labels.labels)
        return instance.with_labels(Labeling(labs, bits))

    def __repr__(self) -> str:
        return f"<decoder {self.name}>"


def fresh_ids(ids: IdAssignment, k: int) -> list:
    """The k smallest ids in [1, N] not used by any node."""
    used = set(ids.ids)
    out = []
    x = 1
    while len(out) < k and x <= ids.N:
        if x not in used:
            out.append(x)
        x += 1
    return out


def alphabet_ids(ids: IdAssignment, fresh: int) -> list:
    return sorted(set(ids.ids) | set(fresh_ids(ids, fresh)))


def run(decoder: Decoder, instance: LabeledInstance) -> tuple:
    """Per-node accept bits."""
    want = decoder.bits_for(instance.graph, instance.ids)
    if instance.labels.size_bits != want:
        raise WidthMismatch(
            f"{decoder.name} expects {want}-bit labels, instance has {instance.labels.size_bits}")
    return tuple(decoder.decide(extract_view(instance, v, decoder.radius)) for v in range(instance.n))


def static_contexts(g: Graph, ports: PortAssignment, ids: IdAssignment) -> list:
    """Per node: tuple of (port, neighbor, neighbor id, back port) in port order."""
    out = []
    for v in range(g.n):
        row = []
        for p, u in enumerate(ports.order[v], start=1):
            row.append((p, u, ids.ids[u], ports.port(u, v)))
        out.append(tuple(row))
    return out


def make_context(static_row, v, ids: IdAssignment, labels: Sequence, bits: int) -> LocalContext:
    return LocalContext(ids.ids[v], labels[v],
                        tuple((p, i, b, labels[u]) for p, u, i, b in static_row),
                        ids.N, bits)


def two_coloring_from(g: Graph, ids: IdAssignment) -> list | None:
    """Proper 2-coloring where, per component, the smallest-id node gets 0."""
    color = [None] * g.n
    for s in sorted(range(g.n), key=lambda v: ids.ids[v]):
        if color[s] is not None:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if color[y] is None:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    return None
    return color
