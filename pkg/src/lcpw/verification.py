"""Exhaustive checks of completeness, soundness, strong soundness and extraction."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

from .core import (Graph, LabeledInstance, Labeling, extract_view, is_bipartite)
from .decoders import Decoder, get_decoder, run
from .scope import (Scope, accepted_labelings, chordless_odd_cycles, ports_count, scope_graphs,
                    scope_ids, scope_ports)
from .search import BudgetExceeded, Counter, default_budget, search_labelings

PROPERTIES = ("completeness", "soundness", "strong_soundness", "extraction")


@dataclass
class CheckReport:
    decoder: str
    property: str
    scope: dict
    verdict: str  # pass | fail | budget_exceeded
    counterexample: dict | None = None
    instances_checked: int = 0
    decode_calls: int = 0
    state_space: int = 0
    elapsed: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 2, "budget_exceeded": 3}[self.verdict]

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "decoder": self.decoder,
            "property": self.property,
            "scope": self.scope,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "instances_checked": self.instances_checked,
            "decode_calls": self.decode_calls,
            "state_space": self.state_space,
            "notes": self.notes,
        }
        if timing:
            d["elapsed_seconds"] = round(self.elapsed, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False) + "\n"


def _counterexample(inst: LabeledInstance, reason: str, *, failing=None, odd_cycle=None) -> dict:
    return {"instance": inst.to_dict(), "reason": reason,
            "failing_nodes": list(failing) if failing is not None else None,
            "odd_cycle": list(odd_cycle) if odd_cycle is not None else None}


# -- per-graph workers (top level so worker processes can import them) -----

def _complete_graph(name: str, g: Graph, scope: Scope, budget: int) -> dict:
    d = get_decoder(name)
    counter = Counter(budget)
    checked = 0
    for ids in scope_ids(g, scope):
        for ports in scope_ports(d, g, scope):
            checked += 1
            lab = d.prove(g, ports, ids)
            if lab is None:
                inst = LabeledInstance(g, ports, ids, Labeling((0,) * g.n, d.bits_for(g, ids)))
                return {"fail": _counterexample(inst, "prover returned no labeling (graph outside the prover's class)"),
                        "checked": checked, "calls": counter.calls}
            inst = LabeledInstance(g, ports, ids, lab)
            counter.charge(g.n)
            verdict = run(d, inst)
            if not all(verdict):
                bad = [v for v in range(g.n) if not verdict[v]]
                return {"fail": _counterexample(inst, "prover labeling rejected", failing=bad),
                        "checked": checked, "calls": counter.calls}
    return {"fail": None, "checked": checked, "calls": counter.calls}


def _sound_graph(name: str, g: Graph, scope: Scope, budget: int, strong: bool) -> dict:
    d = get_decoder(name)
    counter = Counter(budget)
    checked = 0
    if is_bipartite(g).ok:
        # every induced subgraph of a bipartite graph is bipartite
        return {"fail": None, "checked": 0, "calls": 0}
    targets = chordless_odd_cycles(g) if strong else [tuple(range(g.n))]
    for ids in scope_ids(g, scope):
        alphabet = d.alphabet(g, ids)
        for ports in scope_ports(d, g, scope):
            checked += 1
            for must in targets:
                lab = next(search_labelings(d, g, ports, ids, alphabet, must, counter=counter), None)
                if lab is None:
                    continue
                inst = LabeledInstance(g, ports, ids, lab)
                if strong:
                    cex = _counterexample(inst, "accepting nodes contain an odd cycle", odd_cycle=must)
                else:
                    cex = _counterexample(inst, "every node accepts on a non-bipartite graph",
                                          failing=[])
                return {"fail": cex, "checked": checked, "calls": counter.calls}
    return {"fail": None, "checked": checked, "calls": counter.calls}


def _dispatch(args):
    kind, name, edges, n, scope, budget = args
    g = Graph.from_edges(n, edges)
    if kind == "completeness":
        return _complete_graph(name, g, scope, budget)
    return _sound_graph(name, g, scope, budget, kind == "strong_soundness")


def _drive(kind: str, decoder: Decoder, graphs: list, scope: Scope, budget: int, jobs: int,
           estimate: int, minimum: int) -> CheckReport:
    t0 = time.perf_counter()
    report = CheckReport(decoder.name, kind, scope.describe(), "pass", state_space=estimate)
    if minimum > budget:
        report.verdict = "budget_exceeded"
        report.notes.append(f"refused: at least {minimum} decode calls needed, budget {budget} "
                            f"(naive state space {estimate})")
        return report
    tasks = [(kind, decoder.name, sorted(g.edges), g.n, scope, budget) for g in graphs]
    try:
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                results = list(ex.map(_dispatch, tasks))
        else:
            results = []
            used = 0
            for t in tasks:
                t = t[:-1] + (budget - used,)
                r = _dispatch(t)
                used += r["calls"]
                results.append(r)
                if r["fail"] is not None:
                    break
    except BudgetExceeded as e:
        report.verdict = "budget_exceeded"
        report.notes.append(f"aborted: {e}")
        report.elapsed = time.perf_counter() - t0
        return report
    for r in results:
        report.instances_checked += r["checked"]
        report.decode_calls += r["calls"]
        if r["fail"] is not None:
            report.verdict = "fail"
            report.counterexample = r["fail"]
            break
    if report.decode_calls > budget:
        report.verdict = "budget_exceeded"
        report.notes.append(f"decode calls {report.decode_calls} exceeded budget {budget}")
    report.elapsed = time.perf_counter() - t0
    return report


def _resolve(decoder) -> Decoder:
    return get_decoder(decoder) if isinstance(decoder, str) else decoder


def check_completeness(decoder, class_tag: str, n_max: int, *, scope: Scope | None = None,
                       budget: int | None = None, jobs: int = 1, **scope_kw) -> CheckReport:
    """Prover plus decoder accept every class yes-instance in scope."""
    d = _resolve(decoder)
    scope = scope or Scope(class_tag=class_tag, n_max=n_max, **scope_kw)
    budget = default_budget() if budget is None else budget
    graphs = list(scope_graphs(scope, bipartite_only=True))
    est = sum(ports_count(d, g, scope) * g.n for g in graphs)
    return _drive("completeness", d, graphs, scope, budget, jobs, est, est)


def _soundness(kind, decoder, n_max, class_tag, scope, budget, jobs, scope_kw) -> CheckReport:
    d = _resolve(decoder)
    scope_kw.setdefault("ports", "orbits")
    scope = scope or Scope(class_tag=class_tag, n_max=n_max, labelings="exhaustive", **scope_kw)
    budget = default_budget() if budget is None else budget
    graphs = [g for g in scope_graphs(scope) if not is_bipartite(g).ok]
    est = 0
    minimum = 0
    for g in graphs:
        ids = next(scope_ids(g, scope))
        a = len(d.alphabet(g, ids))
        p = ports_count(d, g, scope)
        est += p * a ** g.n
        minimum += p * a
    return _drive(kind, d, graphs, scope, budget, jobs, est, minimum)


def check_soundness(decoder, n_max: int, *, class_tag: str = "all-connected", scope: Scope | None = None,
                    budget: int | None = None, jobs: int = 1, **scope_kw) -> CheckReport:
    """Every alphabet labeling of a non-bipartite graph has a rejecting node."""
    return _soundness("soundness", decoder, n_max, class_tag, scope, budget, jobs, scope_kw)


def check_strong_soundness(decoder, n_max: int, *, class_tag: str = "all-connected",
                           scope: Scope | None = None, budget: int | None = None, jobs: int = 1,
                           **scope_kw) -> CheckReport:
    """Accepting nodes never contain an odd cycle.

    It suffices to look for labelings under which all nodes of one induced
    odd cycle accept: any non-bipartite accepting set contains one.
    """
    return _soundness("strong_soundness", decoder, n_max, class_tag, scope, budget, jobs, scope_kw)


def check_extraction(decoder, extractor: Callable, n_max: int, *, class_tag: str | None = None,
                     scope: Scope | None = None, budget: int | None = None, **scope_kw) -> CheckReport:
    """Does `extractor` (view -> bit) properly 2-color every accepted yes-instance in scope?"""
    from .decoders import DEFAULT_CLASS
    d = _resolve(decoder)
    class_tag = class_tag or DEFAULT_CLASS.get(d.name, "bipartite")
    scope = scope or Scope(class_tag=class_tag, n_max=n_max, **scope_kw)
    budget = default_budget() if budget is None else budget
    t0 = time.perf_counter()
    report = CheckReport(d.name, "extraction", scope.describe(), "pass")
    counter = Counter(budget)
    cache = {}
    try:
        for g in scope_graphs(scope, bipartite_only=True):
            for ids in scope_ids(g, scope):
                for ports in scope_ports(d, g, scope):
                    for lab in accepted_labelings(d, g, ports, ids, scope, counter, cache):
                        inst = LabeledInstance(g, ports, ids, lab)
                        report.instances_checked += 1
                        views = [extract_view(inst, v, d.radius) for v in range(g.n)]
                        if not all(d.decide(mu) for mu in views):
                            continue
                        colors = [extractor(mu) for mu in views]
                        bad = [(u, v) for u, v in g.sorted_edges() if colors[u] == colors[v]]
                        if bad:
                            report.verdict = "fail"
                            report.counterexample = _counterexample(
                                inst, f"extracted colors {colors} are equal across edge {bad[0]}",
                                failing=list(bad[0]))
                            report.decode_calls = counter.calls
                            report.elapsed = time.perf_counter() - t0
                            return report
    except BudgetExceeded as e:
        report.verdict = "budget_exceeded"
        report.notes.append(f"aborted: {e}")
    report.decode_calls = counter.calls
    report.elapsed = time.perf_counter() - t0
    return report


def reverify(report: CheckReport | dict, decoder=None) -> bool:
    """Re-run the decoder on a fail report's instance and confirm the violation."""
    rep = report.to_dict() if isinstance(report, CheckReport) else report
    cex = rep.get("counterexample")
    if rep.get("verdict") != "fail" or cex is None:
        return False
    d = _resolve(decoder or rep["decoder"])
    inst = LabeledInstance.from_dict(cex["instance"])
    prop = rep["property"]
    if prop == "completeness":
        if cex["failing_nodes"] is None:
            return d.prove(inst.graph, inst.ports, inst.ids) is None
        verdict = run(d, inst)
        lab = d.prove(inst.graph, inst.ports, inst.ids)
        return lab is not None and lab.labels == inst.labels.labels and \
            [v for v in range(inst.n) if not verdict[v]] == cex["failing_nodes"]
    verdict = run(d, inst)
    if prop == "soundness":
        return all(verdict) and not is_bipartite(inst.graph).ok
    if prop == "strong_soundness":
        cyc = cex["odd_cycle"]
        es = inst.graph.edges
        closed = all((min(a, b), max(a, b)) in es for a, b in zip(cyc, cyc[1:] + cyc[:1]))
        return closed and len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc) and all(verdict[v] for v in cyc)
    if prop == "extraction":
        return all(verdict)
    return False


def implication_holds(strong: CheckReport, weak: CheckReport) -> bool:
    """Strong soundness passing on a scope forces soundness to pass there."""
    return not strong.passed or weak.passed


def with_scope(scope: Scope, **kw) -> Scope:
    return replace(scope, **kw)


def run_all(reports: Iterable[CheckReport]) -> bool:
    return all(r.passed for r in reports)
