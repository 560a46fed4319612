import json

import pytest

from lcpw.core import LabeledInstance
from lcpw.decoders import get_decoder, run
from lcpw.scope import Scope, chordless_odd_cycles
from lcpw.search import BudgetExceeded, Counter, search_labelings
from lcpw.verification import (CheckReport, check_completeness, check_extraction, check_soundness,
                               check_strong_soundness, implication_holds, reverify)


def test_deg1_small_checks_pass():
    assert check_completeness("deg1", "min-degree-one", 5).passed
    assert check_strong_soundness("deg1", 4).passed


def test_accept_all_fails_with_a_reverifiable_triangle():
    rep = check_soundness("accept-all", 3)
    assert rep.verdict == "fail" and rep.exit_code == 2
    inst = LabeledInstance.from_dict(rep.counterexample["instance"])
    assert inst.n == 3 and len(inst.graph.edges) == 3
    assert reverify(rep)
    assert reverify(json.loads(rep.to_json()))


def test_loose_variant_fails_strong_soundness():
    rep = check_strong_soundness("deg1-loose", 4)
    assert rep.verdict == "fail"
    assert len(rep.counterexample["odd_cycle"]) == 3
    assert reverify(rep)


def test_completeness_off_class_fails_with_prover_none():
    rep = check_completeness("cycle", "min-degree-one", 4)
    assert rep.verdict == "fail"
    assert rep.counterexample["failing_nodes"] is None
    assert reverify(rep)


def test_reverify_rejects_a_tampered_counterexample():
    rep = check_strong_soundness("deg1-loose", 4).to_dict()
    rep["counterexample"]["odd_cycle"] = rep["counterexample"]["odd_cycle"][:2]
    assert not reverify(rep)
    assert not reverify(check_strong_soundness("deg1", 3))


def test_strong_implies_sound_on_the_same_scope():
    for name in ("deg1", "revealing", "cycle", "accept-all", "deg1-loose"):
        strong = check_strong_soundness(name, 4)
        weak = check_soundness(name, 4)
        assert implication_holds(strong, weak), name
    # the paw is a full counterexample for the loose variant
    weak = check_soundness("deg1-loose", 4)
    assert weak.verdict == "fail" and reverify(weak)


def test_reports_are_deterministic_and_jobs_independent():
    a = check_strong_soundness("deg1-loose", 5).to_json()
    b = check_strong_soundness("deg1-loose", 5).to_json()
    c = check_strong_soundness("deg1-loose", 5, jobs=2).to_dict()
    assert a == b
    assert json.loads(a)["counterexample"] == c["counterexample"]
    assert "elapsed_seconds" not in json.loads(a)
    assert "elapsed_seconds" in check_soundness("accept-all", 3).to_dict(timing=True)


def test_id_space_policy_does_not_change_verdicts():
    for name in ("deg1", "deg1-loose", "revealing"):
        a = check_strong_soundness(name, 4, N_policy="n2")
        b = check_strong_soundness(name, 4, N_policy="n3")
        assert a.verdict == b.verdict, name


def test_all_orderings_agree_with_canonical_ids():
    for name in ("deg1", "cycle", "deg1-loose"):
        a = check_strong_soundness(name, 4)
        b = check_strong_soundness(name, 4, ids="all-orderings")
        assert a.verdict == b.verdict, name


def test_budget_refusal():
    rep = check_strong_soundness("cycle", 6, budget=10)
    assert rep.verdict == "budget_exceeded" and rep.exit_code == 3
    assert "refused" in rep.notes[0]
    rep = check_completeness("deg1", "min-degree-one", 6, budget=5)
    assert rep.verdict == "budget_exceeded"


def test_counter_raises():
    c = Counter(3)
    c.charge(3)
    with pytest.raises(BudgetExceeded):
        c.charge()


def test_extraction_checks():
    from lcpw.neighborhood import build_neighborhood_graph, make_extraction_decoder
    nbr = build_neighborhood_graph("revealing", 4)
    ext = make_extraction_decoder(nbr)
    assert check_extraction("revealing", ext, 4, ids="all-orderings", N=16, labelings="exhaustive").passed
    zero = check_extraction("revealing", lambda mu: 0, 3)
    assert zero.verdict == "fail" and reverify(zero)


def test_chordless_odd_cycles_small():
    from lcpw.core import Graph
    k4 = Graph.from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert len(chordless_odd_cycles(k4)) == 4
    c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert chordless_odd_cycles(c5) == [(0, 1, 2, 3, 4)]


def test_scope_describe():
    d = Scope(class_tag="tree", n_max=5, ports="auto").describe()
    assert d["class"] == "tree" and d["port_limit"] == 2000 and d["N"] == "n2"
