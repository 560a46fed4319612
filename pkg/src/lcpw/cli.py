"""Command-line front end: lcpw {gen,prove,run,check,hiding,realize,export-dot}.

Exit codes: 0 pass, 2 property failure, 3 budget exceeded, 64 usage error,
65 off-class or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .classes import ClassTag, DEFAULT_CAP, generate
from .core import LabeledInstance, unlabeled
from .decoders import DEFAULT_CLASS, NAMES, WidthMismatch, get_decoder, run
from .search import BudgetExceeded, default_budget

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE, EXIT_INPUT = 0, 2, 3, 64, 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunConfig:
    command: str
    decoder: str | None = None
    class_tag: str | None = None
    n_max: int = 4
    ids: str = "canonical"
    labelings: str = "auto"
    budget: int = field(default_factory=default_budget)
    out: str | None = None
    dot: str | None = None
    seed: int = 0
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.budget <= 0:
            raise UsageError("budget must be positive")
        if self.n_max < 1:
            raise UsageError("--n must be at least 1")
        if self.decoder is not None and self.decoder not in NAMES:
            raise UsageError(f"unknown decoder {self.decoder!r}; choose from {', '.join(NAMES)}")
        if self.class_tag is not None:
            try:
                ClassTag.parse(self.class_tag)
            except ValueError as e:
                raise UsageError(str(e)) from None


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_instance(path: str) -> LabeledInstance:
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            return LabeledInstance.from_json(fh.read())
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise InputError(f"cannot read instance from {path}: {e}") from None


# -- commands ------------------------------------------------------------------

def cmd_gen(cfg: RunConfig) -> int:
    tag = cfg.class_tag or "all-connected"
    try:
        graphs = generate(tag, cfg.n_max, cap=cfg.extra.get("cap", DEFAULT_CAP))
    except ValueError as e:
        raise UsageError(str(e)) from None
    if not graphs:
        raise InputError(f"class {tag} has no member with {cfg.n_max} nodes")
    if cfg.extra.get("all"):
        text = json.dumps([unlabeled(g).to_dict() for g in graphs], separators=(",", ":")) + "\n"
    else:
        text = unlabeled(graphs[cfg.seed % len(graphs)]).to_json() + "\n"
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_prove(cfg: RunConfig) -> int:
    inst = _read_instance(cfg.extra["input"])
    d = get_decoder(cfg.decoder)
    lab = d.prove(inst.graph, inst.ports, inst.ids)
    if lab is None:
        raise InputError(f"decoder {d.name} has no labeling for this graph: it lies outside the class "
                         f"{DEFAULT_CLASS.get(d.name)} (or is not bipartite)")
    _emit(inst.with_labels(lab).to_json() + "\n", cfg.out)
    return EXIT_OK


def cmd_run(cfg: RunConfig) -> int:
    inst = _read_instance(cfg.extra["input"])
    d = get_decoder(cfg.decoder)
    try:
        verdict = run(d, inst)
    except WidthMismatch as e:
        raise InputError(str(e)) from None
    out = {"decoder": d.name, "instance": inst.digest(), "verdicts": [int(x) for x in verdict],
           "all_accept": all(verdict), "rejecting": [v for v in range(inst.n) if not verdict[v]]}
    _emit(json.dumps(out) + "\n", cfg.out)
    return EXIT_OK if all(verdict) else EXIT_FAIL


def _extractor(name: str):
    from .decoders.simple import ONE, ZERO

    if name == "identity":
        return lambda mu: mu.labels[0] & 1
    if name == "copy-color-else-0":
        return lambda mu: mu.labels[0] if mu.labels[0] in (ZERO, ONE) else 0
    if name == "zero":
        return lambda mu: 0
    raise UsageError(f"unknown extractor {name!r} (identity, copy-color-else-0, zero, neighborhood)")


def cmd_check(cfg: RunConfig) -> int:
    from . import verification as ver

    prop = cfg.extra["property"].replace("-", "_")
    d = get_decoder(cfg.decoder)
    common = dict(budget=cfg.budget, ids=cfg.ids, N_policy=cfg.extra.get("n_policy", "n2"))
    if cfg.extra.get("ports"):
        common["ports"] = cfg.extra["ports"]
    if prop == "completeness":
        rep = ver.check_completeness(d, cfg.class_tag or DEFAULT_CLASS[d.name], cfg.n_max, jobs=cfg.jobs, **common)
    elif prop == "soundness":
        rep = ver.check_soundness(d, cfg.n_max, class_tag=cfg.class_tag or "all-connected", jobs=cfg.jobs, **common)
    elif prop == "strong_soundness":
        rep = ver.check_strong_soundness(d, cfg.n_max, class_tag=cfg.class_tag or "all-connected",
                                         jobs=cfg.jobs, **common)
    elif prop == "extraction":
        name = cfg.extra.get("extractor") or "identity"
        if name == "neighborhood":
            from .neighborhood import NotBipartite, build_neighborhood_graph, make_extraction_decoder
            tag = cfg.class_tag or DEFAULT_CLASS[d.name]
            nbr = build_neighborhood_graph(d, cfg.n_max, tag, labelings=cfg.labelings, ids=cfg.ids,
                                           budget=cfg.budget)
            try:
                ext = make_extraction_decoder(nbr)
            except NotBipartite as e:
                print(f"no extraction decoder: {e}", file=sys.stderr)
                return EXIT_FAIL
            common["N"] = cfg.n_max * cfg.n_max
            rep = ver.check_extraction(d, ext, cfg.n_max, class_tag=tag, labelings=cfg.labelings, **common)
        else:
            rep = ver.check_extraction(d, _extractor(name), cfg.n_max, class_tag=cfg.class_tag,
                                       labelings=cfg.labelings, **common)
    else:
        raise UsageError(f"unknown property {cfg.extra['property']!r}")
    _emit(rep.to_json(timing=cfg.extra.get("timing", False)), cfg.out)
    line = f"{rep.property} {rep.decoder}: {rep.verdict.upper()} ({rep.instances_checked} instances, " \
           f"{rep.decode_calls} decode calls)"
    print(line, file=sys.stderr)
    for note in rep.notes:
        print(note, file=sys.stderr)
    return rep.exit_code


def _build(cfg: RunConfig):
    from .neighborhood import build_neighborhood_graph

    d = get_decoder(cfg.decoder)
    scope = cfg.extra.get("scope") or ("class" if d.anonymous else "witness")
    kw = dict(labelings=cfg.labelings, scope=scope, budget=cfg.budget, keys=cfg.extra.get("keys", "full"))
    if cfg.extra.get("N"):
        kw["N"] = cfg.extra["N"]
    if scope == "class":
        kw["ids"] = cfg.extra.get("ids") or "all-orderings"
    return build_neighborhood_graph(d, cfg.n_max, cfg.class_tag or DEFAULT_CLASS[d.name], **kw)


def cmd_hiding(cfg: RunConfig) -> int:
    from .neighborhood import export_dot, make_extraction_decoder, verdict_for

    nbr = _build(cfg)
    v = verdict_for(nbr, cfg.extra.get("k", 2))
    rep = v.to_dict()
    if not v.hiding and v.k == 2:
        ext = make_extraction_decoder(nbr)
        rep["extraction_table"] = {nbr.digest(k): c for k, c in sorted(ext.lookup.items())}
    print(v.label)
    if v.witness is not None:
        print(f"odd cycle of {len(v.witness)} views: {' '.join(nbr.digest(k) for k in v.witness.keys)}")
    print(f"{v.views} views, {v.edges} edges; {nbr.scope['labeling_scope']} labelings; verdict holds at n <= {v.n}")
    if cfg.out:
        _emit(json.dumps(rep, indent=1) + "\n", cfg.out)
    if cfg.dot:
        _emit(export_dot(nbr, v.witness), cfg.dot)
    if cfg.extra.get("graph_json"):
        _emit(nbr.to_json(), cfg.extra["graph_json"])
    return EXIT_OK


def cmd_export_dot(cfg: RunConfig) -> int:
    from .neighborhood import export_dot, odd_cycle_witness

    nbr = _build(cfg)
    _emit(export_dot(nbr, odd_cycle_witness(nbr)), cfg.out or cfg.dot)
    return EXIT_OK


def cmd_realize(cfg: RunConfig) -> int:
    from .neighborhood import RealizationError, is_realizable, realize, views_of_instance

    inst = _read_instance(cfg.extra["input"])
    d = get_decoder(cfg.decoder)
    nodes = cfg.extra.get("nodes")
    if nodes is not None and any(not 0 <= v < inst.n for v in nodes):
        raise InputError("--nodes out of range")
    H = views_of_instance(d, inst, nodes)
    if not all(d.decide(mu) for mu in H.views):
        raise InputError("some selected node rejects; H must consist of accepting views")
    res = is_realizable(H, cfg.extra.get("mode", "plain"))
    if not res.ok:
        print(f"not realizable: {res.reason}", file=sys.stderr)
        return EXIT_FAIL
    try:
        g_bad = realize(H, res.witnesses, d)
    except RealizationError as e:
        print(f"realization failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    _emit(g_bad.to_json() + "\n", cfg.out)
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "prove": cmd_prove, "run": cmd_run, "check": cmd_check, "hiding": cmd_hiding,
            "realize": cmd_realize, "export-dot": cmd_export_dot}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lcpw", description="Locally checkable proofs for 2-coloring and their hiding analysis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, decoder=True):
        if decoder:
            sp.add_argument("--decoder", required=True, choices=NAMES)
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--budget", type=int, default=None, help="decode-call budget (env LCPW_BUDGET)")

    sp = sub.add_parser("gen", help="write class instances as JSON")
    common(sp, decoder=False)
    sp.add_argument("--class", dest="class_tag", default="all-connected")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--all", action="store_true", help="write every member as a JSON array")
    sp.add_argument("--seed", type=int, default=0, help="pick member seed mod count")

    for name in ("prove", "run", "realize"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--in", dest="input", default="-", help="instance JSON (default stdin)")
        if name == "realize":
            sp.add_argument("--nodes", help="comma-separated node subset for H (default all)")
            sp.add_argument("--mode", choices=("plain", "component-wise"), default="plain")

    sp = sub.add_parser("check", help="exhaustive completeness / soundness / extraction check")
    common(sp)
    sp.add_argument("--property", required=True,
                    choices=("completeness", "soundness", "strong-soundness", "extraction"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--class", dest="class_tag")
    sp.add_argument("--ids", choices=("canonical", "all-orderings"), default="canonical")
    sp.add_argument("--N-policy", dest="n_policy", choices=("n2", "n3"), default="n2")
    sp.add_argument("--ports", choices=("all", "every", "orbits", "auto"))
    sp.add_argument("--labelings", choices=("auto", "prover", "exhaustive"), default="auto")
    sp.add_argument("--extractor", help="identity | copy-color-else-0 | zero | neighborhood")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include elapsed time in the report")

    for name in ("hiding", "export-dot"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--class", dest="class_tag")
        sp.add_argument("--labelings", choices=("auto", "prover", "exhaustive"), default="auto")
        sp.add_argument("--scope", choices=("class", "witness"))
        sp.add_argument("--ids", choices=("canonical", "all-orderings"))
        sp.add_argument("--keys", choices=("full", "anonymous"), default="full")
        sp.add_argument("--N", type=int)
        sp.add_argument("--dot", help="write the DOT graph here")
        if name == "hiding":
            sp.add_argument("--k", type=int, default=2)
            sp.add_argument("--graph-json", dest="graph_json", help="write the neighborhood graph as JSON")
    return p


def config_from_args(a: argparse.Namespace) -> RunConfig:
    extra = {}
    for key in ("input", "property", "extractor", "timing", "all", "mode", "scope", "keys", "N", "k",
                "graph_json", "n_policy", "ports"):
        if getattr(a, key, None) is not None:
            extra[key] = getattr(a, key)
    if getattr(a, "nodes", None):
        try:
            extra["nodes"] = [int(x) for x in a.nodes.split(",")]
        except ValueError:
            raise UsageError("--nodes takes comma-separated integers") from None
    if a.command in ("hiding", "export-dot") and a.ids:
        extra["ids"] = a.ids
    if getattr(a, "k", 2) < 2:
        raise UsageError("--k must be at least 2")
    budget = a.budget if a.budget is not None else default_budget()
    return RunConfig(command=a.command, decoder=getattr(a, "decoder", None), class_tag=getattr(a, "class_tag", None),
                     n_max=getattr(a, "n", None) or 1, ids=getattr(a, "ids", None) or "canonical",
                     labelings=getattr(a, "labelings", "auto"), budget=budget, out=a.out,
                     dot=getattr(a, "dot", None), seed=getattr(a, "seed", 0), jobs=getattr(a, "jobs", 1),
                     extra=extra)


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        cfg = config_from_args(a)
        return COMMANDS[cfg.command](cfg)
    except UsageError as e:
        print(f"lcpw: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as e:
        print(f"lcpw: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        est = f" (estimate {e.estimate})" if e.estimate is not None else ""
        print(f"lcpw: budget exceeded: {e}{est}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
