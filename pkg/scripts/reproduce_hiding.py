"""Build V(D,n) for each protocol and print the hiding verdicts.

    python scripts/reproduce_hiding.py [--out-dir DIR]

With --out-dir, writes <decoder>.json (verdict) and <decoder>.dot.
"""
import argparse
import json
import pathlib
import time

from lcpw.neighborhood import build_neighborhood_graph, export_dot, verdict_for

RUNS = [
    ("revealing", 5, {"labelings": "exhaustive"}),
    ("deg1", 4, {}),
    ("deg1", 4, {"labelings": "exhaustive"}),
    ("cycle", 6, {"labelings": "prover"}),
    ("shatter", 8, {"scope": "witness", "labelings": "prover"}),
    ("watermelon", 8, {"scope": "witness", "labelings": "prover"}),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", type=pathlib.Path)
    args = ap.parse_args()
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, n, kw in RUNS:
        t0 = time.perf_counter()
        nbr = build_neighborhood_graph(name, n, **kw)
        v = verdict_for(nbr)
        cyc = f"odd cycle {len(v.witness)}" if v.witness else "2-colorable"
        print(f"{name:<11} n={n} {nbr.scope['labeling_scope']:<12} {v.label:<11} "
              f"{v.views:>4} views {v.edges:>4} edges  {cyc}  ({time.perf_counter() - t0:.1f} s)")
        if args.out_dir:
            tag = f"{name}-n{n}-{kw.get('labelings', 'auto')}"
            (args.out_dir / f"{tag}.json").write_text(json.dumps(v.to_dict(), indent=1) + "\n")
            (args.out_dir / f"{tag}.dot").write_text(export_dot(nbr, v.witness))


if __name__ == "__main__":
    main()
