"""Run every correctness check at its default scope and print a table.

    python scripts/check_all.py [--json reports.json] [--jobs 1]
"""
import argparse
import json

from lcpw.verification import check_completeness, check_soundness, check_strong_soundness

CHECKS = [
    ("deg1", "completeness", dict(class_tag="min-degree-one", n_max=6, ports="every")),
    ("deg1", "strong_soundness", dict(n_max=5)),
    ("cycle", "completeness", dict(class_tag="even-cycle", n_max=10, ports="every")),
    ("cycle", "strong_soundness", dict(n_max=7, class_tag="cycle", n_min=3)),
    ("revealing", "strong_soundness", dict(n_max=5)),
    ("shatter", "completeness", dict(class_tag="shatter-point", n_max=10)),
    ("shatter", "strong_soundness", dict(n_max=4)),
    ("watermelon", "completeness", dict(class_tag="watermelon", n_max=10, ports="auto")),
    ("watermelon", "strong_soundness", dict(n_max=4)),
    ("accept-all", "soundness", dict(n_max=3)),
    ("deg1-loose", "strong_soundness", dict(n_max=4)),
]


def run(name, prop, kw, jobs):
    kw = dict(kw)
    n_max = kw.pop("n_max")
    if prop == "completeness":
        return check_completeness(name, kw.pop("class_tag"), n_max, jobs=jobs, **kw)
    fn = check_soundness if prop == "soundness" else check_strong_soundness
    return fn(name, n_max, jobs=jobs, **kw)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--json")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    reports = []
    for name, prop, kw in CHECKS:
        r = run(name, prop, kw, args.jobs)
        reports.append(r.to_dict(timing=True))
        print(f"{name:<11} {prop:<17} {r.verdict:<16} {r.instances_checked:>6} configs "
              f"{r.decode_calls:>9} calls {r.elapsed:6.1f} s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=1)


if __name__ == "__main__":
    main()
