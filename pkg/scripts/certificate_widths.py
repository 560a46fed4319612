"""Measured certificate widths against the closed-form bounds.

    python scripts/certificate_widths.py [--n-max 50] [--csv widths.csv]
"""
import argparse
import csv
import math
import sys

from lcpw.classes import realize_watermelon, shatter_family, WatermelonShape
from lcpw.core import IdAssignment, PortAssignment
from lcpw.decoders import get_decoder


def rows(n_max):
    sh, wm = get_decoder("shatter"), get_decoder("watermelon")
    for n in range(8, n_max + 1):
        N = n * n
        ids = IdAssignment(tuple(range(1, n + 1)), N)
        widths = [(g.max_degree, sh.prove(g, PortAssignment.identity(g), ids)) for g in shatter_family(n)[:6]]
        widths = [(dmax, lab.size_bits) for dmax, lab in widths if lab is not None]
        dmax, bits = max(widths, key=lambda x: x[1])
        yield ("shatter", n, dmax, bits, round(min(dmax * dmax, n) + math.log2(N) + 6, 2))
        g = realize_watermelon(WatermelonShape((2,) * (n - 2)))
        lab = wm.prove(g, PortAssignment.identity(g), ids)
        yield ("watermelon", n, g.max_degree, lab.size_bits, round(5 * math.log2(N) + 9, 2))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=50)
    ap.add_argument("--csv")
    args = ap.parse_args()
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    w = csv.writer(out)
    w.writerow(["decoder", "n", "max_degree", "bits", "bound"])
    for r in rows(args.n_max):
        w.writerow(r)


if __name__ == "__main__":
    main()
