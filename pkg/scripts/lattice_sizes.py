#!/usr/bin/env python3
"""Torsion-class lattices of small Dynkin quivers: sizes, covering edges, twin pairs
and the distribution of heart sizes."""

import argparse
import time
from collections import Counter

from torsionlab.exactla import Field
from torsionlab.hearts import all_twins
from torsionlab.modcat import category
from torsionlab.quiver import Quiver
from torsionlab.subcat import Context

QUIVERS = {"A1": lambda: Quiver.linear_a(1), "A2": lambda: Quiver.linear_a(2),
           "A3": lambda: Quiver.linear_a(3), "A4": lambda: Quiver.linear_a(4), "D4": Quiver.d4}


def covers(classes):
    by_size = sorted(classes, key=len)
    edges = 0
    for i, a in enumerate(by_size):
        above = [b for b in by_size[i + 1:] if a < b]
        edges += sum(1 for b in above if not any(a < c < b for c in above))
    return edges


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("quivers", nargs="*", default=["A1", "A2", "A3", "D4"], choices=sorted(QUIVERS))
    ap.add_argument("--field", type=int, default=2, help="prime p, or 0 for the rationals")
    args = ap.parse_args(argv)
    field = Field(args.field)
    print(f"{'quiver':6} {'indecs':>6} {'tors':>5} {'covers':>6} {'twins':>6}  heart sizes")
    for name in args.quivers:
        t0 = time.perf_counter()
        cat = category(QUIVERS[name](), field)
        classes = Context.full(cat).torsion_classes()
        twins = all_twins(cat)
        sizes = Counter(len(tw.heart_members) for tw in twins)
        hist = " ".join(f"{k}:{v}" for k, v in sorted(sizes.items()))
        print(f"{name:6} {cat.size:6} {len(classes):5} {covers(classes):6} {len(twins):6}  {hist}"
              f"  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
