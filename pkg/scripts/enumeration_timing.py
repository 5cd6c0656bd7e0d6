#!/usr/bin/env python3
"""Count and time the admissible linear trees for a range of bounds, with a verdict tally."""
import argparse
import time
from collections import Counter

from pd3.engine import decide
from pd3.graphs import enumerate_admissible


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=3)
    ap.add_argument("--orders", default="8,16,24,48")
    ap.add_argument("--verdicts", action="store_true", help="also run decide on every graph (slow)")
    args = ap.parse_args()
    for order in (int(x) for x in args.orders.split(",")):
        t0 = time.perf_counter()
        gs = enumerate_admissible(args.max_vertices, order)
        dt = time.perf_counter() - t0
        z6 = sum(any(e.group.order == 6 for e in g.edges) for g in gs)
        line = f"vertices<={args.max_vertices} order<={order}: {len(gs)} graphs ({z6} with a Z/6 edge) in {dt:.2f}s"
        if args.verdicts:
            t0 = time.perf_counter()
            tally = Counter(decide(g).kind for g in gs)
            line += f"; verdicts {dict(sorted(tally.items()))} in {time.perf_counter() - t0:.1f}s"
        print(line)


if __name__ == "__main__":
    main()
