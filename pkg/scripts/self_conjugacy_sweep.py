#!/usr/bin/env python3
"""For every catalog G0 of period 4 up to a bound, try the tail construction with one tail of order m.

Prints, per G0, whether the tail identity held and whether the diagonalized matrix is self-conjugate.
"""
import argparse

from pd3.engine import IdentityFailed, NotEligible, NotSelfConjugate, build_realization_presentation, realize
from pd3.graphs import period4_catalog


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=48)
    ap.add_argument("--max-m", type=int, default=21)
    args = ap.parse_args()
    for G in period4_catalog(args.max_order):
        status = {}
        for m in range(3, args.max_m + 1, 2):
            try:
                build_realization_presentation(G, [m])
            except NotEligible as exc:
                status = {"not eligible": str(exc)}
                break
            try:
                realize(G, [m])
                status["ok"] = status.get("ok", 0) + 1
            except NotSelfConjugate:
                status["not self-conjugate"] = status.get("not self-conjugate", 0) + 1
            except IdentityFailed:
                status["identity failed"] = status.get("identity failed", 0) + 1
        print(f"{G.name:<32} {status}")


if __name__ == "__main__":
    main()
