#!/usr/bin/env python3
"""Torsion-action table for the semidirect-product trees < a, b_i | a^q, b_i^p, a b_i a^-1 b_i^-r >.

For each (p, q, r, n) the Jacobian is pushed to Z[Z/q] (a -> generator, b_i -> 1)
and the eigenvalues of a on the p-torsion of I and J are printed.
"""
import argparse
import time

from pd3.engine import pushforward_invariants, semidirect_tree_presentation
from pd3.fox import Target
from pd3.modules import compare_IJ
from pd3.rings import CyclicGroup

DEFAULT = [(7, 3, 2), (5, 4, 2), (13, 3, 3), (13, 4, 5), (19, 3, 7), (11, 5, 3)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args()
    print(f"{'p':>3} {'q':>2} {'r':>3} {'n':>2}  {'I torsion':<14} {'I eig':<8} {'J eig':<8} witness   sec")
    for p, q, r in DEFAULT:
        for n in range(1, args.max_n + 1):
            t0 = time.perf_counter()
            P = semidirect_tree_presentation(p, q, r, n)
            t = Target(CyclicGroup(q), {x: int(x == "a") for x in P.generators})
            I, J = pushforward_invariants(P, t)
            w = compare_IJ(I, J)
            ie = w.detail.get("I_eigenvalues", "-") if w else "-"
            je = w.detail.get("J_eigenvalues", "-") if w else "-"
            print(f"{p:>3} {q:>2} {r:>3} {n:>2}  {str(I.torsion):<14} {str(ie):<8} {str(je):<8} "
                  f"{w.kind if w else 'none':<9} {time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main()
