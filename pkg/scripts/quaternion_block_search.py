#!/usr/bin/env python3
"""Search for a self-conjugate square presentation matrix of the augmentation ideal of a finite group.

Unknowns are g x g matrices A over Z[G] with A = conj(A)^T and A (x_j - 1) = 0
for the chosen generators x_j.  These form a lattice K.  A candidate can only
be a chain-level block if its rows span the kernel of d1 = (x_j - 1); mod 2 that
needs the row span to reach F2-rank equal to the kernel's rank.  The script
samples K and reports the best rank reached against that target.

    python3 scripts/quaternion_block_search.py quaternionic(8) --samples 400
    python3 scripts/quaternion_block_search.py cyclic(4)       # reaches the target
"""
import argparse
import random

import numpy as np

from pd3.groups import construct_catalog_group
from pd3.intlin import identity, kernel_basis, matmul


def right_mult_matrix(G, c):
    """Matrix of f -> f * c on coefficient vectors of Z[G]."""
    n, T = G.order, G.table
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if c[j]:
                M[T[i][j]][i] += c[j]
    return M


def symmetric_lattice(G, gens):
    """Basis of the lattice of w-trivial self-conjugate A with A * (x - 1) = 0, and the kernel of d1."""
    n, inv = G.order, G.inverses
    g = len(gens)
    C = [[int(inv[j] == i) for j in range(n)] for i in range(n)]  # conjugation
    cols = []
    for x in gens:
        v = [0] * n
        v[x] += 1
        v[0] -= 1
        cols.append(v)
    R = [right_mult_matrix(G, c) for c in cols]
    RC = [matmul(Ri, C) for Ri in R]
    Id = identity(n)
    pos = {(i, j): k for k, (i, j) in enumerate((i, j) for i in range(g) for j in range(i, g))}
    N = len(pos) * n
    eqs = []
    for i in range(g):
        for r in range(n):
            row = [0] * N
            p = pos[(i, i)] * n
            for q in range(n):
                row[p + q] += Id[r][q] - C[r][q]
            eqs.append(row)
    for i in range(g):
        for r in range(n):
            row = [0] * N
            for j in range(g):
                p, M = (pos[(i, j)] * n, R[j]) if i <= j else (pos[(j, i)] * n, RC[j])
                for q in range(n):
                    row[p + q] += M[r][q]
            eqs.append(row)
    K = kernel_basis(eqs, N)
    E = [sum((R[j][r] for j in range(g)), []) for r in range(n)]
    return K, kernel_basis(E, g * n), pos


def entries(G, v, pos, g):
    n, inv = G.order, G.inverses
    A = [[None] * g for _ in range(g)]
    for (i, j), p in pos.items():
        A[i][j] = v[p * n:(p + 1) * n]
        if i != j:
            c = [0] * n
            for k in range(n):
                c[inv[k]] += A[i][j][k]
            A[j][i] = c
    return A


def row_module(G, A):
    """Z-rows of the Z[G]-span of A's rows (left multiples by every h)."""
    n, T = G.order, G.table
    g = len(A)
    out = []
    for h in range(n):
        for i in range(g):
            row = []
            for j in range(g):
                o = [0] * n
                for q, c in enumerate(A[i][j]):
                    if c:
                        o[T[h][q]] += c
                row += o
            out.append(row)
    return out


def f2_rank(rows):
    M = (np.array(rows, dtype=np.int64) % 2).astype(np.uint8)
    r = 0
    m, n = M.shape
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        for i in range(m):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        r += 1
    return r


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("group", nargs="?", default="quaternionic(8)")
    ap.add_argument("--extra", choices=["none", "z", "xy"], default="none",
                    help="add the central involution (z) or the product of the first two generators (xy)")
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    G = construct_catalog_group(args.group)
    gens = [G.generator_element(x) for x in G.presentation.names]
    if args.extra == "z":
        gens.append(next(x for x in range(G.order) if G.orders[x] == 2))
    elif args.extra == "xy":
        gens.append(G.mul(gens[0], gens[1]))
    K, Kd, pos = symmetric_lattice(G, gens)
    target = len(Kd)
    rng = random.Random(args.seed)
    best = 0
    for _ in range(args.samples):
        cf = [rng.randint(0, 1) for _ in K]
        v = [sum(c * r[j] for c, r in zip(cf, K)) for j in range(len(K[0]))]
        best = max(best, f2_rank(row_module(G, entries(G, v, pos, len(gens)))))
        if best == target:
            break
    labels = [G.label(x) for x in gens]
    print(f"{G.name} generators {labels}: lattice rank {len(K)}, target F2 rank {target}, best {best}"
          f" ({'reached' if best == target else f'short by {target - best}'})")


if __name__ == "__main__":
    main()
