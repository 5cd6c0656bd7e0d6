"""Exact integer linear algebra on lists of Python ints.

Matrices are lists of rows.  Everything here is unbounded-precision; numpy is
only used by callers for bookkeeping, never for arithmetic that could overflow.
"""
from __future__ import annotations

from math import gcd
from typing import Sequence

Matrix = list  # list[list[int]]


def as_matrix(A, ncols: int | None = None) -> Matrix:
    rows = [[int(v) for v in row] for row in A]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    return rows


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * ncols
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] if inner else [0] * ncols for row in A]


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def determinant(A: Matrix) -> int:
    """Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(A, ncols: int | None = None):
    """Return (D, U, V) with U*A*V = D, U and V unimodular, D diagonal with d1 | d2 | ..."""
    M = as_matrix(A, ncols)
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row dst += c * row src
        if c:
            M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        if c:
            for row in M:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the trailing block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = M[t][t]
            for i in range(t + 1, m):
                q = M[i][t] // p
                add_row(i, t, -q)
                if M[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = M[t][j] // p
                add_col(j, t, -q)
                if M[t][j]:
                    done = False
            if not done:
                # move the smallest remaining entry of row/column t into the pivot
                cands = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
                cands += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-v for v in M[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return M, U, V


def diagonal(D: Matrix) -> list:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def elementary_divisors(A, ncols: int | None = None) -> list:
    D, _, _ = smith_normal_form(A, ncols)
    return [d for d in diagonal(D) if d]


def rank(A, ncols: int | None = None) -> int:
    return len(elementary_divisors(A, ncols))


def kernel_basis(A, ncols: int | None = None) -> Matrix:
    """Rows forming a Z-basis of {x : A x = 0}."""
    M = as_matrix(A, ncols)
    n = len(M[0]) if M else (ncols or 0)
    if not M:
        return identity(n)
    D, _, V = smith_normal_form(M, n)
    r = len([d for d in diagonal(D) if d])
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def left_kernel_basis(A, ncols: int | None = None) -> Matrix:
    """Rows y with y A = 0, as a Z-basis."""
    M = as_matrix(A, ncols)
    return kernel_basis(transpose(M, ncols), len(M))


def is_saturated(rows: Matrix, ncols: int) -> bool:
    """Whether the Z-span of the rows is a pure sublattice of Z^ncols."""
    return all(d == 1 for d in elementary_divisors(rows, ncols))


def row_span_index(sub: Matrix, full: Matrix, ncols: int):
    """Index of span(sub) in span(full); None unless sub lies in full's span with equal rank.

    The product of the elementary divisors of a row set is its index in its own
    saturation, and both spans share one saturation, so the index is a ratio.
    """
    ds, df = elementary_divisors(sub, ncols), elementary_divisors(full, ncols)
    if len(ds) != len(df) or rank(sub + full, ncols) != len(df):
        return None
    a = b = 1
    for d in ds:
        a *= d
    for d in df:
        b *= d
    return a // b


def content(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


def unimodular_inverse(U: Matrix) -> Matrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    from fractions import Fraction

    n = len(U)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [v / p for v in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    out = []
    for row in M:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return out
