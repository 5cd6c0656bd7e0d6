"""Finitely presented modules over Z[Z/n] and the invariants used to separate I from J.

A module is given by a matrix over Z[a]/(a^n - 1) whose columns are relations
among the row-indexed generators.  Everything is flattened to integers: each
ring generator becomes n abelian generators e_i a^t, and a acts by shifting t.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .intlin import (
    content,
    diagonal,
    identity,
    kernel_basis,
    left_kernel_basis,
    matmul,
    rank,
    smith_normal_form,
    transpose,
    unimodular_inverse,
    determinant,
)
from .groups import prime_factors
from .rings import CyclicGroup, CyclicRingElt, RingMatrix, conjugate_transpose, elt


class ModuleError(ValueError):
    pass


class WrongModulus(ModuleError):
    pass


class ModulusMismatch(ModuleError):
    pass


@dataclass(frozen=True)
class FPModule:
    """Z[a]/(a^n-1)-module: generators index rows, relations are columns."""

    n: int
    presentation: RingMatrix

    def __post_init__(self):
        g = self.presentation.group
        if not isinstance(g, CyclicGroup) or g.n != self.n:
            raise WrongModulus(f"presentation is not over Z[Z/{self.n}]")

    @property
    def generators(self) -> int:
        return self.presentation.nrows

    @property
    def relations(self) -> int:
        return self.presentation.ncols

    def flatten(self) -> tuple:
        """(relation columns as an integer matrix, shift action) on Z^(generators*n)."""
        n, k = self.n, self.generators
        N = k * n
        cols = []
        for j in range(self.relations):
            for t in range(n):
                v = [0] * N
                for i in range(k):
                    for e, c in self.presentation[i, j].terms.items():
                        v[i * n + (e + t) % n] += c
                cols.append(v)
        P = transpose(cols, N) if cols else [[] for _ in range(N)]
        S = [[0] * N for _ in range(N)]
        for i in range(k):
            for t in range(n):
                S[i * n + (t + 1) % n][i * n + t] = 1
        return P, S


def _ring(n: int):
    return CyclicGroup(n)


def cyclic_elt(n: int, coeffs: Sequence[int]) -> CyclicRingElt:
    return CyclicRingElt.poly(n, coeffs)


def module_from_columns(n: int, columns: Sequence[Sequence], generators: int | None = None) -> FPModule:
    """Module whose relations are the given columns (each a list of ring elements or coefficient lists)."""
    R = _ring(n)

    def as_elt(x):
        if isinstance(x, CyclicRingElt):
            return x
        if isinstance(x, int):
            return elt(R, {0: x})
        return cyclic_elt(n, x)

    cols = [[as_elt(x) for x in c] for c in columns]
    k = generators if generators is not None else (len(cols[0]) if cols else 0)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
    return FPModule(n, RingMatrix(R, rows, ncols=len(cols)))


def free_module(n: int, rank_: int = 1) -> FPModule:
    """R^rank with no relations."""
    return FPModule(n, RingMatrix(_ring(n), [[] for _ in range(rank_)], ncols=0))


def trivial_module(n: int) -> FPModule:
    """Z = R/(a - 1)."""
    return module_from_columns(n, [[[-1, 1]]])


def twisted_module() -> FPModule:
    """Z^w = R/(a + 1) for n = 2."""
    return module_from_columns(2, [[[1, 1]]])


def cyclic_torsion_module(n: int, p: int, r: int) -> FPModule:
    """R/(p, a - r)."""
    return module_from_columns(n, [[[p]], [[-r, 1]]])


def direct_sum(mods: Sequence[FPModule]) -> FPModule:
    if not mods:
        raise ModuleError("empty direct sum")
    n = mods[0].n
    if any(m.n != n for m in mods):
        raise ModulusMismatch("summands over different rings")
    R = _ring(n)
    k = sum(m.generators for m in mods)
    c = sum(m.relations for m in mods)
    zero = elt(R)
    rows = [[zero] * c for _ in range(k)]
    gi = ci = 0
    for m in mods:
        for i in range(m.generators):
            for j in range(m.relations):
                rows[gi + i][ci + j] = m.presentation[i, j]
        gi += m.generators
        ci += m.relations
    return FPModule(n, RingMatrix(R, rows, ncols=c))


def I_module(n: int, A: RingMatrix) -> FPModule:
    """Module presented by a Jacobian A (rows relators, columns generators): relations are A's rows."""
    return FPModule(n, A.transpose())


def J_module(n: int, A: RingMatrix, w=None) -> FPModule:
    """Module presented by the conjugate transpose of A."""
    return FPModule(n, conjugate_transpose(A, w).transpose())


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class ModuleInvariants:
    n: int
    free_rank: int
    torsion: tuple
    action_on_free: tuple
    torsion_action_profile: dict = field(hash=False)
    zw_counts: tuple | None = None
    z_summand: bool | None = None
    socle_actions: dict = field(default_factory=dict, hash=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "action_on_free": [list(r) for r in self.action_on_free],
            "torsion_action_profile": {str(p): list(v) for p, v in sorted(self.torsion_action_profile.items())},
            "zw_counts": list(self.zw_counts) if self.zw_counts is not None else None,
            "z_summand": self.z_summand,
        }

    def render(self) -> str:
        tors = " + ".join(f"Z/{d}" for d in self.torsion) or "0"
        prof = "; ".join(
            f"p={p}: " + ", ".join(f"rank(a-{c})={r}" for c, r in enumerate(v))
            for p, v in sorted(self.torsion_action_profile.items())
        )
        out = f"Z^{self.free_rank} + {tors}"
        if prof:
            out += f" | {prof}"
        if self.zw_counts is not None:
            out += " | (alpha,beta,gamma)=" + str(tuple(self.zw_counts))
        return out


@dataclass
class _Normalized:
    """The module in Smith coordinates y = U x: Z/d_i for i < r, Z beyond."""

    divisors: list  # d_i > 0 for the first r coordinates
    action: list  # U S U^-1 in y-coordinates
    size: int

    @property
    def torsion_idx(self) -> list:
        return [i for i, d in enumerate(self.divisors) if d > 1]

    @property
    def free_idx(self) -> list:
        return list(range(len(self.divisors), self.size))


def _normalize(M: FPModule) -> _Normalized:
    P, S = M.flatten()
    N = len(P)
    if not P or not P[0]:
        return _Normalized([], S, N)
    D, U, _ = smith_normal_form(P, len(P[0]))
    Ui = unimodular_inverse(U)
    action = matmul(matmul(U, S), Ui)
    divs = [d for d in diagonal(D) if d]
    return _Normalized(divs, action, N)


def _prime_power_parts(d: int) -> list:
    out = []
    for p in prime_factors(d):
        q = 1
        while d % p == 0:
            d //= p
            q *= p
        out.append(q)
    return out


def _rank_mod_p(rows: list, p: int) -> int:
    M = [[v % p for v in r] for r in rows]
    rk = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        inv = pow(M[rk][c], -1, p)
        M[rk] = [(v * inv) % p for v in M[rk]]
        for i in range(len(M)):
            if i != rk and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rk])]
        rk += 1
    return rk


def socle_action(norm: _Normalized, p: int) -> list:
    """Matrix of a on the p-socle {m : pm = 0}, in the basis (d_i/p) e_i."""
    idx = [i for i in norm.torsion_idx if norm.divisors[i] % p == 0]
    A = norm.action
    mat = []
    for i in idx:
        col = []
        scale = norm.divisors[i] // p
        for j in idx:
            dj = norm.divisors[j]
            v = (A[j][i] * scale) % dj
            col.append((v // (dj // p)) % p)
        mat.append(col)
    return transpose(mat, len(idx)) if mat else []


def module_invariants(M: FPModule) -> ModuleInvariants:
    norm = _normalize(M)
    torsion = sorted(q for i in norm.torsion_idx for q in _prime_power_parts(norm.divisors[i]))
    free = norm.free_idx
    act = tuple(tuple(norm.action[i][j] for j in free) for i in free)
    primes = sorted({p for d in norm.divisors if d > 1 for p in prime_factors(d)})
    profile, socles = {}, {}
    for p in primes:
        S = socle_action(norm, p)
        dim = len(S)
        ranks = []
        for c in range(p):
            shifted = [[(S[i][j] - (c if i == j else 0)) % p for j in range(dim)] for i in range(dim)]
            ranks.append(_rank_mod_p(shifted, p))
        profile[p] = tuple(ranks)
        socles[p] = S
    zw = _zw_counts([list(r) for r in act]) if M.n == 2 else None
    zs = _z_summand(norm) if M.n == 2 else None
    return ModuleInvariants(M.n, len(free), tuple(torsion), act, profile, zw, zs, socles)


def _zw_counts(A: list) -> tuple:
    """(alpha, beta, gamma) for a Z[Z/2]-lattice with involution matrix A."""
    f = len(A)
    if f == 0:
        return (0, 0, 0)
    I = identity(f)
    plus = kernel_basis([[A[i][j] - I[i][j] for j in range(f)] for i in range(f)], f)
    minus = kernel_basis([[A[i][j] + I[i][j] for j in range(f)] for i in range(f)], f)
    basis = plus + minus
    if len(basis) != f:
        raise ModuleError("action is not an involution on the free part")
    idx = abs(determinant(basis))
    alpha = idx.bit_length() - 1
    if 1 << alpha != idx:
        raise ModuleError("eigenlattice index is not a power of two")
    return (alpha, len(plus) - alpha, len(minus) - alpha)


def has_trivial_Z_summand(M: FPModule) -> bool:
    """Whether Z (trivial action) splits off M, for n = 2."""
    if M.n != 2:
        raise WrongModulus("Z-summand test is implemented for Z[Z/2] only")
    return _z_summand(_normalize(M))


def _z_summand(norm: _Normalized) -> bool:
    free = norm.free_idx
    f = len(free)
    if f == 0:
        return False
    A = [[norm.action[i][j] for j in free] for i in free]
    # invariant functionals phi with phi A = phi
    phis = left_kernel_basis([[A[i][j] - int(i == j) for j in range(f)] for i in range(f)], f)
    if not phis:
        return False
    # fixed elements: (S - I) y = D z
    Nn = norm.size
    r = len(norm.divisors)
    eq = []
    for i in range(Nn):
        row = [norm.action[i][j] - int(i == j) for j in range(Nn)]
        row += [-(norm.divisors[k] if k == i else 0) for k in range(r)]
        eq.append(row)
    sols = kernel_basis(eq, Nn + r)
    xs = [[s[j] for j in free] for s in sols]
    pairing = [sum(p[k] * x[k] for k in range(f)) for p in phis for x in xs]
    return content(pairing) == 1


# ---------------------------------------------------------------------------
# comparison


@dataclass(frozen=True)
class ObstructionWitness:
    kind: str
    prime: int | None
    detail: dict
    citation: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "prime": self.prime, "detail": self.detail, "citation": self.citation}


def _eigenvalues(profile: tuple, dim: int) -> list:
    return [c for c, r in enumerate(profile) if r < dim]


def compare_IJ(I: ModuleInvariants, J: ModuleInvariants):
    """First invariant separating the stable classes, or None (which proves nothing)."""
    if I.n != J.n:
        raise ModulusMismatch(f"Z/{I.n} vs Z/{J.n}")
    for p in sorted(set(I.torsion_action_profile) | set(J.torsion_action_profile)):
        pi, pj = I.torsion_action_profile.get(p), J.torsion_action_profile.get(p)
        if pi is not None and pj is not None and pi != pj:
            dim_i = len(I.socle_actions.get(p, []))
            dim_j = len(J.socle_actions.get(p, []))
            return ObstructionWitness(
                "torsion-action",
                p,
                {
                    "I_profile": list(pi),
                    "J_profile": list(pj),
                    "I_eigenvalues": _eigenvalues(pi, dim_i),
                    "J_eigenvalues": _eigenvalues(pj, dim_j),
                },
                "Theorem 4.6",
            )
    if I.torsion != J.torsion:
        return ObstructionWitness("torsion-group", None,
                                  {"I_torsion": list(I.torsion), "J_torsion": list(J.torsion)}, "Theorem 4.6")
    if I.n == 2:
        zi, zj = I.z_summand, J.z_summand
        if zi != zj:
            return ObstructionWitness("Z-summand", None,
                                      {"I_has_Z": zi, "J_has_Z": zj,
                                       "I_zw": list(I.zw_counts), "J_zw": list(J.zw_counts)},
                                      "Lemma 7.2 / Lemma 7.3")
    return None
