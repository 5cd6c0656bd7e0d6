"""Realization of the dihedral-tail family by explicit chain complexes, and the decision pipeline."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from math import gcd

from .fox import Target, generator_column, jacobian
from .graphs import (
    AdmissibilityReport,
    GraphOfGroups,
    Presentation,
    Witness,
    crisp_filter,
    free_factor_scan,
    fundamental_presentation,
    structural_admissibility,
    validate_and_reduce,
    _is_dihedral,
)
from .groups import FiniteGroup, Tag, classify_group, construct_catalog_group, word_from_string
from .modules import I_module, J_module, ObstructionWitness, compare_IJ, module_invariants
from .rings import (
    AmalgamGroup,
    CyclicGroup,
    RingMatrix,
    conjugate_transpose,
    elt,
    is_self_conjugate,
)


class NotEligible(ValueError):
    pass


class IdentityFailed(ArithmeticError):
    pass


class NotSelfConjugate(ArithmeticError):
    pass


class BoundaryCheckFailed(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# presentation of G_0 *_{Z/2} D_{2m_1} *_{Z/2} ... *_{Z/2} D_{2m_n}


@dataclass(frozen=True)
class RealizationInput:
    G0: FiniteGroup
    ms: tuple
    presentation: Presentation
    ring: AmalgamGroup
    target: Target
    involution_word: tuple
    tail_letters: tuple


def _check_eligible(G0: FiniteGroup, ms) -> None:
    for m in ms:
        if m < 3 or m % 2 == 0:
            raise NotEligible(f"tail orders must be odd and >= 3, got {m}")
    if G0.order == 1:
        raise NotEligible("the trivial group is not in the family")
    if G0.presentation is None:
        raise NotEligible(f"{G0.name} has no catalog presentation")
    pres = G0.presentation
    if len(pres.relators) != len(pres.names):
        raise NotEligible(f"catalog presentation of {G0.name} is not balanced")
    if G0.order % 2 == 1:
        # odd cyclic groups need no involution, but cannot carry tails
        if ms or not classify_group(G0).is_cyclic:
            raise NotEligible(f"{G0.name} has odd order")
        return
    if classify_group(G0).period_divides_4 != "yes":
        raise NotEligible(f"{G0.name} does not have period dividing 4")
    if pres.involution is None:
        raise NotEligible(f"{G0.name} has no distinguished involution word")


def _normalize_family(G0: FiniteGroup, ms) -> tuple:
    """A dihedral G_0 is Z/2 with one more tail."""
    ms = tuple(int(m) for m in ms)
    if _is_dihedral(G0):
        return construct_catalog_group(Tag("cyclic", (2,))), (G0.order // 2,) + ms
    return G0, ms


def build_realization_presentation(G0: FiniteGroup, ms) -> RealizationInput:
    G0, ms = _normalize_family(G0, ms)
    _check_eligible(G0, ms)
    gp = G0.presentation
    ring = AmalgamGroup.with_dihedral_tails(G0, ms) if G0.order % 2 == 0 else None
    u = tuple(gp.involution) if gp.involution is not None else ()
    gens = list(gp.names)
    rels = [tuple(r) for r in gp.relators]
    tails = []
    for i, m in enumerate(ms):
        s = (m - 1) // 2
        b = "b" if len(ms) == 1 else f"b{i + 1}"
        if b in gens:
            b = f"{b}_t"
        tails.append(b)
        gens.append(b)
        rels.append(u + ((b, 1),) * s + u + ((b, -1),) * (s + 1))
    P = Presentation(tuple(gens), tuple(rels), (1,) * len(gens))
    if ring is None:
        # odd cyclic G_0: a one-factor amalgam is not defined, use the table ring
        from .rings import table_group
        tg = table_group(G0)
        target = Target(tg, {x: G0.generator_element(x) for x in gp.names})
    else:
        images = {x: ring.from_factor(0, G0.generator_element(x)) for x in gp.names}
        for i, b in enumerate(tails):
            D = ring.factors[i + 1]
            images[b] = ring.from_factor(i + 1, D.generator_element("b"))
        target = Target(ring, images)
    return RealizationInput(G0, ms, P, ring if ring is not None else target.group, target, u, tuple(tails))


# ---------------------------------------------------------------------------
# diagonalization


@dataclass(frozen=True)
class Diagonalized:
    A: RingMatrix
    raw: RingMatrix
    clear: RingMatrix  # elementary column operation E
    scale: RingMatrix  # diagonal column scaling S; A = raw * E * S


def _fox_of_word(word, x: str, target: Target):
    """Image of d(word)/dx in the group ring."""
    group = target.group
    acc: dict = {}
    g = group.identity
    for y, e in word:
        img = target.image((y, e))
        if e > 0:
            if y == x:
                acc[g] = acc.get(g, 0) + 1
            g = group.mul(g, img)
        else:
            g = group.mul(g, img)
            if y == x:
                acc[g] = acc.get(g, 0) - 1
    return elt(group, acc)


def self_conjugate_diagonalize(R: RealizationInput) -> Diagonalized:
    P, target = R.presentation, R.target
    group = target.group
    raw = jacobian(P, target)
    n = len(P.generators)
    g = n - len(R.ms)
    one = elt(group, {group.identity: 1})
    rows_E = [[one if i == j else elt(group) for j in range(n)] for i in range(n)]
    scale = [one] * n
    for i, m in enumerate(R.ms):
        s = (m - 1) // 2
        row, col = g + i, g + i
        b = target.images[R.tail_letters[i]]
        a = target.evaluate(R.involution_word)
        bs = group.identity
        for _ in range(s):
            bs = group.mul(bs, b)
        c = elt(group, {group.identity: 1, group.mul(a, bs): 1})  # 1 + a b^s
        d = raw[row, col]
        if not (c + d * c).is_zero():
            raise IdentityFailed(f"(1 + a b^s)(1 + d) != 0 for tail m={m}")
        for j in range(g):
            du = _fox_of_word(R.involution_word, P.generators[j], target)
            if not du.is_zero():
                rows_E[col][j] = rows_E[col][j] + c * du
        bss = group.identity
        for _ in range(s * s):
            bss = group.mul(bss, b)
        scale[col] = elt(group, {bss: 1})
    E = RingMatrix(group, rows_E, ncols=n)
    S = RingMatrix(group, [[scale[i] if i == j else elt(group) for j in range(n)] for i in range(n)], ncols=n)
    A = raw @ E @ S
    for i in range(g, n):
        for j in range(n):
            if j != i and not A[i, j].is_zero():
                raise IdentityFailed(f"row {i} still couples to column {j}")
    if not is_self_conjugate(A):
        raise NotSelfConjugate("diagonalized matrix differs from its conjugate transpose "
                               f"(the {R.G0.name} block is not self-conjugate)")
    return Diagonalized(A, raw, E, S)


# ---------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True)
class ChainComplexData:
    """Free right-module complex Z[pi] <- C1 <- C2 <- C3 with maps acting by left multiplication.

    ``d1`` is a (g+n) x 1 column, ``d2`` the square matrix, ``d3`` a 1 x (g+n) row,
    so d2 @ d1 = 0 and d3 @ d2 = 0.
    """

    presentation: Presentation
    ranks: tuple
    d1: RingMatrix
    d2: RingMatrix
    d3: RingMatrix
    transform: RingMatrix  # maps d1 back to the column (x_j - 1)

    def verify(self) -> dict:
        n = self.ranks[1]
        out = {
            "d1d2": (self.d2 @ self.d1).is_zero(),
            "d2d3": (self.d3 @ self.d2).is_zero(),
            "self_conjugate": is_self_conjugate(self.d2),
            "d3_is_dual": self.d3 == conjugate_transpose(self.d1),
            "H0": all(self.d1[i, 0].augmentation() == 0 for i in range(n))
            and self.transform @ self.d1 == generator_column(self.presentation, self._target),
        }
        return out

    @property
    def ok(self) -> bool:
        return all(self.verify().values())

    def render(self) -> str:
        return "\n".join([
            f"ranks: {list(self.ranks)}",
            f"presentation: {self.presentation.render()}",
            "d1:\n" + self.d1.render(),
            "d2:\n" + self.d2.render(),
            "d3:\n" + self.d3.render(),
        ])

    def to_dict(self) -> dict:
        return {"ranks": list(self.ranks), "presentation": self.presentation.render(),
                "d1": self.d1.render(), "d2": self.d2.render(), "d3": self.d3.render(),
                "checks": self.verify()}


def _inverse_transform(D: Diagonalized, g: int) -> RingMatrix:
    """(E S)^{-1}: E - I only links tail rows to G_0 columns, so E^{-1} = 2I - E."""
    E, S = D.clear, D.scale
    group = E.group
    n = E.shape[0]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            v = E[i, j]
            row.append(v if i == j else -v)
        rows.append(row)
    Einv = RingMatrix(group, rows, ncols=n)
    Sinv = RingMatrix(group, [[S[i, i].monomial_inverse() if i == j else elt(group) for j in range(n)]
                              for i in range(n)], ncols=n)
    return Sinv @ Einv


def emit_chain_complex(R: RealizationInput, D: Diagonalized) -> ChainComplexData:
    P = R.presentation
    n = len(P.generators)
    col = generator_column(P, R.target)
    T = _inverse_transform(D, n - len(R.ms))
    d1 = T @ col
    forward = D.clear @ D.scale
    d3 = conjugate_transpose(d1)
    cc = ChainComplexData(P, (1, n, n, 1), d1, D.A, d3, forward)
    object.__setattr__(cc, "_target", R.target)
    checks = cc.verify()
    bad = [k for k, v in checks.items() if not v]
    if bad:
        raise BoundaryCheckFailed("failed: " + ", ".join(bad))
    return cc


def realize(G0: FiniteGroup, ms) -> ChainComplexData:
    R = build_realization_presentation(G0, ms)
    return emit_chain_complex(R, self_conjugate_diagonalize(R))


# ---------------------------------------------------------------------------
# H_3


@dataclass(frozen=True)
class H3Invariant:
    orders: tuple
    product: int | None  # the cyclic order when the orders are pairwise coprime

    def to_dict(self):
        return {"orders": list(self.orders), "cyclic": self.product}


def h3_invariant(G0: FiniteGroup, ms) -> H3Invariant:
    G0, ms = _normalize_family(G0, ms)
    _check_eligible(G0, ms)
    orders = (G0.order,) + ms
    coprime = all(gcd(x, y) == 1 for i, x in enumerate(orders) for y in orders[i + 1:])
    prod = 1
    for x in orders:
        prod *= x
    return H3Invariant(orders, prod if coprime else None)


# ---------------------------------------------------------------------------
# obstruction search


def _word_targets(P: Presentation, n: int, w_images=None):
    """Homomorphisms onto Z/n given by generator images, lexicographic order."""
    cg = CyclicGroup(n)
    gens = P.generators
    if n ** len(gens) > 20000:
        return
    for imgs in iproduct(range(n), repeat=len(gens)):
        if gcd(n, *imgs) != 1:
            continue
        t = Target(cg, dict(zip(gens, imgs)))
        if all(t.evaluate(r) == 0 for r in P.relators):
            yield t


def cyclic_pushforward_search(P: Presentation, moduli) -> ObstructionWitness | None:
    """Orientable case: push the Jacobian to Z[Z/n] and compare I with J."""
    for n in moduli:
        for t in _word_targets(P, n):
            A = jacobian(P, t)
            wit = compare_IJ(module_invariants(I_module(n, A)), module_invariants(J_module(n, A, None)))
            if wit is not None:
                return _with_map(wit, t)
    return None


def w_pushforward(P: Presentation) -> ObstructionWitness | None:
    """Nonorientable case: push through w onto Z/2 and compare with the twisted involution."""
    cg = CyclicGroup(2)
    t = Target(cg, {x: (0 if s == 1 else 1) for x, s in zip(P.generators, P.w)})
    A = jacobian(P, t)
    wit = compare_IJ(module_invariants(I_module(2, A)), module_invariants(J_module(2, A, lambda x: -1 if x else 1)))
    return _with_map(wit, t) if wit is not None else None


def pushforward_invariants(P: Presentation, t: Target, twisted: bool = False) -> tuple:
    """(I, J) module invariants of the Jacobian of P pushed along t into Z[Z/n]."""
    n = t.group.n
    A = jacobian(P, t)
    w = (lambda x: -1 if x % 2 else 1) if twisted else None
    return module_invariants(I_module(n, A)), module_invariants(J_module(n, A, w))


def semidirect_tree_presentation(p: int, q: int, r: int, n: int) -> Presentation:
    """< a, b_1..b_n | a^q, b_i^p, a b_i a^-1 b_i^-r >: n copies of Z/p x| Z/q sharing a."""
    bs = ["b"] if n == 1 else [f"b{i}" for i in range(1, n + 1)]
    rels = [word_from_string(f"a^{q}")]
    for b in bs:
        rels.append(word_from_string(f"{b}^{p}"))
        rels.append(word_from_string(f"a {b} a^-1 {b}^-{r}"))
    return Presentation(("a",) + tuple(bs), tuple(rels), (1,) * (n + 1))


def klein_chain_presentation(n: int, loop: bool = False) -> Presentation:
    """n Klein four-groups <a_i, b_i> glued by a_i = a_{i+1} b_{i+1}; w(a_i) = -1.

    With loop=True a stable letter t (w(t) = 1) adds t a_n t^-1 = a_1 b_1.
    """
    gens, rels, w = [], [], []
    for i in range(1, n + 1):
        a, b = f"a{i}", f"b{i}"
        gens += [a, b]
        w += [-1, 1]
        rels += [word_from_string(f"{a}^2"), word_from_string(f"{b}^2"),
                 word_from_string(f"{a} {b} {a}^-1 {b}^-1")]
    for i in range(1, n):
        rels.append(word_from_string(f"a{i} b{i + 1}^-1 a{i + 1}^-1"))
    if loop:
        gens.append("t")
        w.append(1)
        rels.append(word_from_string(f"t a{n} t^-1 b1^-1 a1^-1"))
    return Presentation(tuple(gens), tuple(rels), tuple(w))


def w_target(P: Presentation) -> Target:
    return Target(CyclicGroup(2), {x: (0 if s == 1 else 1) for x, s in zip(P.generators, P.w)})


def _with_map(wit: ObstructionWitness, t: Target) -> ObstructionWitness:
    detail = dict(wit.detail)
    detail["map"] = {x: int(v) for x, v in t.images.items()}
    detail["modulus"] = t.group.n
    return ObstructionWitness(wit.kind, wit.prime, detail, wit.citation)


def _search_moduli(g: GraphOfGroups) -> list:
    from .groups import find_pq_subgroup
    out = []
    for G in g.vertices:
        wit = find_pq_subgroup(G)
        if wit is not None and wit.q not in out:
            out.append(wit.q)
    for n in (2, 3, 4):
        if n not in out:
            out.append(n)
    return out


# ---------------------------------------------------------------------------
# decide


OBSTRUCTED = "Obstructed"
REALIZABLE = "Realizable"
INADMISSIBLE = "StructurallyInadmissible"
UNKNOWN = "Unknown"

EXIT_CODES = {REALIZABLE: 0, OBSTRUCTED: 2, INADMISSIBLE: 3, UNKNOWN: 4}


@dataclass(frozen=True)
class CatalogManifold:
    name: str
    citation: str

    def to_dict(self):
        return {"manifold": self.name, "citation": self.citation}


@dataclass(frozen=True)
class Verdict:
    kind: str
    certificate: object = None  # ObstructionWitness | Witness | ChainComplexData | CatalogManifold | None
    citations: tuple = ()
    notes: tuple = ()
    admissibility: AdmissibilityReport | None = None
    presentation: Presentation | None = None
    reduced: GraphOfGroups | None = None

    def __post_init__(self):
        object.__setattr__(self, "citations", tuple(dict.fromkeys(self.citations)))

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.kind]

    def certificate_dict(self):
        c = self.certificate
        if c is None:
            return None
        kind = type(c).__name__
        return {"type": kind, **c.to_dict()}


def _tail_family(g: GraphOfGroups):
    """(G_0, tail orders) for an all-Z/2 tree; G_0 is the non-dihedral vertex or Z/2."""
    non = [G for G in g.vertices if not _is_dihedral(G)]
    dih = [G for G in g.vertices if _is_dihedral(G)]
    if len(non) > 1:
        return None
    G0 = non[0] if non else construct_catalog_group(Tag("cyclic", (2,)))
    return G0, tuple(sorted(G.order // 2 for G in dih))


def decide(g: GraphOfGroups) -> Verdict:
    r = validate_and_reduce(g)
    try:
        P = fundamental_presentation(r)
    except ValueError:
        P = None

    ff = free_factor_scan(r)
    if ff is not None:
        if ff.kind == "pi is trivial":
            return Verdict(REALIZABLE, CatalogManifold("S^3", "Theorem 3.1"), ("Lemma 2.3",),
                           ("trivial group",), None, P, r)
        if ff.kind == "pi is Z":
            name = "S^1 x S^2" if r.orientable else "S^1 x~ S^2"
            return Verdict(REALIZABLE, CatalogManifold(name, "Theorem 7.1"), ("Lemma 2.3", "Theorem 7.1"),
                           (), structural_admissibility(r) if not r.orientable else None, P, r)
        if ff.kind == "loop isomorphism":
            return Verdict(OBSTRUCTED, ff, (ff.citation,),
                           ("a nontrivial finite normal subgroup rules out a free factor",), None, P, r)
        return Verdict(UNKNOWN, ff, (ff.citation,), ("decomposable: decide the free factors separately",),
                       None, P, r)

    cw = crisp_filter(r)
    if cw is not None:
        return Verdict(OBSTRUCTED, cw, (cw.citation,), (), None, P, r)

    rep = structural_admissibility(r)
    if not rep.admissible:
        wit = None
        if P is not None:
            wit = w_pushforward(P) if not r.orientable else cyclic_pushforward_search(P, _search_moduli(r))
        cites = tuple(x.citation for x in rep.failures())
        if wit is not None:
            return Verdict(OBSTRUCTED, wit, (wit.citation,) + cites, (), rep, P, r)
        if rep.status == "undecided":
            return Verdict(UNKNOWN, None, cites, ("period 4 not settled for a vertex group",), rep, P, r)
        return Verdict(INADMISSIBLE, None, cites, tuple(f"{x.rule}: {x.detail}" for x in rep.failures()),
                       rep, P, r)

    if not r.orientable:
        shape = "S^1 x~ S^2" if r.vertices[0].order == 1 else "S^1 x RP^2"
        cite = "Theorem 7.1" if r.vertices[0].order == 1 else "Theorem 7.4"
        return Verdict(REALIZABLE, CatalogManifold(shape, cite), (cite,), (), rep, P, r)

    if rep.status == "admissible-unknown":
        return Verdict(UNKNOWN, None, ("Theorem 5.2",), ("Z/6 edge: no such examples are known",), rep, P, r)

    fam = _tail_family(r)
    if fam is None:
        return Verdict(UNKNOWN, None, ("Theorem 5.2",), ("no realization family",), rep, P, r)
    G0, ms = fam
    try:
        cc = realize(G0, ms)
    except NotEligible as exc:
        return Verdict(UNKNOWN, None, ("Theorem 5.2",), (f"not in the realization family: {exc}",), rep, P, r)
    except NotSelfConjugate as exc:
        return Verdict(UNKNOWN, None, ("Theorem 3.1",), (f"no self-conjugate block: {exc}",), rep, P, r)
    return Verdict(REALIZABLE, cc, ("Theorem 3.1", "Theorem 5.2"), (f"G0 = {G0.name}, tails {list(ms)}",),
                   rep, cc.presentation, r)


# ---------------------------------------------------------------------------
# corpus group from the Z/6 discussion

SIGMA_RELATORS = ("z^2 x z^-1 x^-1 z^-1 x^-1", "x^2 z^-3", "w z w z^-1")


def sigma_presentation(m: int) -> Presentation:
    """<x, z, w | z^2 x = x z x z, x^2 = z^3, w z w = z, w^m>."""
    rels = [word_from_string(s) for s in SIGMA_RELATORS] + [(("w", 1),) * m]
    return Presentation(("x", "z", "w"), tuple(rels), (1, 1, 1))
