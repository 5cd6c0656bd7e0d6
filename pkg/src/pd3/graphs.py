"""Finite graphs of finite groups: reduction, presentations, and structural filters."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from itertools import combinations

from .groups import (
    FiniteGroup,
    GroupError,
    Tag,
    Word,
    classify_group,
    closure_of,
    construct_catalog_group,
    extend_hom,
    free_reduce,
    is_dihedral_odd,
    normalizer,
    prime_factors,
    word_inverse,
    word_to_string,
)
from .rings import CharacterUndefined, character_on_table, distinguished_involution


class GraphError(ValueError):
    pass


class NotConnected(GraphError):
    pass


class BadEmbedding(GraphError):
    pass


class CharacterInconsistent(GraphError):
    pass


class NoPresentation(GraphError):
    pass


class BoundsTooLarge(GraphError):
    pass


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True, eq=False)
class Edge:
    """Edge group with generator images (ordered as ``group.generator_names``) on both sides.

    ``w`` is the orientation value of the stable letter; it only matters for
    edges outside the maximal tree.
    """

    name: str
    o: int
    t: int
    group: FiniteGroup
    emb_o: tuple
    emb_t: tuple
    w: int = 1

    @property
    def is_loop(self) -> bool:
        return self.o == self.t


@dataclass(frozen=True, eq=False)
class GraphOfGroups:
    vertices: tuple
    edges: tuple = ()
    names: tuple | None = None
    chars: tuple | None = None  # per vertex: tuple of (generator name, +-1)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"V{i}" for i in range(len(self.vertices))))
        if self.chars is None:
            object.__setattr__(self, "chars", tuple(() for _ in self.vertices))

    def vertex_char(self, v: int) -> tuple:
        """w on every element of G_v."""
        try:
            return character_on_table(self.vertices[v], dict(self.chars[v]))
        except CharacterUndefined as exc:
            raise CharacterInconsistent(f"vertex {self.names[v]}: {exc}") from exc

    def embedding(self, e: int, side: str) -> tuple:
        """Full index map G_e -> G_{o(e)} or G_{t(e)}."""
        edge = self.edges[e]
        E = edge.group
        target = self.vertices[edge.o if side == "o" else edge.t]
        imgs = edge.emb_o if side == "o" else edge.emb_t
        gens = [E.generator_element(n) for n in E.generator_names]
        try:
            return extend_hom(E, list(imgs), target, gens=gens)
        except GroupError as exc:
            raise BadEmbedding(f"edge {edge.name} ({side}): {exc}") from exc

    @property
    def orientable(self) -> bool:
        return all(v == 1 for ch in self.chars for _, v in ch) and all(e.w == 1 for e in self.edges)

    def loop_isomorphisms(self) -> list:
        out = []
        for i, e in enumerate(self.edges):
            if e.is_loop and e.group.order == self.vertices[e.o].order:
                out.append(i)
        return out

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.vertices) - 1 and _connected(self)

    def describe(self) -> str:
        parts = [f"{n}={G.name}" for n, G in zip(self.names, self.vertices)]
        parts += [f"{self.names[e.o]}-[{e.group.name}]-{self.names[e.t]}" for e in self.edges]
        return ", ".join(parts)


def _connected(g: GraphOfGroups) -> bool:
    if not g.vertices:
        return False
    adj = {i: set() for i in range(len(g.vertices))}
    for e in g.edges:
        adj[e.o].add(e.t)
        adj[e.t].add(e.o)
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for u in adj[v] - seen:
            seen.add(u)
            stack.append(u)
    return len(seen) == len(g.vertices)


# ---------------------------------------------------------------------------
# reduction


def _check(g: GraphOfGroups) -> None:
    if not g.vertices:
        raise NotConnected("graph has no vertices")
    for e in g.edges:
        if not (0 <= e.o < len(g.vertices) and 0 <= e.t < len(g.vertices)):
            raise NotConnected(f"edge {e.name} has an endpoint outside the graph")
    if not _connected(g):
        raise NotConnected("graph is not connected")
    chars = [g.vertex_char(v) for v in range(len(g.vertices))]
    for i, e in enumerate(g.edges):
        fo, ft = g.embedding(i, "o"), g.embedding(i, "t")
        for side, f in (("o", fo), ("t", ft)):
            if len(set(f)) != len(f):
                raise BadEmbedding(f"edge {e.name} ({side}) is not injective")
        if any(chars[e.o][fo[x]] != chars[e.t][ft[x]] for x in range(e.group.order)):
            raise CharacterInconsistent(f"w differs on the two images of edge {e.name}")


def validate_and_reduce(g: GraphOfGroups) -> GraphOfGroups:
    """Contract non-loop edges whose edge group fills a vertex group."""
    _check(g)
    while True:
        hit = None
        for i, e in enumerate(g.edges):
            if e.is_loop:
                continue
            if e.group.order == g.vertices[e.o].order:
                hit = (i, "o")
                break
            if e.group.order == g.vertices[e.t].order:
                hit = (i, "t")
                break
        if hit is None:
            return g
        g = _contract(g, *hit)


def _contract(g: GraphOfGroups, i: int, side: str) -> GraphOfGroups:
    """Remove edge i and its vertex on ``side``, whose group the edge fills."""
    e = g.edges[i]
    gone, keep = (e.o, e.t) if side == "o" else (e.t, e.o)
    f_gone = g.embedding(i, side)
    f_keep = g.embedding(i, "t" if side == "o" else "o")
    psi = [0] * g.vertices[gone].order  # G_gone -> G_keep
    for x in range(e.group.order):
        psi[f_gone[x]] = f_keep[x]
    remap = {}
    for v in range(len(g.vertices)):
        if v != gone:
            remap[v] = len(remap)
    edges = []
    for j, f in enumerate(g.edges):
        if j == i:
            continue
        o, t, eo, et = f.o, f.t, f.emb_o, f.emb_t
        if o == gone:
            o, eo = keep, tuple(psi[x] for x in eo)
        if t == gone:
            t, et = keep, tuple(psi[x] for x in et)
        edges.append(replace(f, o=remap[o], t=remap[t], emb_o=eo, emb_t=et))
    verts = [G for v, G in enumerate(g.vertices) if v != gone]
    names = [n for v, n in enumerate(g.names) if v != gone]
    chars = [c for v, c in enumerate(g.chars) if v != gone]
    return GraphOfGroups(tuple(verts), tuple(edges), tuple(names), tuple(chars))


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """Named generators with origin tags, freely reduced relators and w values."""

    generators: tuple
    relators: tuple
    w: tuple
    tags: tuple = ()
    substitutions: tuple = ()  # (eliminated name, word) in elimination order

    def __post_init__(self):
        rels = tuple(free_reduce(r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        if not self.tags:
            object.__setattr__(self, "tags", tuple(("free", x) for x in self.generators))

    @property
    def balanced(self) -> bool:
        return len(self.generators) == len(self.relators)

    def w_of(self, name: str) -> int:
        return self.w[self.generators.index(name)]

    def word_w(self, word: Word) -> int:
        s = 1
        for x, _ in word:
            s *= self.w_of(x)
        return s

    def render(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(word_to_string(r) for r in self.relators)
        return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


def _canon_relator(r: Word) -> Word:
    r = free_reduce(r)
    # cyclic reduction for comparison only
    while len(r) > 1 and r[0][0] == r[-1][0] and r[0][1] == -r[-1][1]:
        r = r[1:-1]
    if not r:
        return ()
    cands = []
    for w in (r, word_inverse(r)):
        for i in range(len(w)):
            cands.append(w[i:] + w[:i])
    return min(cands)


def _substitute(word: Word, name: str, repl: Word) -> Word:
    out = []
    inv = word_inverse(repl)
    for x, e in word:
        if x == name:
            out.extend(repl if e > 0 else inv)
        else:
            out.append((x, e))
    return free_reduce(out)


def bfs_tree(g: GraphOfGroups) -> list:
    """Edge indices of the BFS maximal tree from vertex 0, lowest edge index first."""
    seen, tree = {0}, []
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i, e in enumerate(g.edges):
            if e.is_loop or v not in (e.o, e.t):
                continue
            u = e.t if e.o == v else e.o
            if u not in seen:
                seen.add(u)
                tree.append(i)
                queue.append(u)
    return tree


def fundamental_presentation(g: GraphOfGroups) -> Presentation:
    """Vertex presentations, stable letters off the BFS tree, tree relations eliminated."""
    nv = len(g.vertices)
    chars = [g.vertex_char(v) for v in range(nv)]

    def gname(v, x):
        if nv == 1:
            return x
        return f"{x}_{v + 1}" if x[-1].isdigit() else f"{x}{v + 1}"

    gens, tags, wvals, rels = [], [], [], []
    for v, G in enumerate(g.vertices):
        if G.order > 1 and G.presentation is None:
            raise NoPresentation(f"vertex {g.names[v]} ({G.name}) has no catalog presentation")
        if G.order == 1:
            continue
        for x in G.generator_names:
            gens.append(gname(v, x))
            tags.append(("vertex", v, x))
            wvals.append(chars[v][G.generator_element(x)])
        for r in G.presentation.relators:
            rels.append(tuple((gname(v, x), e) for x, e in r))

    def vword(v, elem):
        return tuple((gname(v, x), e) for x, e in g.vertices[v].word_for(elem))

    tree = set(bfs_tree(g))
    nontree = [i for i in range(len(g.edges)) if i not in tree]
    stable = {}
    for i in nontree:
        name = "t" if len(nontree) == 1 else f"t{nontree.index(i) + 1}"
        stable[i] = name
        gens.append(name)
        tags.append(("stable", i))
        wvals.append(g.edges[i].w)

    tree_rels = []
    for i, e in enumerate(g.edges):
        E = e.group
        for k, x in enumerate(E.generator_names):
            uo = vword(e.o, e.emb_o[k])
            ut = vword(e.t, e.emb_t[k])
            if i in stable:
                t = stable[i]
                rels.append(free_reduce(((t, 1),) + uo + ((t, -1),) + word_inverse(ut)))
            else:
                tree_rels.append((uo, ut))

    # Tietze: a tree relation with a single-letter side defines that generator
    subs = []
    pending = []
    work = list(tree_rels)
    while work:
        uo, ut = work.pop(0)
        for a, b in ((ut, uo), (uo, ut)):
            if len(a) == 1 and all(y != a[0][0] for y, _ in b):
                break
        else:
            pending.append((uo, ut))
            continue
        x, e = a[0]
        repl = b if e > 0 else word_inverse(b)
        k = gens.index(x)
        del gens[k], tags[k], wvals[k]

        def sub(word, x=x, repl=repl):
            return _substitute(word, x, repl)
        subs = [(y, sub(v)) for y, v in subs] + [(x, repl)]
        rels = [sub(r) for r in rels]
        work = [(sub(p), sub(q)) for p, q in work]
        pending = [(sub(p), sub(q)) for p, q in pending]
    rels += [free_reduce(p + word_inverse(q)) for p, q in pending]

    out, seen = [], set()
    for r in rels:
        c = _canon_relator(r)
        if not c or c in seen:
            continue
        seen.add(c)
        out.append(free_reduce(r))
    P = Presentation(tuple(gens), tuple(out), tuple(wvals), tuple(tags), tuple(subs))
    for r in P.relators:
        if P.word_w(r) != 1:
            raise CharacterInconsistent(f"w is -1 on relator {word_to_string(r)}")
    return P


# ---------------------------------------------------------------------------
# filters


@dataclass(frozen=True)
class Witness:
    kind: str
    citation: str
    detail: dict = field(default_factory=dict)
    prime: int | None = None
    obstructs: bool = True

    def to_dict(self) -> dict:
        return {"kind": self.kind, "citation": self.citation, "prime": self.prime,
                "obstructs": self.obstructs, "detail": self.detail}


def free_factor_scan(g: GraphOfGroups) -> Witness | None:
    """Trivial edge groups (and loop isomorphisms, orientable case) give free factors or Z."""
    if all(G.order == 1 for G in g.vertices):
        rank = len(g.edges) - len(g.vertices) + 1
        if rank == 1:
            return Witness("pi is Z", "Lemma 2.3", {"rank": 1}, obstructs=False)
        if rank == 0:
            return Witness("pi is trivial", "Lemma 2.3", {"rank": 0}, obstructs=False)
        return Witness("free group of rank > 1", "Lemma 2.3", {"rank": rank})
    for i, e in enumerate(g.edges):
        if e.group.order == 1:
            rest = GraphOfGroups(g.vertices, g.edges[:i] + g.edges[i + 1:], g.names, g.chars)
            kind = "free factor Z" if _connected(rest) else "nontrivial free product"
            return Witness(kind, "Lemma 2.3", {"edge": e.name})
    if g.orientable:
        for i in g.loop_isomorphisms():
            return Witness("loop isomorphism", "Lemma 4.1", {"edge": g.edges[i].name})
    return None


def _prime_order_subgroups(E: FiniteGroup) -> list:
    out, seen = [], set()
    o = E.orders
    for c in range(1, E.order):
        if len(prime_factors(o[c])) == 1 and o[c] in prime_factors(E.order) and o[c] == prime_factors(o[c])[0]:
            C = tuple(sorted(closure_of(E, [c])))
            if C not in seen:
                seen.add(C)
                out.append((o[c], c, C))
    return out


def _crisp_obstructs(p: int, wc: int) -> bool:
    # an infinite centralizer is allowed only for an orientation-reversing involution
    return p != 2 or wc == 1


def crisp_filter(g: GraphOfGroups) -> Witness | None:
    """Prime-order subgroups forced to have infinite normalizer."""
    chars = [g.vertex_char(v) for v in range(len(g.vertices))]
    allowed = None
    # (a) both sides properly normalize C
    for i, e in enumerate(g.edges):
        fo, ft = g.embedding(i, "o"), g.embedding(i, "t")
        E = e.group
        for p, c, C in _prime_order_subgroups(E):
            NE = len(normalizer(E, C))
            No = len(normalizer(g.vertices[e.o], [fo[x] for x in C]))
            Nt = len(normalizer(g.vertices[e.t], [ft[x] for x in C]))
            if e.is_loop or (No > NE and Nt > NE):
                wc = chars[e.o][fo[c]]
                wit = Witness("normalized on both sides" if not e.is_loop else "loop normalizes C",
                              "Lemma 2.4", {"edge": e.name, "order": p, "element": E.label(c), "w": wc}, p,
                              _crisp_obstructs(p, wc))
                if wit.obstructs:
                    return wit
                allowed = allowed or wit
    if not g.edges:
        return None
    common = set(prime_factors(g.edges[0].group.order))
    for e in g.edges[1:]:
        common &= set(prime_factors(e.group.order))
    for p in sorted(common):
        # (b) a cycle when every edge order shares p
        if len(g.edges) >= len(g.vertices):
            e = g.edges[0]
            c = next(x for x in range(e.group.order) if e.group.orders[x] == p)
            wc = chars[e.o][g.embedding(0, "o")[c]]
            wit = Witness("cycle with common edge prime", "Corollary 4.5", {"order": p, "w": wc}, p,
                          _crisp_obstructs(p, wc))
            if wit.obstructs:
                return wit
            allowed = allowed or wit
        # (c) two distinct vertices properly normalizing an edge group
        hits = {}
        for i, e in enumerate(g.edges):
            for side, v in (("o", e.o), ("t", e.t)):
                f = g.embedding(i, side)
                if len(normalizer(g.vertices[v], f)) > e.group.order:
                    c = next(x for x in range(e.group.order) if e.group.orders[x] == p)
                    hits.setdefault(v, (e, f[c]))
        if len(hits) >= 2:
            (v1, (e1, c1)), (v2, _) = sorted(hits.items())[:2]
            wc = chars[v1][c1]
            wit = Witness("two vertices normalize edge groups properly", "Corollary 4.5",
                          {"vertices": [g.names[v1], g.names[v2]], "order": p, "w": wc}, p,
                          _crisp_obstructs(p, wc))
            if wit.obstructs:
                return wit
            allowed = allowed or wit
    return None


# ---------------------------------------------------------------------------
# admissibility


@dataclass(frozen=True)
class RuleResult:
    rule: str
    citation: str
    passed: bool | None  # None: undecided by the implemented rules
    detail: str = ""


@dataclass(frozen=True)
class AdmissibilityReport:
    orientable: bool
    rules: tuple
    status: str  # "admissible", "admissible-unknown", "inadmissible", "undecided"
    notes: tuple = ()

    @property
    def admissible(self) -> bool:
        return self.status in ("admissible", "admissible-unknown")

    def failures(self) -> list:
        return [r for r in self.rules if r.passed is False]

    def to_dict(self) -> dict:
        return {"orientable": self.orientable, "status": self.status,
                "rules": [{"rule": r.rule, "citation": r.citation, "passed": r.passed, "detail": r.detail}
                          for r in self.rules],
                "notes": list(self.notes)}


def _is_dihedral(G: FiniteGroup) -> bool:
    return is_dihedral_odd(G)


def _tag_family(G: FiniteGroup) -> Tag | None:
    return G.catalog_tag


def _is_dihedral_times_z3(G: FiniteGroup) -> bool:
    t = G.catalog_tag
    if t is None or t.family != "product":
        return False
    fams = sorted((x.family, x.args) for x in t.args)
    if [f for f, _ in fams] != ["cyclic", "dihedral"]:
        return False
    (_, (d,)), (_, (two_m,)) = fams
    return d == 3 and math.gcd(two_m // 2, 6) == 1


_BINARY = {("binary_tetrahedral", (1,)), ("SL2", (3,)), ("binary_icosahedral", ()), ("SL2", (5,))}


def _is_B_times_cyclic(G: FiniteGroup) -> bool:
    t = G.catalog_tag
    if t is None:
        return False
    if (t.family, t.args) in _BINARY:
        return True
    if t.family == "product":
        a, b = t.args
        for B, C in ((a, b), (b, a)):
            if (B.family, B.args) in _BINARY and C.family == "cyclic":
                return math.gcd(C.args[0], G.order // C.args[0]) == 1
    return False


def _nonorientable_shape(g: GraphOfGroups) -> str | None:
    """'Z' or 'Z+Z/2' when the graph is one of the two exceptional 3-manifold shapes."""
    if len(g.vertices) != 1 or len(g.edges) != 1 or not g.edges[0].is_loop:
        return None
    G = g.vertices[0]
    if G.order == 1:
        return "Z"
    if G.order == 2 and g.edges[0].group.order == 2:
        return "Z+Z/2"
    return None


def structural_admissibility(g: GraphOfGroups) -> AdmissibilityReport:
    rules = []
    if not g.orientable:
        shape = _nonorientable_shape(g)
        if shape == "Z":
            rules.append(RuleResult("pi is Z", "Theorem 7.1", True, "S1 x~ S2"))
            return AdmissibilityReport(False, tuple(rules), "admissible")
        if shape == "Z+Z/2":
            w_a = g.vertex_char(0)[1]
            ok = w_a == -1
            rules.append(RuleResult("pi is Z+Z/2 with orientation-reversing involution", "Theorem 7.4", ok,
                                    "S1 x RP2" if ok else "involution preserves orientation"))
            return AdmissibilityReport(False, tuple(rules), "admissible" if ok else "inadmissible")
        rules.append(RuleResult("nonorientable groups are Z or Z+Z/2", "Theorems 7.1, 7.4", False,
                                g.describe()))
        return AdmissibilityReport(False, tuple(rules), "inadmissible")

    tree = g.is_tree()
    rules.append(RuleResult("graph is a tree", "Theorem 5.2", tree, "" if tree else "cycle present"))
    bad_p4, unknown_p4 = [], []
    for n, G in zip(g.names, g.vertices):
        p4 = classify_group(G).period_divides_4
        if p4 == "no":
            bad_p4.append(f"{n}={G.name}")
        elif p4 == "unknown":
            unknown_p4.append(f"{n}={G.name}")
    if bad_p4:
        rules.append(RuleResult("vertex groups have period dividing 4", "Theorem 4.3", False, ", ".join(bad_p4)))
    elif unknown_p4:
        rules.append(RuleResult("vertex groups have period dividing 4", "Theorem 4.3", None,
                                "undecided: " + ", ".join(unknown_p4)))
    else:
        rules.append(RuleResult("vertex groups have period dividing 4", "Theorem 4.3", True))

    orders = [e.group.order for e in g.edges]
    z6 = [i for i, e in enumerate(g.edges) if e.group.order == 6 and any(x == 6 for x in e.group.orders)]
    other = [g.edges[i].name for i, k in enumerate(orders) if k != 2 and i not in z6]
    edge_ok = not other and len(z6) <= 1
    rules.append(RuleResult("edge groups are Z/2 except at most one Z/6", "Theorem 5.2", edge_ok,
                            ", ".join(other) if other else ("two Z/6 edges" if len(z6) > 1 else "")))
    nondihedral = [v for v, G in enumerate(g.vertices) if not _is_dihedral(G)]
    if z6 and edge_ok:
        e = g.edges[z6[0]]
        ends = [g.vertices[e.o], g.vertices[e.t]]
        shape = (_is_dihedral_times_z3(ends[0]) and _is_B_times_cyclic(ends[1])) or \
                (_is_dihedral_times_z3(ends[1]) and _is_B_times_cyclic(ends[0]))
        rules.append(RuleResult("Z/6 edge joins D2m x Z/3 and B x Z/d", "Theorem 5.2", shape,
                                "" if shape else f"{ends[0].name}, {ends[1].name}"))
        rest = [g.names[v] for v in nondihedral if v not in (e.o, e.t)]
        rules.append(RuleResult("remaining vertices are dihedral", "Theorem 5.2", not rest, ", ".join(rest)))
    elif g.edges:
        ok = len(nondihedral) <= 1
        rules.append(RuleResult("at most one non-dihedral vertex", "Theorem 5.2", ok,
                                ", ".join(f"{g.names[v]}={g.vertices[v].name}" for v in nondihedral)
                                if not ok else ""))
    if any(r.passed is False for r in rules):
        status = "inadmissible"
    elif any(r.passed is None for r in rules):
        status = "undecided"
    elif z6:
        status = "admissible-unknown"
    else:
        status = "admissible"
    return AdmissibilityReport(True, tuple(rules), status)


# ---------------------------------------------------------------------------
# enumeration


MAX_ENUM_VERTICES = 4
MAX_ENUM_ORDER = 128


def _odd(n):
    return n % 2 == 1


def period4_catalog(max_order: int) -> list:
    """Catalog groups of period dividing 4 and order <= max_order, one per isomorphism type."""
    tags = []
    for n in range(1, max_order + 1):
        tags.append(Tag("cyclic", (n,)))
    for m in range(3, max_order // 2 + 1, 2):
        tags.append(Tag("dihedral", (2 * m,)))
        for d in range(3, max_order // (2 * m) + 1, 2):
            if math.gcd(d, 2 * m) == 1:
                tags.append(Tag("product", (Tag("dihedral", (2 * m,)), Tag("cyclic", (d,)))))
    k = 8
    while k <= max_order:
        tags.append(Tag("quaternionic", (k,)))
        for d in range(3, max_order // k + 1, 2):
            tags.append(Tag("product", (Tag("quaternionic", (k,)), Tag("cyclic", (d,)))))
        k *= 2
    # Z/m x| Z/2^e with r = -1 (e >= 2), m odd >= 3
    for m in range(3, max_order // 4 + 1, 2):
        e = 4
        while m * e <= max_order:
            tags.append(Tag("metacyclic", (m, e, m - 1)))
            for d in range(3, max_order // (m * e) + 1, 2):
                if math.gcd(d, m) == 1:
                    tags.append(Tag("product", (Tag("metacyclic", (m, e, m - 1)), Tag("cyclic", (d,)))))
            e *= 2
    for base, order in ((Tag("binary_tetrahedral", (1,)), 24), (Tag("binary_octahedral", (1,)), 48),
                        (Tag("binary_icosahedral", ()), 120)):
        if order <= max_order:
            tags.append(base)
            for d in range(5, max_order // order + 1, 2):
                if math.gcd(d, order) == 1:
                    tags.append(Tag("product", (base, Tag("cyclic", (d,)))))
    k = 2
    while 8 * 3 ** k <= max_order:
        tags.append(Tag("binary_tetrahedral", (k,)))
        k += 1
    k = 2
    while 16 * 3 ** k <= max_order:
        tags.append(Tag("binary_octahedral", (k,)))
        k += 1
    out = []
    for t in tags:
        G = construct_catalog_group(t)
        if classify_group(G).period_divides_4 == "yes":
            out.append(G)
    return out


def _z2_edge(name, o, t, Go, Gt) -> Edge:
    E = construct_catalog_group("cyclic(2)")
    return Edge(name, o, t, E, (distinguished_involution(Go),), (distinguished_involution(Gt),))


def _has_unique_involution_class(G: FiniteGroup) -> bool:
    return G.order % 2 == 0 and classify_group(G).involution_classes == 1


def _linear(vertices, edge_kinds) -> GraphOfGroups:
    edges = []
    for i, kind in enumerate(edge_kinds):
        if kind == 2:
            edges.append(_z2_edge(f"e{i + 1}", i, i + 1, vertices[i], vertices[i + 1]))
        else:
            edges.append(_z6_edge(f"e{i + 1}", i, i + 1, vertices[i], vertices[i + 1]))
    return GraphOfGroups(tuple(vertices), tuple(edges), tuple(f"V{i + 1}" for i in range(len(vertices))))


def _z6_edge(name, o, t, Go, Gt) -> Edge:
    E = construct_catalog_group("cyclic(6)")

    def order6(G):
        # the order-6 element through the distinguished involution and a central order-3 element
        a = distinguished_involution(G)
        for c in G.center():
            if G.orders[c] == 3:
                return G.mul(a, c)
        for x in range(G.order):
            if G.orders[x] == 6 and G.power(x, 3) == a:
                return x
        raise GroupError(f"{G.name} has no suitable element of order 6")
    return Edge(name, o, t, E, (order6(Go),), (order6(Gt),))


def enumerate_admissible(max_vertices: int, max_order: int) -> list:
    """Linear trees of catalog groups with Z/2 edges (plus the Z/6 variant), one per vertex multiset.

    Cost: the candidate count is about (#non-dihedral) * C(#dihedral + k, k) per vertex count k,
    where the catalog grows roughly linearly in max_order; bounds above
    ``MAX_ENUM_VERTICES`` / ``MAX_ENUM_ORDER`` are refused.
    """
    if max_vertices < 1 or max_order < 1:
        raise BoundsTooLarge("bounds must be positive")
    if max_vertices > MAX_ENUM_VERTICES or max_order > MAX_ENUM_ORDER:
        raise BoundsTooLarge(f"limit is {MAX_ENUM_VERTICES} vertices and order {MAX_ENUM_ORDER}")
    cat = period4_catalog(max_order)
    dihedral = [G for G in cat if _is_dihedral(G)]
    others = [G for G in cat if not _is_dihedral(G) and _has_unique_involution_class(G) and G.order > 2]
    key = lambda G: (G.order, str(G.catalog_tag))
    dihedral.sort(key=key)
    others.sort(key=key)
    out, seen = [], set()

    def emit(g: GraphOfGroups, fp):
        if fp in seen:
            return
        seen.add(fp)
        r = validate_and_reduce(g)
        if free_factor_scan(r) or crisp_filter(r):
            return
        if structural_admissibility(r).admissible:
            out.append(r)

    for G in sorted(cat, key=key):
        emit(GraphOfGroups((G,), (), ("V1",)), ((str(G.catalog_tag),), ()))
    from itertools import combinations_with_replacement as cwr
    for k in range(2, max_vertices + 1):
        for ds in cwr(dihedral, k):
            verts = list(ds)
            emit(_linear(verts, [2] * (k - 1)), (tuple(sorted(str(G.catalog_tag) for G in verts)), (2,) * (k - 1)))
        for X in others:
            for ds in cwr(dihedral, k - 1):
                verts = [X] + list(ds)
                emit(_linear(verts, [2] * (k - 1)),
                     (tuple(sorted(str(G.catalog_tag) for G in verts)), (2,) * (k - 1)))
    # Z/6 variant: D2m x Z/3 -[Z/6]- B x Z/d with dihedral tails
    dz3 = [G for G in cat if _is_dihedral_times_z3(G)]
    bz = [G for G in cat if _is_B_times_cyclic(G)]
    for A in dz3:
        for B in bz:
            for k in range(2, max_vertices + 1):
                for ds in cwr(dihedral, k - 2):
                    verts = [A, B] + list(ds)
                    kinds = [6] + [2] * (k - 2)
                    # tails hang off B
                    verts = [A, B] + list(ds)
                    emit(_linear(verts, kinds),
                         (tuple(sorted(str(G.catalog_tag) for G in verts)), tuple(sorted(kinds))))
    return out


def graph_fingerprint(g: GraphOfGroups) -> tuple:
    return (tuple(sorted(G.name for G in g.vertices)), tuple(sorted(e.group.order for e in g.edges)))
