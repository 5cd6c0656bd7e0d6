"""Finite groups as dense multiplication tables.

Element 0 is always the identity, and elements are numbered in closure
discovery order so every table is reproducible.  Catalog constructors build
the periodic-cohomology families (cyclic, dihedral, quaternionic, metacyclic,
binary polyhedral, SL(2,p), TL(2,p) and direct products) and attach a known
presentation where one is available.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

ORDER_CAP = 1024
ASSOC_CHECK_BOUND = 256

Word = tuple  # tuple of (generator name, +1/-1)


class GroupError(ValueError):
    pass


class InvalidParameters(GroupError):
    pass


class CapExceeded(GroupError):
    pass


class NotPermutations(GroupError):
    pass


class InvalidTable(GroupError):
    pass


# ---------------------------------------------------------------------------
# catalog tags


@dataclass(frozen=True)
class Tag:
    family: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args and self.family == "trivial":
            return "trivial"
        return f"{self.family}({','.join(str(a) for a in self.args)})"

    @property
    def factors(self) -> tuple:
        if self.family == "product":
            return tuple(f for a in self.args for f in a.factors)
        return (self,)


_TAG_ALIASES = {
    "Z": "cyclic", "C": "cyclic", "D": "dihedral", "Q": "quaternionic",
    "T": "binary_tetrahedral", "O": "binary_octahedral",
    "sl2": "SL2", "tl2": "TL2",
}

_TAG_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(-?\d+)|([(),*]))")


def parse_tag(text: str) -> Tag:
    """Parse ``dihedral(6)``, ``product(dihedral(10),cyclic(3))``, ``A*B`` ..."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TAG_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InvalidParameters(f"bad group descriptor {text!r} at column {pos + 1}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    tokens = [t for t in tokens if t is not None]
    i = 0

    def atom():
        nonlocal i
        if i >= len(tokens):
            raise InvalidParameters(f"truncated group descriptor {text!r}")
        name = tokens[i]
        i += 1
        if re.fullmatch(r"-?\d+", name):
            return int(name)
        name = _TAG_ALIASES.get(name, name)
        args = []
        if i < len(tokens) and tokens[i] == "(":
            i += 1
            if i < len(tokens) and tokens[i] == ")":
                i += 1
                return Tag(name, ())
            while True:
                args.append(expr())
                if i >= len(tokens):
                    raise InvalidParameters(f"unclosed '(' in {text!r}")
                if tokens[i] == ",":
                    i += 1
                    continue
                if tokens[i] == ")":
                    i += 1
                    break
                raise InvalidParameters(f"expected ',' or ')' in {text!r}")
        return Tag(name, tuple(args))

    def expr():
        nonlocal i
        left = atom()
        while i < len(tokens) and tokens[i] == "*":
            i += 1
            left = Tag("product", (left, atom()))
        return left

    tag = expr()
    if i != len(tokens) or not isinstance(tag, Tag):
        raise InvalidParameters(f"trailing input in group descriptor {text!r}")
    return tag


# ---------------------------------------------------------------------------
# presentations attached to catalog groups


def word_from_string(text: str) -> Word:
    """``"a b^-1 a^2"`` or ``"a*b^-1*a^2"`` -> free word; ``"1"`` is empty."""
    out = []
    text = text.replace("*", " ").strip()
    if text in ("", "1", "e"):
        return ()
    for tok in text.split():
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_.']*)(?:\^(-?\d+))?", tok)
        if not m:
            raise InvalidParameters(f"bad word token {tok!r}")
        k = int(m.group(2)) if m.group(2) is not None else 1
        out.extend([(m.group(1), 1 if k > 0 else -1)] * abs(k))
    return free_reduce(tuple(out))


def free_reduce(word: Iterable) -> Word:
    out: list = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def word_inverse(word: Word) -> Word:
    return tuple((x, -e) for x, e in reversed(word))


def word_power(word: Word, k: int) -> Word:
    if k < 0:
        return word_power(word_inverse(word), -k)
    return free_reduce(word * k)


def word_to_string(word: Word) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        x, e = word[i]
        j = i
        while j < len(word) and word[j] == (x, e):
            j += 1
        k = (j - i) * e
        parts.append(x if k == 1 else f"{x}^{k}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class GroupPresentation:
    """Presentation whose generators are named elements of a table group.

    ``involution`` is a word for the distinguished involution when the group
    has one (the unique central involution, or the dihedral reflection).
    """

    names: tuple
    elements: tuple
    relators: tuple
    involution: Word | None = None

    @property
    def balanced(self) -> bool:
        return len(self.names) == len(self.relators)


# ---------------------------------------------------------------------------
# the group type


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    table: np.ndarray
    inverses: tuple
    generators: tuple
    labels: tuple | None = None
    catalog_tag: Tag | None = None
    presentation: GroupPresentation | None = None
    coprime: bool = True
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    identity = 0

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverses[g], -k
        out = 0
        for _ in range(k % self.element_order(g) if g else 0):
            out = self.mul(out, g)
        return out

    def element_order(self, g: int) -> int:
        orders = self._cache.get("orders")
        if orders is None:
            orders = []
            for x in range(self.order):
                k, y = 1, x
                while y != 0:
                    y = int(self.table[y, x])
                    k += 1
                orders.append(k)
            orders = tuple(orders)
            self._cache["orders"] = orders
        return orders[g]

    @property
    def orders(self) -> tuple:
        self.element_order(0)
        return self._cache["orders"]

    @property
    def generator_names(self) -> tuple:
        if self.presentation is not None:
            return self.presentation.names
        return tuple(f"g{i + 1}" for i in range(len(self.generators)))

    def generator_element(self, name: str) -> int:
        names = self.generator_names
        if name not in names:
            raise KeyError(name)
        if self.presentation is not None:
            return self.presentation.elements[names.index(name)]
        return self.generators[names.index(name)]

    def evaluate(self, word: Word) -> int:
        g = 0
        for x, e in word:
            y = self.generator_element(x)
            g = self.mul(g, y if e > 0 else self.inverses[y])
        return g

    def word_for(self, g: int) -> Word:
        """A shortest word in the named generators (and inverses) for g."""
        words = self._cache.get("words")
        if words is None:
            gens = [(n, self.generator_element(n)) for n in self.generator_names]
            steps = [((n, 1), x) for n, x in gens] + [((n, -1), self.inverses[x]) for n, x in gens]
            words = {0: ()}
            queue = deque([0])
            while queue:
                h = queue.popleft()
                for letter, x in steps:
                    k = self.mul(h, x)
                    if k not in words:
                        words[k] = words[h] + (letter,)
                        queue.append(k)
            self._cache["words"] = words
        return words[g]

    def label(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return word_to_string(self.word_for(g)) if g else "1"

    @property
    def name(self) -> str:
        return str(self.catalog_tag) if self.catalog_tag is not None else f"group[{self.order}]"

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def center(self) -> tuple:
        return tuple(g for g in range(self.order) if np.array_equal(self.table[g, :], self.table[:, g]))

    def involutions(self) -> tuple:
        return tuple(g for g in range(self.order) if self.orders[g] == 2)

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inverses[g])

    def with_presentation(self, pres: GroupPresentation) -> "FiniteGroup":
        check_presentation(self, pres)
        return FiniteGroup(self.order, self.table, self.inverses, self.generators,
                           self.labels, self.catalog_tag, pres, self.coprime)

    def with_tag(self, tag: Tag, coprime: bool = True) -> "FiniteGroup":
        return FiniteGroup(self.order, self.table, self.inverses, self.generators,
                           self.labels, tag, self.presentation, coprime)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def validate_table(table: np.ndarray, check_assoc: bool | None = None) -> None:
    n = table.shape[0]
    if table.shape != (n, n):
        raise InvalidTable("table must be square")
    ident = np.arange(n)
    if not (np.array_equal(table[0], ident) and np.array_equal(table[:, 0], ident)):
        raise InvalidTable("row/column 0 must be the identity permutation")
    srt = np.sort(table, axis=1)
    if not (np.all(srt == ident) and np.all(np.sort(table, axis=0) == ident[:, None])):
        raise InvalidTable("table is not a Latin square")
    if check_assoc is None:
        check_assoc = n <= ASSOC_CHECK_BOUND
    if check_assoc:
        for a in range(n):
            # (a*b)*c == a*(b*c) for all b, c
            if not np.array_equal(table[table[a]], table[a][table]):
                raise InvalidTable("table is not associative")


def group_from_table(table, generators=None, labels=None, tag=None) -> FiniteGroup:
    table = np.asarray(table, dtype=np.int64)
    validate_table(table)
    n = table.shape[0]
    inverses = tuple(int(np.flatnonzero(table[g] == 0)[0]) for g in range(n))
    if generators is None:
        generators = _greedy_generators(table)
    generators = tuple(int(g) for g in generators)
    if len(closure_indices(table, generators)) != n:
        raise InvalidTable("generators do not generate the group")
    table.setflags(write=False)
    return FiniteGroup(n, table, inverses, generators, labels, tag)


def _greedy_generators(table) -> tuple:
    n = table.shape[0]
    gens: list = []
    have = {0}
    for g in range(1, n):
        if g not in have:
            gens.append(g)
            have = set(closure_indices(table, gens))
    return tuple(gens)


def closure_indices(table, subset: Iterable[int]) -> list:
    """Subgroup generated by ``subset`` inside a table group, in discovery order."""
    gens = [int(s) for s in subset]
    seen = {0: None}
    order = [0]
    queue = deque([0])
    while queue:
        h = queue.popleft()
        for s in gens:
            k = int(table[h, s])
            if k not in seen:
                seen[k] = None
                order.append(k)
                queue.append(k)
    return order


def closure(gens: Sequence[Hashable], mul: Callable, identity: Hashable, cap: int = ORDER_CAP,
            labels: Callable | None = None, tag: Tag | None = None) -> tuple[FiniteGroup, dict]:
    """Close ``gens`` under ``mul`` and return the table group and element index map."""
    index = {identity: 0}
    elements = [identity]
    right = []  # right[h][k] = index of elements[h] * gens[k]
    h = 0
    while h < len(elements):
        row = []
        for s in gens:
            y = mul(elements[h], s)
            j = index.get(y)
            if j is None:
                if len(elements) >= cap:
                    raise CapExceeded(f"group order exceeds cap {cap}")
                j = len(elements)
                index[y] = j
                elements.append(y)
            row.append(j)
        right.append(row)
        h += 1
    n = len(elements)
    right = np.array(right, dtype=np.int64).reshape(n, len(gens))
    # spanning tree: element h = parent[h] * gens[pgen[h]]
    parent = [-1] * n
    pgen = [-1] * n
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    bfs = []
    while queue:
        h = queue.popleft()
        for k in range(len(gens)):
            j = int(right[h, k])
            if not seen[j]:
                seen[j] = True
                parent[j], pgen[j] = h, k
                bfs.append(j)
                queue.append(j)
    table = np.zeros((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for h in bfs:
        table[:, h] = right[table[:, parent[h]], pgen[h]]
    gen_idx = tuple(index[s] for s in gens)
    gen_idx = tuple(dict.fromkeys(g for g in gen_idx if g != 0))
    lab = tuple(labels(e) for e in elements) if labels else None
    validate_table(table, check_assoc=False)
    table.setflags(write=False)
    inverses = tuple(int(np.flatnonzero(table[g] == 0)[0]) for g in range(n))
    return FiniteGroup(n, table, inverses, gen_idx, lab, tag), index


def group_from_generators(perms: Sequence[Sequence[int]], cap: int = ORDER_CAP) -> FiniteGroup:
    """Closure of permutations (given as image lists on 0..d-1) under composition.

    The product g*h applies h first, then g.
    """
    perms = [tuple(int(x) for x in p) for p in perms]
    degree = max((len(p) for p in perms), default=0)
    for p in perms:
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise NotPermutations(f"{p} is not a permutation of 0..{degree - 1}")
    ident = tuple(range(degree))
    group, _ = closure(perms, lambda g, h: tuple(g[i] for i in h), ident, cap=cap)
    return group


def cycles_to_perm(cycles: Sequence[Sequence[int]], degree: int | None = None) -> tuple:
    """1-based cycle notation -> 0-based image list."""
    pts = [x for c in cycles for x in c]
    degree = max(pts, default=0) if degree is None else degree
    img = list(range(degree))
    for c in cycles:
        for i, x in enumerate(c):
            img[x - 1] = c[(i + 1) % len(c)] - 1
    return tuple(img)


def check_presentation(G: FiniteGroup, pres: GroupPresentation) -> None:
    """Relators vanish on the named elements and the named elements generate G."""
    lookup = dict(zip(pres.names, pres.elements))
    for r in pres.relators:
        g = 0
        for x, e in r:
            y = lookup[x]
            g = G.mul(g, y if e > 0 else G.inverses[y])
        if g != 0:
            raise InvalidParameters(f"relator {word_to_string(r)} fails in {G.name}")
    if len(closure_indices(G.table, pres.elements)) != G.order:
        raise InvalidParameters(f"presentation generators do not generate {G.name}")
    if pres.involution is not None:
        saved = FiniteGroup(G.order, G.table, G.inverses, G.generators, None, None, pres)
        if G.orders[saved.evaluate(pres.involution)] != 2:
            raise InvalidParameters("distinguished involution word is not an involution")


# ---------------------------------------------------------------------------
# homomorphisms, quotients, fiber products


def extend_hom(G: FiniteGroup, gen_images: Sequence[int], H: FiniteGroup,
               gens: Sequence[int] | None = None) -> tuple:
    """Extend generator images to a full homomorphism G -> H (as an index map).

    Raises GroupError when the images do not define a homomorphism.
    """
    gens = tuple(G.generators if gens is None else gens)
    if len(gens) != len(gen_images):
        raise GroupError("need one image per generator")
    img = [-1] * G.order
    img[0] = 0
    queue = deque([0])
    while queue:
        h = queue.popleft()
        for s, t in zip(gens, gen_images):
            k = G.mul(h, s)
            v = H.mul(img[h], int(t))
            if img[k] == -1:
                img[k] = v
                queue.append(k)
            elif img[k] != v:
                raise GroupError("generator images do not define a homomorphism")
    if -1 in img:
        raise GroupError("generators do not generate the group")
    arr = np.array(img)
    if not np.array_equal(H.table[arr[:, None], arr[None, :]], arr[G.table]):
        raise GroupError("generator images do not define a homomorphism")
    return tuple(img)


def quotient(G: FiniteGroup, normal: Sequence[int]) -> tuple[FiniteGroup, tuple]:
    N = sorted(set(normal))
    cosets: dict = {}
    proj = [-1] * G.order
    reps = []
    for g in range(G.order):
        if proj[g] == -1:
            key = len(reps)
            reps.append(g)
            for n in N:
                proj[G.mul(g, n)] = key
    k = len(reps)
    table = np.array([[proj[G.mul(reps[i], reps[j])] for j in range(k)] for i in range(k)])
    Q = group_from_table(table)
    return Q, tuple(proj)


def fiber_product(G: FiniteGroup, f: Sequence[int], H: FiniteGroup, h: Sequence[int],
                  tag: Tag | None = None, cap: int = ORDER_CAP) -> FiniteGroup:
    """{(g, y) : f(g) = h(y)} for homomorphisms f, h onto a common group."""
    pre: dict = {}
    for y in range(H.order):
        pre.setdefault(h[y], y)
    gens = [(g, pre[f[g]]) for g in G.generators]
    gens += [(g, 0) for g in range(G.order) if f[g] == 0 and g]
    gens += [(0, y) for y in range(H.order) if h[y] == 0 and y]
    grp, _ = closure(gens, lambda a, b: (G.mul(a[0], b[0]), H.mul(a[1], b[1])), (0, 0), cap=cap, tag=tag)
    return grp


def core_subgroup(G: FiniteGroup, p: int) -> tuple:
    """O_p(G): the intersection of all Sylow p-subgroups."""
    S = set(sylow(G, p))
    core = set(S)
    for g in range(G.order):
        core &= {G.conjugate(g, s) for s in S}
    return tuple(sorted(core))


# ---------------------------------------------------------------------------
# subgroup tools


def closure_of(G: FiniteGroup, subset: Iterable[int]) -> tuple:
    return tuple(closure_indices(G.table, subset))


def centralizer(G: FiniteGroup, subset: Iterable[int]) -> tuple:
    S = list(subset)
    return tuple(g for g in range(G.order) if all(G.mul(g, s) == G.mul(s, g) for s in S))


def normalizer(G: FiniteGroup, subset: Iterable[int]) -> tuple:
    H = set(closure_of(G, subset))
    return tuple(g for g in range(G.order) if all(G.conjugate(g, h) in H for h in H))


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


def sylow(G: FiniteGroup, p: int) -> tuple:
    """One Sylow p-subgroup, grown greedily from p-power-order elements."""
    target = p_part(G.order, p)
    P = [0]
    pelts = [g for g in range(1, G.order) if _is_p_power(G.orders[g], p)]
    changed = True
    while len(P) < target and changed:
        changed = False
        Pset = set(P)
        for x in pelts:
            if x in Pset:
                continue
            cand = closure_of(G, list(P) + [x])
            if _is_p_power(len(cand), p):
                P, Pset, changed = list(cand), set(cand), True
                if len(P) == target:
                    break
    if len(P) != target:
        raise GroupError(f"greedy Sylow search failed for p={p}")
    return tuple(sorted(P))


@dataclass(frozen=True)
class SubgroupInfo:
    closure: tuple
    centralizer: tuple
    normalizer: tuple
    sylow: tuple | None = None


def subgroup_tools(G: FiniteGroup, subset: Iterable[int], p: int | None = None) -> SubgroupInfo:
    S = list(subset)
    if not S:
        raise GroupError("subset must be nonempty")
    return SubgroupInfo(closure_of(G, S), centralizer(G, S), normalizer(G, S),
                        sylow(G, p) if p is not None else None)


def prime_factors(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def is_cyclic_subgroup(G: FiniteGroup, H: Sequence[int]) -> bool:
    return any(G.orders[h] == len(H) for h in H)


# ---------------------------------------------------------------------------
# catalog


def _w(text: str) -> Word:
    return word_from_string(text)


def _attach(G: FiniteGroup, names, elements, relators, involution=None) -> FiniteGroup:
    pres = GroupPresentation(tuple(names), tuple(int(e) for e in elements),
                             tuple(_w(r) if isinstance(r, str) else r for r in relators),
                             _w(involution) if isinstance(involution, str) else involution)
    return G.with_presentation(pres)


def _cyclic(n: int, tag: Tag) -> FiniteGroup:
    G, idx = closure([1 % n] if n > 1 else [], lambda a, b: (a + b) % n, 0, tag=tag)
    if n == 1:
        return _attach(G, (), (), ())
    return _attach(G, ("g",), (idx[1],), (f"g^{n}",), f"g^{n // 2}" if n % 2 == 0 else None)


def _dihedral(order: int, tag: Tag) -> FiniteGroup:
    m = order // 2
    if order % 2 or m % 2 == 0 or m < 3:
        raise InvalidParameters(f"dihedral(2m) needs m odd >= 3, got order {order}")
    s = (m - 1) // 2

    def mul(x, y):
        return ((x[0] + (-1) ** x[1] * y[0]) % m, (x[1] + y[1]) % 2)

    G, idx = closure([(0, 1), (1, 0)], mul, (0, 0), tag=tag)
    return _attach(G, ("a", "b"), (idx[(0, 1)], idx[(1, 0)]),
                   ("a^2", f"a b^{s} a b^{-1 - s}"), "a")


def _quaternionic(order: int, tag: Tag) -> FiniteGroup:
    if order < 8 or order & (order - 1):
        raise InvalidParameters(f"quaternionic(2^k) needs k >= 3, got {order}")
    n = order // 4  # x has order 2n, y^2 = x^n

    def mul(u, v):
        i, e = u
        j, f = v
        k = i + (j if e == 0 else -j)
        if e + f == 2:
            return ((k + n) % (2 * n), 0)
        return (k % (2 * n), e + f)

    G, idx = closure([(1, 0), (0, 1)], mul, (0, 0), tag=tag)
    x, y = idx[(1, 0)], idx[(0, 1)]
    return _attach(G, ("x", "y"), (x, y), QUATERNION_RELATORS(n), f"x^{n}")


def QUATERNION_RELATORS(n: int) -> tuple:
    return (f"x^{n} y^-2", "y x y^-1 x")


def _metacyclic(m: int, n: int, r: int, tag: Tag) -> FiniteGroup:
    if m < 1 or n < 1 or math.gcd(r, m) != 1 or pow(r, n, m) != 1 % m:
        raise InvalidParameters(f"metacyclic({m},{n},{r}) needs r^n = 1 mod m and (r,m) = 1")
    rr = r % m

    def mul(x, y):
        return ((x[0] + y[0] * pow(rr, x[1], m)) % m, (x[1] + y[1]) % n)

    G, idx = closure([(0, 1 % n), (1 % m, 0)], mul, (0, 0), tag=tag)
    inv = None
    if n % 2 == 0 and m % 2 == 1 and pow(rr, n // 2, m) == 1 % m:
        inv = f"a^{n // 2}"
    return _attach(G, ("a", "b"), (idx[(0, 1 % n)], idx[(1 % m, 0)]),
                   (f"a^{n}", f"b^{m}", f"a b a^-1 b^-{rr}" if rr else "a b a^-1"), inv)


def _mat_mul(p):
    def mul(A, B):
        a, b, c, d = A
        e, f, g, h = B
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)
    return mul


def _sl2(p: int, tag: Tag, cap: int) -> FiniteGroup:
    G, _ = closure([(1, 1, 0, 1), (0, p - 1, 1, 0)], _mat_mul(p), (1, 0, 0, 1), cap=cap, tag=tag)
    return G


def _nonsquare(p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    return min(x for x in range(2, p) if x not in squares)


def _tl2(p: int, tag: Tag, cap: int) -> FiniteGroup:
    """Matrices of determinant 1 or w with A*B = AB unless both have det w,
    in which case A*B = w^-1 AB."""
    w = _nonsquare(p)
    winv = pow(w, -1, p)
    plain = _mat_mul(p)

    def det(A):
        return (A[0] * A[3] - A[1] * A[2]) % p

    def mul(A, B):
        C = plain(A, B)
        if det(A) != 1 and det(B) != 1:
            C = tuple(x * winv % p for x in C)
        return C

    G, _ = closure([(1, 1, 0, 1), (0, p - 1, 1, 0), (w, 0, 0, 1)], mul, (1, 0, 0, 1), cap=cap, tag=tag)
    return G


def _binary_presentation(G: FiniteGroup, n: int) -> FiniteGroup:
    """Find s, t with s^3 = t^n = (st)^2 generating G (the <2,3,n> binary group)."""
    o = G.orders
    for s in range(G.order):
        if o[s] != 6:
            continue
        z = G.power(s, 3)
        for t in range(G.order):
            if o[t] != 2 * n or G.power(t, n) != z:
                continue
            st = G.mul(s, t)
            if G.mul(st, st) != z:
                continue
            if len(closure_indices(G.table, [s, t])) == G.order:
                return _attach(G, ("s", "t"), (s, t), (f"s^3 t^-{n}", "s^3 t^-1 s^-1 t^-1 s^-1"), "s^3")
    raise GroupError(f"no <2,3,{n}> generating pair in {G.name}")


def _product(A: FiniteGroup, B: FiniteGroup, tag: Tag, cap: int) -> FiniteGroup:
    if A.order * B.order > cap:
        raise InvalidParameters(f"order {A.order * B.order} exceeds cap {cap}")
    gens = [(g, 0) for g in A.generators] + [(0, h) for h in B.generators]
    G, idx = closure(gens, lambda x, y: (A.mul(x[0], y[0]), B.mul(x[1], y[1])), (0, 0), cap=cap, tag=tag)
    coprime = math.gcd(A.order, B.order) == 1
    if A.presentation is not None and B.presentation is not None:
        an, bn = A.presentation.names, B.presentation.names
        ren = {x: (x if x not in an else x + "_2") for x in bn}
        rb = lambda w: tuple((ren[x], e) for x, e in w)
        names = an + tuple(ren[x] for x in bn)
        elements = tuple(idx[(e, 0)] for e in A.presentation.elements) + \
            tuple(idx[(0, e)] for e in B.presentation.elements)
        rels = A.presentation.relators + tuple(rb(r) for r in B.presentation.relators)
        rels += tuple(free_reduce(((x, 1), (ren[y], 1), (x, -1), (ren[y], -1))) for x in an for y in bn)
        inv = None
        if A.presentation.involution is not None and B.order % 2 == 1:
            inv = A.presentation.involution
        elif B.presentation.involution is not None and A.order % 2 == 1:
            inv = rb(B.presentation.involution)
        G = _attach(G, names, elements, rels, inv)
    return G.with_tag(tag, coprime)


def expected_order(tag: Tag) -> int:
    f, a = tag.family, tag.args
    if f == "trivial":
        return 1
    if f in ("cyclic", "dihedral", "quaternionic"):
        return a[0]
    if f == "metacyclic":
        return a[0] * a[1]
    if f == "binary_tetrahedral":
        return 8 * 3 ** a[0]
    if f == "binary_octahedral":
        return 16 * 3 ** a[0]
    if f == "binary_icosahedral":
        return 120
    if f == "SL2":
        p = a[0]
        return p * (p * p - 1)
    if f == "TL2":
        p = a[0]
        return 2 * p * (p * p - 1)
    if f == "product":
        return expected_order(a[0]) * expected_order(a[1])
    raise InvalidParameters(f"unknown group family {f!r}")


def _int_args(tag: Tag, k: int) -> tuple:
    if len(tag.args) != k or not all(isinstance(x, int) for x in tag.args):
        raise InvalidParameters(f"{tag.family} takes {k} integer argument(s)")
    return tag.args


def construct_catalog_group(tag: Tag | str, cap: int = ORDER_CAP) -> FiniteGroup:
    """Build a validated catalog group; the result is cached per (tag, cap)."""
    if isinstance(tag, str):
        tag = parse_tag(tag)
    return _construct(tag, cap)


@lru_cache(maxsize=None)
def _construct(tag: Tag, cap: int) -> FiniteGroup:
    f = tag.family
    if f == "product":
        if len(tag.args) != 2 or not all(isinstance(x, Tag) for x in tag.args):
            raise InvalidParameters("product takes two group descriptors")
    elif f != "trivial":
        _int_args(tag, {"metacyclic": 3, "binary_icosahedral": 0}.get(f, 1))
        if any(x < 1 for x in tag.args if f != "metacyclic") or (f == "metacyclic" and min(tag.args[:2]) < 1):
            raise InvalidParameters(f"{tag}: parameters must be positive")
    n = expected_order(tag)
    if n > cap:
        raise InvalidParameters(f"{tag} has order {n} above cap {cap}")
    if f == "trivial":
        return _cyclic(1, tag)
    if f == "cyclic":
        return _cyclic(tag.args[0], tag)
    if f == "dihedral":
        return _dihedral(tag.args[0], tag)
    if f == "quaternionic":
        return _quaternionic(tag.args[0], tag)
    if f == "metacyclic":
        return _metacyclic(*tag.args, tag)
    if f in ("SL2", "TL2"):
        p = tag.args[0]
        if not is_prime(p) or p < 3:
            raise InvalidParameters(f"{f}(p) needs an odd prime p")
        G = _sl2(p, tag, cap) if f == "SL2" else _tl2(p, tag, cap)
        if p == 3:
            return _binary_presentation(G, 3 if f == "SL2" else 4)
        if f == "SL2" and p == 5:
            return _binary_presentation(G, 5)
        return G
    if f == "binary_icosahedral":
        return _construct(Tag("SL2", (5,)), cap).with_tag(tag)
    if f == "binary_tetrahedral":
        k = tag.args[0]
        base = _construct(Tag("SL2", (3,)), cap)
        if k == 1:
            return base.with_tag(tag)
        Q, proj = quotient(base, core_subgroup(base, 2))
        u = next(g for g in range(Q.order) if Q.orders[g] == 3)
        C = _construct(Tag("cyclic", (3 ** k,)), cap)
        h = extend_hom(C, [u], Q)
        return fiber_product(base, proj, C, h, tag=tag, cap=cap)
    if f == "binary_octahedral":
        k = tag.args[0]
        base = _construct(Tag("TL2", (3,)), cap)
        if k == 1:
            return base.with_tag(tag)
        Q, proj = quotient(base, core_subgroup(base, 2))
        u = next(g for g in range(Q.order) if Q.orders[g] == 3)
        v = next(g for g in range(Q.order) if Q.orders[g] == 2)
        D = _construct(Tag("dihedral", (2 * 3 ** k,)), cap)
        h = extend_hom(D, [v, u], Q, gens=D.presentation.elements)
        return fiber_product(base, proj, D, h, tag=tag, cap=cap)
    if f == "product":
        A = _construct(tag.args[0], cap)
        B = _construct(tag.args[1], cap)
        return _product(A, B, tag, cap)
    raise InvalidParameters(f"unknown group family {f!r}")


# ---------------------------------------------------------------------------
# structural predicates


@dataclass(frozen=True)
class PQWitness:
    """a of order q acting on b of odd prime order p by b -> b^r, r of order q mod p."""

    p: int
    q: int
    a: int
    b: int
    r: int

    @property
    def generators(self) -> tuple:
        return (self.a, self.b)


def _mult_order(r: int, m: int) -> int:
    k, x = 1, r % m
    while x != 1 % m:
        x = x * r % m
        k += 1
    return k


def find_pq_subgroup(G: FiniteGroup) -> PQWitness | None:
    """Search for Z/p x| Z/q with p odd prime, q odd prime or 4, q | p-1, trivial centre."""
    o = G.orders
    for p in prime_factors(G.order):
        if p == 2:
            continue
        qs = [q for q in prime_factors(p - 1) if q != 2 and G.order % q == 0]
        if (p - 1) % 4 == 0 and G.order % 4 == 0:
            qs.append(4)
        if not qs:
            continue
        seen: set = set()
        for b in range(1, G.order):
            if o[b] != p or b in seen:
                continue
            powers = [0]
            for _ in range(p - 1):
                powers.append(G.mul(powers[-1], b))
            seen.update(powers)
            exp = {x: k for k, x in enumerate(powers)}
            for q in sorted(qs):
                for a in range(1, G.order):
                    if o[a] != q:
                        continue
                    r = exp.get(G.conjugate(a, b))
                    if r is None or _mult_order(r, p) != q:
                        continue
                    H = closure_of(G, (a, b))
                    if len(H) == p * q and all(
                        any(G.mul(z, h) != G.mul(h, z) for h in H) for z in H if z):
                        return PQWitness(p, q, a, b, r)
    return None


def has_periodic_cohomology(G: FiniteGroup) -> bool:
    """No subgroup Z/p x Z/p: commuting elements of order p always generate a cyclic group."""
    o = G.orders
    for p in prime_factors(G.order):
        elts = [g for g in range(1, G.order) if o[g] == p]
        for i, x in enumerate(elts):
            cx = set(closure_of(G, [x]))
            for y in elts[i + 1:]:
                if y not in cx and G.mul(x, y) == G.mul(y, x):
                    return False
    return True


def all_sylow_cyclic(G: FiniteGroup) -> bool:
    return all(is_cyclic_subgroup(G, sylow(G, p)) for p in prime_factors(G.order))


def is_dihedral_odd(G: FiniteGroup) -> bool:
    m = G.order // 2
    if G.order % 2 or m % 2 == 0 or m < 3:
        return False
    o = G.orders
    for b in range(G.order):
        if o[b] != m:
            continue
        binv = G.inverses[b]
        for a in range(G.order):
            if o[a] == 2 and G.conjugate(a, b) == binv:
                return len(closure_of(G, (a, b))) == G.order
        return False
    return False


def conjugacy_classes(G: FiniteGroup) -> list:
    seen = [False] * G.order
    classes = []
    for x in range(G.order):
        if not seen[x]:
            cls = sorted({G.conjugate(g, x) for g in range(G.order)})
            for y in cls:
                seen[y] = True
            classes.append(tuple(cls))
    return classes


@dataclass(frozen=True)
class GroupProfile:
    is_cyclic: bool
    is_metacyclic: bool
    is_dihedral_odd: bool
    has_periodic_cohomology: bool
    period_divides_4: str  # "yes" / "no" / "unknown"
    unique_central_involution: int | None
    involution_classes: int


def _catalog_period4(tag: Tag | None, coprime: bool) -> str:
    if tag is None:
        return "unknown"
    f, a = tag.family, tag.args
    if f in ("trivial", "cyclic", "dihedral", "quaternionic", "binary_tetrahedral",
             "binary_octahedral", "binary_icosahedral"):
        return "yes"
    if f == "SL2":
        return "yes" if a[0] in (3, 5) else "unknown"
    if f == "TL2":
        return "yes" if a[0] == 3 else "unknown"
    if f == "metacyclic":
        m, n, r = a
        u = _mult_order(r, m) if m > 1 else 1
        if u == 1:
            return "yes"  # abelian; periodic only when cyclic
        if p_part(n, 2) == n and (r + 1) % m == 0:
            return "yes"
        return "unknown"
    if f == "product":
        if not coprime:
            return "unknown"
        parts = [_catalog_period4(t, True) for t in tag.args]
        if all(x == "yes" for x in parts) and sum(t.family != "cyclic" for t in tag.args) <= 1:
            return "yes"
        return "unknown"
    return "unknown"


def classify_group(G: FiniteGroup) -> GroupProfile:
    cached = G._cache.get("profile")
    if cached is not None:
        return cached
    o = G.orders
    cyclic = any(x == G.order for x in o)
    periodic = has_periodic_cohomology(G)
    meta = all_sylow_cyclic(G)
    invs = G.involutions()
    centre = set(G.center())
    uci = invs[0] if len(invs) == 1 and invs[0] in centre else None
    inv_classes = sum(1 for c in conjugacy_classes(G) if o[c[0]] == 2)
    if cyclic:
        p4 = "yes"
    elif not periodic or find_pq_subgroup(G) is not None:
        p4 = "no"
    else:
        p4 = _catalog_period4(G.catalog_tag, G.coprime)
    prof = GroupProfile(cyclic, meta, is_dihedral_odd(G), periodic, p4, uci, inv_classes)
    G._cache["profile"] = prof
    return prof
