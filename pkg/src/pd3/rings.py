"""Integral group rings with the w-twisted involution.

Three kinds of base group share one sparse element type:

* a finite table group (``FiniteRingElt``),
* the cyclic group Z/n written multiplicatively in a generator ``a``
  (``CyclicRingElt``, i.e. Z[a]/(a^n - 1)),
* an amalgam G_0 *_{Z/2} D_{2m_1} *_{Z/2} ... over one identified involution
  (``AmalgamRingElt``), with elements in normal form.

Coefficients are Python ints, so overflow cannot happen.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

from .groups import FiniteGroup, GroupError, Tag, construct_catalog_group, classify_group


class RingMismatch(TypeError):
    pass


class CharacterUndefined(ValueError):
    pass


class DescriptorMismatch(RingMismatch):
    pass


class RelatorViolated(ValueError):
    pass


# ---------------------------------------------------------------------------
# base groups


class CyclicGroup:
    """Z/n with elements 0..n-1 standing for a^0..a^(n-1)."""

    identity = 0

    def __init__(self, n: int, symbol: str = "a"):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.n = n
        self.symbol = symbol

    def mul(self, x: int, y: int) -> int:
        return (x + y) % self.n

    def inv(self, x: int) -> int:
        return (-x) % self.n

    def sort_key(self, x: int):
        return x

    def render(self, x: int) -> str:
        return "1" if x == 0 else (self.symbol if x == 1 else f"{self.symbol}^{x}")

    def __eq__(self, other):
        return isinstance(other, CyclicGroup) and other.n == self.n

    def __hash__(self):
        return hash(("cyclic", self.n))

    def __repr__(self):
        return f"CyclicGroup({self.n})"


class TableGroup:
    """Adapter exposing a FiniteGroup through the base-group protocol."""

    identity = 0

    def __init__(self, G: FiniteGroup):
        self.G = G

    def mul(self, x, y):
        return self.G.mul(x, y)

    def inv(self, x):
        return self.G.inverses[x]

    def sort_key(self, x):
        return x

    def render(self, x):
        return self.G.label(x)

    def __eq__(self, other):
        return isinstance(other, TableGroup) and other.G is self.G

    def __hash__(self):
        return id(self.G)

    def __repr__(self):
        return f"TableGroup({self.G.name})"


_table_groups: dict = {}


def table_group(G: FiniteGroup) -> TableGroup:
    tg = _table_groups.get(id(G))
    if tg is None or tg.G is not G:
        tg = _table_groups[id(G)] = TableGroup(G)
    return tg


class AmalgamElt(NamedTuple):
    """a^lead followed by syllables (factor index, coset representative)."""

    lead: int
    syllables: tuple


class AmalgamGroup:
    """G_0 *_{Z/2} G_1 *_{Z/2} ... with every factor's distinguished involution identified.

    Each non-identity factor element g not in <a> is written uniquely as
    a^e r where r is the lowest-index element of the right coset <a> g.
    """

    def __init__(self, factors: Sequence[FiniteGroup], involutions: Sequence[int]):
        self.factors = tuple(factors)
        self.involutions = tuple(int(x) for x in involutions)
        for G, a in zip(self.factors, self.involutions):
            if G.orders[a] != 2:
                raise ValueError(f"{a} is not an involution of {G.name}")
        self.identity = AmalgamElt(0, ())
        self._reps = []
        for G, a in zip(self.factors, self.involutions):
            self._reps.append(tuple(min(g, G.mul(a, g)) for g in range(G.order)))

    @classmethod
    def with_dihedral_tails(cls, G0: FiniteGroup, ms: Sequence[int]) -> "AmalgamGroup":
        """G_0 amalgamated with D_{2m_i} over the distinguished involutions."""
        factors = [G0] + [construct_catalog_group(Tag("dihedral", (2 * m,))) for m in ms]
        return cls(factors, [distinguished_involution(G) for G in factors])

    @property
    def key(self):
        return (tuple(id(G) for G in self.factors), self.involutions)

    def __eq__(self, other):
        return isinstance(other, AmalgamGroup) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "AmalgamGroup(" + " *_Z/2 ".join(G.name for G in self.factors) + ")"

    # normal form rewriting -------------------------------------------------

    def decompose(self, f: int, g: int) -> tuple:
        """g in factor f -> (e, r) with g = a^e r; r == 0 when g lies in <a>."""
        r = self._reps[f][g]
        if g == 0 or g == self.involutions[f]:
            return (0 if g == 0 else 1), 0
        return (0 if r == g else 1), r

    def _push(self, syl: list, e: int) -> int:
        """Replace syl by syl * a^e (in place); return the exponent left at the front."""
        i = len(syl) - 1
        while e and i >= 0:
            f, r = syl[i]
            G = self.factors[f]
            e, r2 = self.decompose(f, G.mul(r, self.involutions[f]))
            syl[i] = (f, r2)
            i -= 1
        return e

    def _rmul_factor(self, lead: int, syl: list, f: int, h: int) -> int:
        G = self.factors[f]
        if h == 0:
            return lead
        if syl and syl[-1][0] == f:
            _, r = syl.pop()
            e, r2 = self.decompose(f, G.mul(r, h))
            if r2:
                e = self._push(syl, e)
                syl.append((f, r2))
                return lead ^ e
            return lead ^ self._push(syl, e)
        e, r2 = self.decompose(f, h)
        lead ^= self._push(syl, e)
        if r2:
            syl.append((f, r2))
        return lead

    def mul(self, x: AmalgamElt, y: AmalgamElt) -> AmalgamElt:
        syl = list(x.syllables)
        lead = x.lead ^ self._push(syl, y.lead)
        for f, r in y.syllables:
            lead = self._rmul_factor(lead, syl, f, r)
        return AmalgamElt(lead, tuple(syl))

    def from_factor(self, f: int, g: int) -> AmalgamElt:
        e, r = self.decompose(f, g)
        return AmalgamElt(e, ((f, r),) if r else ())

    def inv(self, x: AmalgamElt) -> AmalgamElt:
        out = self.identity
        for f, r in reversed(x.syllables):
            out = self.mul(out, self.from_factor(f, self.factors[f].inverses[r]))
        if x.lead:
            out = self.mul(out, AmalgamElt(1, ()))
        return out

    def sort_key(self, x: AmalgamElt):
        return (len(x.syllables), x.syllables, x.lead)

    def render(self, x: AmalgamElt) -> str:
        parts = ["a"] if x.lead else []
        for f, r in x.syllables:
            parts.append(f"[{f}:{self.factors[f].label(r)}]")
        return "*".join(parts) if parts else "1"

    def is_normal(self, x: AmalgamElt) -> bool:
        prev = None
        for f, r in x.syllables:
            if f == prev or r == 0 or self._reps[f][r] != r:
                return False
            prev = f
        return x.lead in (0, 1)


def distinguished_involution(G: FiniteGroup) -> int:
    """Unique central involution, the reflection of a dihedral group, or the generator of Z/2."""
    if G.presentation is not None and G.presentation.involution is not None:
        return G.evaluate(G.presentation.involution)
    prof = classify_group(G)
    if prof.unique_central_involution is not None:
        return prof.unique_central_involution
    invs = G.involutions()
    if invs and prof.involution_classes == 1:
        return invs[0]
    raise GroupError(f"{G.name} has no distinguished involution")


# ---------------------------------------------------------------------------
# ring elements


class GroupRingElt:
    """Finitely supported integer combination of base-group elements."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms: dict | None = None):
        self.group = group
        self.terms = {g: c for g, c in (terms or {}).items() if c}

    # constructors
    @classmethod
    def zero(cls, group):
        return cls(group, {})

    @classmethod
    def one(cls, group):
        return cls(group, {group.identity: 1})

    @classmethod
    def monomial(cls, group, g, c: int = 1):
        return cls(group, {g: c})

    @classmethod
    def scalar(cls, group, c: int):
        return cls(group, {group.identity: c})

    def _check(self, other):
        if not isinstance(other, GroupRingElt):
            return self.scalar(self.group, int(other))
        if other.group != self.group:
            raise RingMismatch(f"{self.group!r} vs {other.group!r}")
        return other

    def _new(self, terms):
        return type(self)(self.group, terms)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        mul = self.group.mul
        out: dict = {}
        for g, c in self.terms.items():
            for h, d in other.terms.items():
                k = mul(g, h)
                out[k] = out.get(k, 0) + c * d
        return self._new(out)

    def __rmul__(self, other):
        return self._check(other) * self

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.scalar(self.group, other)
        return isinstance(other, GroupRingElt) and other.group == self.group and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def is_unit_monomial(self) -> bool:
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def monomial_inverse(self):
        (g, c), = self.terms.items()
        if abs(c) != 1:
            raise ValueError("not a unit monomial")
        return self._new({self.group.inv(g): c})

    def involute(self, w: Callable | None = None):
        inv = self.group.inv
        if w is None:
            return self._new({inv(g): c for g, c in self.terms.items()})
        out = {}
        for g, c in self.terms.items():
            s = w(g)
            if s not in (1, -1):
                raise CharacterUndefined(f"w({g}) = {s}")
            out[inv(g)] = s * c
        return self._new(out)

    def sorted_terms(self):
        key = self.group.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        render = self.group.render
        for g, c in self.sorted_terms():
            name = render(g)
            if name == "1":
                s = str(abs(c))
            elif abs(c) == 1:
                s = name
            else:
                s = f"{abs(c)}*{name}"
            parts.append(("-" if c < 0 else "+") + s)
        out = " ".join(p[0] + " " + p[1:] for p in parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self):
        return f"{type(self).__name__}({self})"


def augmentation(x: GroupRingElt) -> int:
    return x.augmentation()


def involute(x: GroupRingElt, w: Callable | None = None) -> GroupRingElt:
    return x.involute(w)


def ring_ops(x: GroupRingElt, y: GroupRingElt) -> dict:
    return {"sum": x + y, "product": x * y, "negation": -x, "augmentation": x.augmentation()}


class FiniteRingElt(GroupRingElt):
    __slots__ = ()

    @property
    def coeffs(self) -> tuple:
        G = self.group.G
        return tuple(self.terms.get(g, 0) for g in range(G.order))

    @classmethod
    def from_coeffs(cls, G: FiniteGroup, coeffs: Sequence[int]):
        if len(coeffs) != G.order:
            raise ValueError("coefficient array length must equal the group order")
        return cls(table_group(G), dict(enumerate(int(c) for c in coeffs)))


class CyclicRingElt(GroupRingElt):
    __slots__ = ()

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def coeffs(self) -> tuple:
        return tuple(self.terms.get(k, 0) for k in range(self.group.n))

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Sequence[int]):
        if len(coeffs) != n:
            raise ValueError("coefficient array length must equal the modulus")
        return cls(CyclicGroup(n), dict(enumerate(int(c) for c in coeffs)))

    @classmethod
    def poly(cls, n: int, coeffs: Sequence[int]):
        """Polynomial in a (any length, reduced mod a^n - 1)."""
        out: dict = {}
        for k, c in enumerate(coeffs):
            out[k % n] = out.get(k % n, 0) + int(c)
        return cls(CyclicGroup(n), out)


class AmalgamRingElt(GroupRingElt):
    __slots__ = ()


def ring_class(group) -> type:
    if isinstance(group, CyclicGroup):
        return CyclicRingElt
    if isinstance(group, TableGroup):
        return FiniteRingElt
    if isinstance(group, AmalgamGroup):
        return AmalgamRingElt
    return GroupRingElt


def elt(group, terms: dict | None = None) -> GroupRingElt:
    return ring_class(group)(group, terms)


def nu(group, g, k: int) -> GroupRingElt:
    """1 + g + ... + g^(k-1)."""
    out: dict = {}
    x = group.identity
    for _ in range(k):
        out[x] = out.get(x, 0) + 1
        x = group.mul(x, g)
    return elt(group, out)


# ---------------------------------------------------------------------------
# characters


def character_on_table(G: FiniteGroup, gen_values: dict) -> tuple:
    """Extend w given on named generators to a tuple of +-1 over all elements."""
    from .groups import extend_hom

    sign = construct_catalog_group("cyclic(2)")
    names = G.generator_names
    elems = [G.generator_element(n) for n in names]
    imgs = [0 if gen_values.get(n, 1) == 1 else 1 for n in names]
    try:
        h = extend_hom(G, imgs, sign, gens=elems)
    except GroupError as exc:
        raise CharacterUndefined(f"w is not a homomorphism on {G.name}: {exc}") from exc
    return tuple(1 if x == 0 else -1 for x in h)


def amalgam_character(A: AmalgamGroup, factor_w: Sequence[Sequence[int]] | None) -> Callable | None:
    if factor_w is None:
        return None
    a_sign = {factor_w[f][A.involutions[f]] for f in range(len(A.factors))}
    if len(a_sign) != 1:
        raise CharacterUndefined("w disagrees on the identified involution")
    (wa,) = a_sign

    def w(x: AmalgamElt) -> int:
        s = wa if x.lead else 1
        for f, r in x.syllables:
            s *= factor_w[f][r]
        return s
    return w


# ---------------------------------------------------------------------------
# matrices


class RingMatrix:
    """Rectangular matrix over one group ring; rows of ring elements."""

    def __init__(self, group, rows: Sequence[Sequence[GroupRingElt]], ncols: int | None = None):
        self.group = group
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")
            for x in r:
                if x.group != group:
                    raise RingMismatch("matrix entries must share the ring")

    @classmethod
    def zeros(cls, group, n: int, m: int):
        z = elt(group)
        return cls(group, [[z] * m for _ in range(n)], ncols=m)

    @classmethod
    def identity(cls, group, n: int):
        return cls(group, [[elt(group, {group.identity: 1}) if i == j else elt(group)
                            for j in range(n)] for i in range(n)], ncols=n)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def replace(self, i: int, j: int, value: GroupRingElt) -> "RingMatrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = value
        return RingMatrix(self.group, rows, ncols=self.ncols)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        if other.group != self.group:
            raise RingMismatch("matrices over different rings")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = elt(self.group)
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    x, y = self.rows[i][k], other.rows[k][j]
                    if x.terms and y.terms:
                        acc = acc + x * y
                row.append(acc)
            rows.append(row)
        return RingMatrix(self.group, rows, ncols=other.ncols)

    def transpose(self) -> "RingMatrix":
        return RingMatrix(self.group, [[self.rows[i][j] for i in range(self.nrows)]
                                       for j in range(self.ncols)], ncols=self.nrows)

    def map(self, fn) -> "RingMatrix":
        rows = [[fn(x) for x in r] for r in self.rows]
        group = rows[0][0].group if rows and rows[0] else self.group
        return RingMatrix(group, rows, ncols=self.ncols)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, RingMatrix) and other.group == self.group and other.rows == self.rows

    def __hash__(self):
        return hash(self.rows)

    def render(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)

    def to_lists(self) -> list:
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"RingMatrix({self.nrows}x{self.ncols})"


def conjugate_transpose(M: RingMatrix, w: Callable | None = None) -> RingMatrix:
    """Entry (i, j) of the result is involute(M[j, i])."""
    return RingMatrix(M.group, [[M.rows[i][j].involute(w) for i in range(M.nrows)]
                                for j in range(M.ncols)], ncols=M.nrows)


def is_self_conjugate(M: RingMatrix, w: Callable | None = None) -> bool:
    return M.nrows == M.ncols and conjugate_transpose(M, w) == M


# ---------------------------------------------------------------------------
# ring maps


@dataclass(frozen=True)
class RingMap:
    """Ring map induced by a group homomorphism source -> target (element function)."""

    source: object
    target: object
    image: Callable

    def __call__(self, x: GroupRingElt) -> GroupRingElt:
        return push_through(x, self)


def push_through(x: GroupRingElt, f: RingMap) -> GroupRingElt:
    if x.group != f.source:
        raise RingMismatch("element not in the source ring of the map")
    out: dict = {}
    for g, c in x.terms.items():
        h = f.image(g)
        out[h] = out.get(h, 0) + c
    return elt(f.target, out)


def _extend_into(G: FiniteGroup, elems: Sequence[int], images: Sequence, target) -> list:
    img = [None] * G.order
    img[0] = target.identity
    stack = [0]
    while stack:
        h = stack.pop()
        for s, t in zip(elems, images):
            k = G.mul(h, s)
            v = target.mul(img[h], t)
            if img[k] is None:
                img[k] = v
                stack.append(k)
            elif img[k] != v:
                raise RelatorViolated(f"generator images do not define a homomorphism on {G.name}")
    if any(v is None for v in img):
        raise RelatorViolated("generators do not generate the group")
    return img


def finite_ring_map(G: FiniteGroup, images: dict, target) -> RingMap:
    """Ring map Z[G] -> Z[target] from images of G's named generators."""
    names = G.generator_names
    img = _extend_into(G, [G.generator_element(n) for n in names], [images[n] for n in names], target)
    return RingMap(table_group(G), target, lambda g: img[g])


def amalgam_ring_map(A: AmalgamGroup, images: Sequence[dict], target) -> RingMap:
    """Ring map Z[A] -> Z[target]; images[f] maps factor f's generator names."""
    maps = []
    for G, im in zip(A.factors, images):
        names = G.generator_names
        maps.append(_extend_into(G, [G.generator_element(n) for n in names], [im[n] for n in names], target))
    a_imgs = {maps[f][A.involutions[f]] for f in range(len(maps))}
    if len(a_imgs) != 1:
        raise RelatorViolated("factor maps disagree on the amalgamated involution")
    (a_img,) = a_imgs

    def image(x: AmalgamElt):
        v = a_img if x.lead else target.identity
        for f, r in x.syllables:
            v = target.mul(v, maps[f][r])
        return v
    return RingMap(A, target, image)
