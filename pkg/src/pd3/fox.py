"""Fox free differential calculus and Jacobians of presentations."""
from __future__ import annotations

from dataclasses import dataclass

from .groups import Word, free_reduce, word_to_string
from .rings import RingMatrix, elt


class UnknownGenerator(KeyError):
    pass


class FreeRingSum:
    """Element of the integral group ring of a free group: reduced word -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, w: Word, c: int = 1) -> "FreeRingSum":
        return cls({free_reduce(w): c})

    def __add__(self, other: "FreeRingSum") -> "FreeRingSum":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return FreeRingSum(out)

    def __neg__(self):
        return FreeRingSum({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "FreeRingSum") -> "FreeRingSum":
        out: dict = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                k = free_reduce(u + v)
                out[k] = out.get(k, 0) + c * d
        return FreeRingSum(out)

    def __eq__(self, other):
        return isinstance(other, FreeRingSum) and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            body = word_to_string(w)
            coef = "" if abs(c) == 1 and body != "1" else str(abs(c))
            if coef and body != "1":
                coef += "*"
            parts.append(("- " if c < 0 else "+ ") + coef + ("" if body == "1" and coef else body))
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__


def fox_derivative(r: Word, x: str, generators=None) -> FreeRingSum:
    """d r / d x by one left-to-right pass over the word."""
    if generators is not None and x not in generators:
        raise UnknownGenerator(x)
    out: dict = {}
    prefix: list = []
    for y, e in r:
        if generators is not None and y not in generators:
            raise UnknownGenerator(y)
        if y == x:
            if e > 0:
                w = free_reduce(prefix)
                out[w] = out.get(w, 0) + 1
            else:
                w = free_reduce(prefix + [(x, -1)])
                out[w] = out.get(w, 0) - 1
        prefix.append((y, e))
    return FreeRingSum(out)


def fox_identity_residual(r: Word, generators) -> FreeRingSum:
    """sum_j (dr/dx_j)(x_j - 1) - (r - 1); zero for every word."""
    total = FreeRingSum()
    for x in generators:
        total = total + fox_derivative(r, x) * FreeRingSum({((x, 1),): 1, (): -1})
    return total - FreeRingSum({free_reduce(r): 1}) + FreeRingSum({(): 1})


@dataclass(frozen=True)
class Target:
    """Evaluation of presentation generators into a base group (see rings)."""

    group: object
    images: dict

    def image(self, letter) -> object:
        x, e = letter
        if x not in self.images:
            raise UnknownGenerator(x)
        g = self.images[x]
        return g if e > 0 else self.group.inv(g)

    def evaluate(self, word: Word):
        g = self.group.identity
        for letter in word:
            g = self.group.mul(g, self.image(letter))
        return g


def evaluate_sum(s: FreeRingSum, target: Target):
    out: dict = {}
    for w, c in s.terms.items():
        g = target.evaluate(w)
        out[g] = out.get(g, 0) + c
    return elt(target.group, out)


def jacobian(pres, target: Target) -> RingMatrix:
    """Rows are relators, columns generators; entry (i, j) is the image of dr_i/dx_j."""
    group = target.group
    col = {x: j for j, x in enumerate(pres.generators)}
    rows = []
    for r in pres.relators:
        acc = [dict() for _ in pres.generators]
        g = group.identity
        for y, e in r:
            if y not in col:
                raise UnknownGenerator(y)
            img = target.image((y, e))
            if e > 0:
                d = acc[col[y]]
                d[g] = d.get(g, 0) + 1
                g = group.mul(g, img)
            else:
                g = group.mul(g, img)
                d = acc[col[y]]
                d[g] = d.get(g, 0) - 1
        rows.append([elt(group, d) for d in acc])
    return RingMatrix(group, rows, ncols=len(pres.generators))


def generator_column(pres, target: Target) -> RingMatrix:
    """The column (x_j - 1) of the first boundary map."""
    group = target.group
    one = elt(group, {group.identity: 1})
    return RingMatrix(group, [[elt(group, {target.images[x]: 1}) - one] for x in pres.generators], ncols=1)
