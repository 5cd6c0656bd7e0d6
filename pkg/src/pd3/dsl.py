"""Line-oriented ``.gog`` format for graphs of groups.

    # comment
    group A = dihedral(6)
    group B = cyclic(4)
    edge e : cyclic(2) -> A(x |-> a), B(x |-> g^2)
    char A.a = -1        # w on a vertex generator
    char e = -1          # w on the stable letter of a non-tree edge

``↦`` and ``|->`` are interchangeable.  Edge-group keys are either the
catalog generator names or, when they do not match, taken positionally.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .graphs import BadEmbedding, Edge, GraphError, GraphOfGroups
from .groups import GroupError, Tag, construct_catalog_group, parse_tag, word_to_string


class GogSyntaxError(SyntaxError):
    def __init__(self, line: int, col: int, expected: str, got: str = ""):
        self.line, self.col, self.expected = line, col, expected
        msg = f"line {line}, col {col}: expected {expected}"
        if got:
            msg += f", got {got!r}"
        super().__init__(msg)


class UndeclaredName(GraphError):
    def __init__(self, name: str, line: int, col: int):
        self.name, self.line, self.col = name, line, col
        super().__init__(f"line {line}, col {col}: undeclared name {name!r}")


class DuplicateName(GraphError):
    def __init__(self, name: str, line: int, col: int):
        self.name, self.line, self.col = name, line, col
        super().__init__(f"line {line}, col {col}: duplicate name {name!r}")


class LocatedGraphError(GraphError):
    """A graph-level failure (bad embedding, inconsistent w, ...) tied to a source line."""

    def __init__(self, cause: Exception, line: int):
        self.cause, self.line = cause, line
        super().__init__(f"line {line}: {type(cause).__name__}: {cause}")


# ---------------------------------------------------------------------------
# document


@dataclass(frozen=True)
class Loc:
    line: int
    col: int


@dataclass(frozen=True)
class GroupDecl:
    name: str
    tag: Tag
    loc: Loc = field(compare=False, default=Loc(0, 0))


@dataclass(frozen=True)
class EdgeDecl:
    name: str
    tag: Tag
    o: str
    t: str
    map_o: tuple  # (key, word) pairs as written
    map_t: tuple
    loc: Loc = field(compare=False, default=Loc(0, 0))


@dataclass(frozen=True)
class CharDecl:
    target: str  # vertex name or edge name
    generator: str | None
    value: int
    loc: Loc = field(compare=False, default=Loc(0, 0))


@dataclass(frozen=True)
class GogDocument:
    groups: tuple
    edges: tuple
    chars: tuple

    def group(self, name):
        return next(g for g in self.groups if g.name == name)


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<maps>↦|\|->)
  | (?P<arrow>->)
  | (?P<int>[+-]?\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[=(),:.^*])
  | (?P<minus>-)
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    text: str
    col: int


def _lex(text: str, lineno: int) -> list:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise GogSyntaxError(lineno, pos + 1, "a token", text[pos])
        kind = m.lastgroup
        if kind != "ws":
            out.append(Tok(kind, m.group(), pos + 1))
        pos = m.end()
    out.append(Tok("eol", "", len(text) + 1))
    return out


class _Line:
    """Recursive-descent cursor over one line's tokens."""

    def __init__(self, toks, lineno, raw):
        self.toks, self.i, self.lineno, self.raw = toks, 0, lineno, raw

    @property
    def cur(self) -> Tok:
        return self.toks[self.i]

    def fail(self, expected):
        raise GogSyntaxError(self.lineno, self.cur.col, expected, self.cur.text or "end of line")

    def take(self, kind, text=None, expected=None) -> Tok:
        t = self.cur
        if t.kind != kind or (text is not None and t.text != text):
            self.fail(expected or repr(text or kind))
        self.i += 1
        return t

    def accept(self, kind, text=None):
        t = self.cur
        if t.kind == kind and (text is None or t.text == text):
            self.i += 1
            return t
        return None

    def name(self, what="a name") -> Tok:
        return self.take("name", expected=what)

    def tag(self) -> Tag:
        start = self.cur.col
        self.name("a group constructor")
        depth = 0
        if self.accept("punct", "("):
            depth = 1
            while depth:
                t = self.cur
                if t.kind == "eol":
                    self.fail("')'")
                if t.text == "(":
                    depth += 1
                elif t.text == ")":
                    depth -= 1
                self.i += 1
        end = self.cur.col
        text = self.raw[start - 1:end - 1].strip()
        try:
            return parse_tag(text)
        except (GroupError, ValueError) as exc:
            raise GogSyntaxError(self.lineno, start, "a catalog constructor", text) from exc

    def word_text(self) -> str:
        """Raw text of a word, up to ',' or ')'."""
        start = self.cur.col
        while self.cur.kind != "eol" and self.cur.text not in (",", ")"):
            self.i += 1
        return self.raw[start - 1:self.cur.col - 1].strip()

    def mapping(self):
        """NAME ( key ↦ word, ... )"""
        v = self.name("a vertex name")
        self.take("punct", "(")
        pairs = []
        if self.accept("punct", ")"):
            return v, ()
        while True:
            k = self.name("an edge-group generator")
            self.take("maps", expected="'↦' or '|->'")
            col = self.cur.col
            w = self.word_text()
            if not w:
                raise GogSyntaxError(self.lineno, col, "a word")
            pairs.append((k.text, w, col))
            if self.accept("punct", ")"):
                break
            self.take("punct", ",", expected="',' or ')'")
        return v, tuple(pairs)

    def end(self):
        if self.cur.kind != "eol":
            self.fail("end of line")


def parse_gog(text: str) -> GogDocument:
    groups, edges, chars = [], [], []
    names: dict = {}

    def declare(tok: Tok, lineno: int):
        if tok.text in names:
            raise DuplicateName(tok.text, lineno, tok.col)
        names[tok.text] = lineno

    edge_words = []  # (EdgeDecl index, side, key, word, lineno, col) for later checks
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        L = _Line(_lex(body, lineno), lineno, body)
        kw = L.name("'group', 'edge' or 'char'")
        loc = Loc(lineno, kw.col)
        if kw.text == "group":
            n = L.name("a group name")
            declare(n, lineno)
            L.take("punct", "=")
            tag = L.tag()
            L.end()
            groups.append(GroupDecl(n.text, tag, loc))
        elif kw.text == "edge":
            n = L.name("an edge name")
            declare(n, lineno)
            L.take("punct", ":")
            tag = L.tag()
            L.take("arrow", expected="'->'")
            vo, mo = L.mapping()
            L.take("punct", ",", expected="','")
            vt, mt = L.mapping()
            L.end()
            for v in (vo, vt):
                if v.text not in {g.name for g in groups}:
                    raise UndeclaredName(v.text, lineno, v.col)
            for side, m in (("o", mo), ("t", mt)):
                for k, w, col in m:
                    edge_words.append((len(edges), side, k, w, lineno, col))
            edges.append(EdgeDecl(n.text, tag, vo.text, vt.text,
                                  tuple((k, w) for k, w, _ in mo), tuple((k, w) for k, w, _ in mt), loc))
        elif kw.text == "char":
            n = L.name("a vertex, generator or edge name")
            gen = None
            if L.accept("punct", "."):
                gen = L.name("a generator name").text
            L.take("punct", "=")
            v = L.take("int", expected="+1 or -1")
            if int(v.text) not in (1, -1):
                raise GogSyntaxError(lineno, v.col, "+1 or -1", v.text)
            L.end()
            chars.append(CharDecl(n.text, gen, int(v.text), loc))
        else:
            raise GogSyntaxError(lineno, kw.col, "'group', 'edge' or 'char'", kw.text)
    if not groups:
        raise GogSyntaxError(max(1, len(text.splitlines())), 1, "at least one group declaration")
    doc = GogDocument(tuple(groups), tuple(edges), tuple(chars))
    _resolve_chars(doc)
    for ei, side, k, w, lineno, col in edge_words:
        e = doc.edges[ei]
        G = construct_catalog_group(doc.group(e.o if side == "o" else e.t).tag)
        _parse_vertex_word(w, G, lineno, col)
    return doc


def _resolve_chars(doc: GogDocument):
    vnames = {g.name for g in doc.groups}
    enames = {e.name for e in doc.edges}
    for c in doc.chars:
        if c.generator is not None:
            if c.target not in vnames:
                raise UndeclaredName(c.target, c.loc.line, c.loc.col)
            G = construct_catalog_group(doc.group(c.target).tag)
            if c.generator not in G.generator_names:
                raise UndeclaredName(c.generator, c.loc.line, c.loc.col)
        elif c.target not in enames:
            owners = [g for g in doc.groups if c.target in construct_catalog_group(g.tag).generator_names]
            if len(owners) != 1:
                raise UndeclaredName(c.target, c.loc.line, c.loc.col)


def _split_letters(tok: str, gens) -> list | None:
    """Split a run-together token like ``ab`` into generator names (longest match first)."""
    if tok in gens:
        return [tok]
    for g in sorted(gens, key=len, reverse=True):
        if tok.startswith(g):
            rest = _split_letters(tok[len(g):], gens)
            if rest is not None:
                return [g] + rest
    return None


def _parse_vertex_word(text: str, G, lineno: int, col: int) -> tuple:
    gens = G.generator_names
    if text.strip() in ("1", "e", "identity"):
        return ()
    out = []
    pos = 0
    for m in re.finditer(r"[^\s*]+", text):
        tok = m.group()
        mm = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_']*)(?:\^([+-]?\d+))?", tok)
        if not mm:
            raise GogSyntaxError(lineno, col + m.start(), "a word in generator names", tok)
        letters = _split_letters(mm.group(1), gens)
        if letters is None:
            raise UndeclaredName(mm.group(1), lineno, col + m.start())
        k = int(mm.group(2)) if mm.group(2) is not None else 1
        # an exponent binds to the last letter only
        out.extend((x, 1) for x in letters[:-1])
        out.extend([(letters[-1], 1 if k > 0 else -1)] * abs(k))
        pos = m.end()
    return tuple(out)


# ---------------------------------------------------------------------------
# document -> graph


def _edge_keys(E, pairs, line):
    names = E.generator_names
    keys = [k for k, _ in pairs]
    if sorted(keys) == sorted(names):
        by = dict(pairs)
        return [by[n] for n in names]
    if len(pairs) == len(names):
        return [w for _, w in pairs]
    raise LocatedGraphError(BadEmbedding(f"edge group {E.name} has generators {list(names)}, "
                                         f"got {keys}"), line)


def to_graph(doc: GogDocument) -> GraphOfGroups:
    index = {g.name: i for i, g in enumerate(doc.groups)}
    verts = [construct_catalog_group(g.tag) for g in doc.groups]
    chars = [dict() for _ in verts]
    edge_w = {}
    for c in doc.chars:
        if c.generator is not None:
            chars[index[c.target]][c.generator] = c.value
        elif c.target in {e.name for e in doc.edges}:
            edge_w[c.target] = c.value
        else:
            v = next(i for i, G in enumerate(verts) if c.target in G.generator_names)
            chars[v][c.target] = c.value
    edges = []
    for e in doc.edges:
        E = construct_catalog_group(e.tag)
        o, t = index[e.o], index[e.t]
        imgs = []
        for v, pairs in ((o, e.map_o), (t, e.map_t)):
            words = _edge_keys(E, pairs, e.loc.line)
            imgs.append(tuple(verts[v].evaluate(_parse_vertex_word(w, verts[v], e.loc.line, 1)) for w in words))
        edges.append(Edge(e.name, o, t, E, imgs[0], imgs[1], edge_w.get(e.name, 1)))
    g = GraphOfGroups(tuple(verts), tuple(edges), tuple(x.name for x in doc.groups),
                      tuple(tuple(sorted(c.items())) for c in chars))
    # surface embedding and character problems with their source line
    from .graphs import _check
    try:
        _check(g)
    except GraphError as exc:
        line = 1
        name = getattr(exc, "args", [""])[0]
        for e in doc.edges:
            if f"edge {e.name} " in str(name) or str(name).endswith(f"edge {e.name}"):
                line = e.loc.line
        raise LocatedGraphError(exc, line) from exc
    return g


def load_graph(text: str) -> GraphOfGroups:
    return to_graph(parse_gog(text))


# ---------------------------------------------------------------------------
# rendering


def _canon_word(text: str, G) -> str:
    w = _parse_vertex_word(text, G, 0, 0)
    return word_to_string(w) if w else "1"


def render_gog(doc: GogDocument) -> str:
    """Canonical text: declaration order kept, tags and words normalized, ASCII arrows."""
    lines = [f"group {g.name} = {g.tag}" for g in doc.groups]
    for e in doc.edges:
        E = construct_catalog_group(e.tag)
        parts = []
        for v, pairs in ((e.o, e.map_o), (e.t, e.map_t)):
            G = construct_catalog_group(doc.group(v).tag)
            words = _edge_keys(E, pairs, e.loc.line)
            inner = ", ".join(f"{k} |-> {_canon_word(w, G)}" for k, w in zip(E.generator_names, words))
            parts.append(f"{v}({inner})")
        lines.append(f"edge {e.name} : {e.tag} -> {parts[0]}, {parts[1]}")
    for c in doc.chars:
        head = f"{c.target}.{c.generator}" if c.generator else c.target
        lines.append(f"char {head} = {c.value:+d}")
    return "\n".join(lines) + "\n"


def canonical(doc: GogDocument) -> GogDocument:
    return parse_gog(render_gog(doc))


def graph_to_gog(g: GraphOfGroups) -> str:
    """Render a graph (for example an enumeration result) as ``.gog`` text."""
    lines = []
    for n, G in zip(g.names, g.vertices):
        if G.catalog_tag is None:
            raise GraphError(f"vertex {n} is not a catalog group")
        lines.append(f"group {n} = {G.catalog_tag}")
    for e in g.edges:
        E = e.group
        parts = []
        for v, imgs in ((e.o, e.emb_o), (e.t, e.emb_t)):
            G = g.vertices[v]
            inner = ", ".join(f"{k} |-> {word_to_string(G.word_for(x)) or '1'}"
                              for k, x in zip(E.generator_names, imgs))
            parts.append(f"{g.names[v]}({inner})")
        lines.append(f"edge {e.name} : {E.catalog_tag} -> {parts[0]}, {parts[1]}")
        if e.w != 1:
            lines.append(f"char {e.name} = {e.w:+d}")
    for n, ch in zip(g.names, g.chars):
        for x, val in ch:
            lines.append(f"char {n}.{x} = {val:+d}")
    return "\n".join(lines) + "\n"
