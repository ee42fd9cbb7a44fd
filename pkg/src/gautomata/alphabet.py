"""Graph alphabets, typed words and the ``.galph`` text format.

A graph alphabet is a directed graph whose edges are the letters.  A word
over it is a walk, kept together with its endpoint vertices so that the
empty walk at ``v`` (the identity ``id_v``) is still typed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import NamedTuple

from .errors import AlphabetError, ParseError, TypeMismatchError

NAME_RE = re.compile(r"[A-Za-z0-9_.@⟨⟩,+-]+\Z")
EVENT_RE = re.compile(r"[A-Za-z0-9_]+\Z")

GALPH_HEADER = "galph 1"


class Edge(NamedTuple):
    name: str
    source: str
    target: str


class Morphism(NamedTuple):
    """A typed word ``(source, word, target)``.

    ``word`` is a tuple of edge names; an empty word is an identity and
    then ``source == target``.  Well-formedness against an alphabet is
    checked by :meth:`GraphAlphabet.check`, not here.
    """

    source: str
    word: tuple
    target: str

    @property
    def length(self):
        return len(self.word)

    def is_identity(self):
        return not self.word

    def __str__(self):
        return format_word(self)


def sort_key(m):
    """Canonical ordering: source, length, word, target."""
    return (m.source, len(m.word), m.word, m.target)


def compose(x, y):
    """Concatenate ``x`` then ``y``; the target of ``x`` must be the source of ``y``."""
    if x.target != y.source:
        raise TypeMismatchError(
            f"cannot concatenate {format_word(x)!r} with {format_word(y)!r}: "
            f"{x.target!r} != {y.source!r}"
        )
    return Morphism(x.source, x.word + y.word, y.target)


def _check_name(name, sort):
    if not isinstance(name, str) or not NAME_RE.match(name):
        raise AlphabetError(f"invalid {sort} name {name!r}")


@dataclass(frozen=True)
class GraphAlphabet:
    """Finite graph alphabet ``(V, Sigma, d0, d1)``.

    Construct with any iterables; edges are ``(name, source, target)``
    triples.  Instances are immutable and hashable.
    """

    vertices: frozenset = frozenset()
    edges: frozenset = frozenset()
    _by_name: dict = field(init=False, repr=False, compare=False)
    _out: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertex_list = list(self.vertices)
        for v in vertex_list:
            _check_name(v, "vertex")
        vertices = frozenset(vertex_list)
        if len(vertices) != len(vertex_list):
            raise AlphabetError("duplicate vertex name")

        by_name = {}
        out = {v: [] for v in vertices}
        for raw in self.edges:
            e = Edge(*raw)
            _check_name(e.name, "edge")
            if e.name in by_name:
                raise AlphabetError(f"duplicate edge name {e.name!r}")
            for end in (e.source, e.target):
                if end not in vertices:
                    raise AlphabetError(f"edge {e.name!r}: undeclared vertex {end!r}")
            by_name[e.name] = e
            out[e.source].append(e)

        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(by_name.values()))
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(
            self, "_out", {v: tuple(sorted(es)) for v, es in out.items()}
        )

    def __repr__(self):
        return f"GraphAlphabet(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def vertex_list(self):
        return sorted(self.vertices)

    def edge_list(self):
        return sorted(self.edges)

    def has_vertex(self, v):
        return v in self.vertices

    def has_edge(self, name):
        return name in self._by_name

    def edge(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise AlphabetError(f"unknown edge {name!r}") from None

    def d0(self, name):
        return self.edge(name).source

    def d1(self, name):
        return self.edge(name).target

    def out_edges(self, v):
        """Edges leaving ``v``, sorted by name."""
        return self._out.get(v, ())

    def check(self, m):
        """Raise unless ``m`` is a well-formed morphism over this alphabet."""
        for v in (m.source, m.target):
            if v not in self.vertices:
                raise AlphabetError(f"unknown vertex {v!r}")
        at = m.source
        for name in m.word:
            e = self.edge(name)
            if e.source != at:
                raise TypeMismatchError(
                    f"edge {name!r} starts at {e.source!r}, walk is at {at!r}"
                )
            at = e.target
        if at != m.target:
            raise TypeMismatchError(f"walk ends at {at!r}, not at {m.target!r}")

    def letter(self, name):
        """The one-edge morphism ``(d0(a), a, d1(a))``."""
        e = self.edge(name)
        return Morphism(e.source, (name,), e.target)

    def morphism(self, source, word=(), target=None):
        """Build and check a morphism; ``target`` defaults to the walk's end."""
        word = tuple(word)
        if target is None:
            target = self.d1(word[-1]) if word else source
        m = Morphism(source, word, target)
        self.check(m)
        return m


def identity(alphabet, v):
    """The identity morphism ``id_v``."""
    if not alphabet.has_vertex(v):
        raise AlphabetError(f"unknown vertex {v!r}")
    return Morphism(v, (), v)


# -- built-in alphabets -------------------------------------------------------

_BUILTINS = {
    "lock": (
        ["unsafe", "safe"],
        [("a", "unsafe", "unsafe"), ("P", "unsafe", "safe"),
         ("V", "safe", "unsafe"), ("b", "safe", "safe")],
    ),
    "types": (
        ["int", "uint", "float"],
        [("abs", "int", "uint"), ("neg", "uint", "int"),
         ("sqrt", "uint", "float"), ("round", "float", "int")],
    ),
}


def gen_builtin(name):
    """Return the ``lock`` or ``types`` alphabet."""
    try:
        vertices, edges = _BUILTINS[name]
    except KeyError:
        raise AlphabetError(
            f"unknown builtin alphabet {name!r} (choose from {sorted(_BUILTINS)})"
        ) from None
    return GraphAlphabet(vertices, edges)


def st_vertex(seq):
    """Vertex name of a sequence of running events, e.g. ``⟨b,a⟩``."""
    return "⟨" + ",".join(seq) + "⟩"


def starter_name(seq, position, event):
    return f"S{position}.{event}@{','.join(seq)}"


def terminator_name(seq, position):
    return f"T{position}.{seq[position]}@{','.join(seq)}"


def gen_st(events, depth):
    """Starters and terminators over ``events``, truncated at ``depth``.

    Vertices are sequences of running events (position 0 first) of length
    at most ``depth``.  A starter inserts one event at one position, a
    terminator removes the event at one position.  Edge names record kind,
    position, event and source sequence, e.g. ``S1.a@b`` starts ``a`` below
    a running ``b``.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    events = sorted(set(events))
    for e in events:
        if not EVENT_RE.match(e):
            raise AlphabetError(f"invalid event label {e!r}")

    seqs = [()]
    for k in range(1, depth + 1):
        seqs.extend(product(events, repeat=k))

    edges = []
    for w in seqs:
        if len(w) < depth:
            for p in range(len(w) + 1):
                for e in events:
                    edges.append((starter_name(w, p, e), st_vertex(w),
                                  st_vertex(w[:p] + (e,) + w[p:])))
        for p in range(len(w)):
            edges.append((terminator_name(w, p), st_vertex(w),
                          st_vertex(w[:p] + w[p + 1:])))
    return GraphAlphabet([st_vertex(w) for w in seqs], edges)


# -- text formats -------------------------------------------------------------

def _strip_comment(line):
    return line.split("#", 1)[0].strip()


def parse_alphabet(text):
    """Parse a ``.galph`` document."""
    vertices, edges = [], []
    seen_vertices, seen_edges = set(), set()
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        fields = line.split()
        if not header_seen:
            if fields != GALPH_HEADER.split():
                raise ParseError(f"expected header {GALPH_HEADER!r}", lineno)
            header_seen = True
            continue
        kind = fields[0]
        if kind == "vertex" and len(fields) == 2:
            name = fields[1]
            if not NAME_RE.match(name):
                raise ParseError(f"invalid vertex name {name!r}", lineno)
            if name in seen_vertices:
                raise ParseError(f"duplicate vertex {name!r}", lineno)
            seen_vertices.add(name)
            vertices.append(name)
        elif kind == "edge" and len(fields) == 4:
            name, src, dst = fields[1:]
            if not NAME_RE.match(name):
                raise ParseError(f"invalid edge name {name!r}", lineno)
            if name in seen_edges:
                raise ParseError(f"duplicate edge {name!r}", lineno)
            for v in (src, dst):
                if v not in seen_vertices:
                    raise ParseError(f"undeclared vertex {v!r}", lineno)
            seen_edges.add(name)
            edges.append((name, src, dst))
        else:
            raise ParseError(f"syntax error: {line!r}", lineno)
    if not header_seen:
        raise ParseError(f"missing header {GALPH_HEADER!r}", 1)
    return GraphAlphabet(vertices, edges)


def alphabet_lines(alphabet):
    for v in alphabet.vertex_list():
        yield f"vertex {v}"
    for e in alphabet.edge_list():
        yield f"edge {e.name} {e.source} {e.target}"


def serialize_alphabet(alphabet):
    """Canonical ``.galph`` text: header, sorted vertices, sorted edges."""
    return "\n".join([GALPH_HEADER, *alphabet_lines(alphabet)]) + "\n"


def format_word(m):
    """``source : e1 e2 ... : target``; identities have an empty middle."""
    middle = " ".join(m.word)
    return f"{m.source} : {middle} : {m.target}" if middle else f"{m.source} : : {m.target}"


BULLET = "•"
EMPTY_SEQ = "∅"


def _resolve_bullet(alphabet, vertex, token):
    """Find the starter (``a•``) or terminator (``•a``) of an ST alphabet meant by ``token``."""
    if token.endswith(BULLET) and not token.startswith(BULLET):
        kind, event = "S", token[:-1]
    elif token.startswith(BULLET) and not token.endswith(BULLET):
        kind, event = "T", token[1:]
    else:
        raise ParseError(f"cannot read letter {token!r}")
    found = [e for e in alphabet.out_edges(vertex)
             if e.name.startswith(kind) and e.name.split("@")[0].split(".", 1)[-1] == event]
    if len(found) != 1:
        what = "no" if not found else "several"
        raise AlphabetError(f"{what} edges for {token!r} at {vertex}; use the full edge name")
    return found[0]


def parse_word(alphabet, text):
    """Parse ``source : e1 e2 ... : target`` and check it against ``alphabet``.

    Over ST alphabets ``∅`` may stand for ``⟨⟩`` and single-event letters may
    be written ``a•`` (start a) or ``•a`` (terminate a) when that leaves
    only one candidate edge at the current vertex.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError(f"word must look like 'v : e1 e2 : w', got {text!r}")
    source, middle, target = (p.strip() for p in parts)
    if not source or not target or " " in source or " " in target:
        raise ParseError(f"malformed word endpoints in {text!r}")
    source, target = (
        st_vertex(()) if v == EMPTY_SEQ and not alphabet.has_vertex(v) else v
        for v in (source, target)
    )
    word = []
    at = source
    for token in middle.split():
        if BULLET in token and not alphabet.has_edge(token) and alphabet.has_vertex(at):
            edge = _resolve_bullet(alphabet, at, token)
        else:
            edge = alphabet.edge(token) if alphabet.has_edge(token) else None
        if edge is None:
            word.append(token)
            at = None
        else:
            word.append(edge.name)
            at = edge.target
    m = Morphism(source, tuple(word), target)
    alphabet.check(m)
    return m


def parse_alphabet_ref(ref, base_dir=None):
    """Resolve an alphabet reference: a file path or ``builtin:<spec>``.

    Builtin specs are ``lock``, ``types`` and ``st:<e1,e2,...>:<depth>``.
    """
    if ref.startswith("builtin:"):
        spec = ref[len("builtin:"):]
        if spec.startswith("st:"):
            try:
                _, events, depth = spec.split(":")
                return gen_st(events.split(","), int(depth))
            except ValueError:
                raise ParseError(f"bad st builtin {ref!r}; use builtin:st:a,b:2") from None
        return gen_builtin(spec)
    path = Path(ref)
    if base_dir is not None and not path.is_absolute():
        path = Path(base_dir) / path
    return parse_alphabet(path.read_text(encoding="utf-8"))
