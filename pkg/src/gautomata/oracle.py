"""Brute-force bounded semantics, the referee for every construction.

Everything here enumerates explicitly and is exponential in the length
bound.  The bound is capped at ``MAX_BOUND`` and every enumeration stops
with :class:`OracleLimitError` once it holds more than ``MAX_ELEMENTS``
items.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import GraphAlphabet, Morphism, format_word, sort_key
from .errors import AlphabetError, OracleLimitError
from .rational import Atom, Concat, Empty, Id, Plus, Union

MAX_BOUND = 8
MAX_ELEMENTS = 10**6


def _check_bound(maxlen):
    if not 0 <= maxlen <= MAX_BOUND:
        raise OracleLimitError(f"length bound must lie in [0, {MAX_BOUND}], got {maxlen}")


def _guard(n):
    if n > MAX_ELEMENTS:
        raise OracleLimitError(f"enumeration exceeded {MAX_ELEMENTS} elements")


@dataclass(frozen=True)
class LanguageSet:
    """All members of a language with at most ``bound`` edges."""

    alphabet: GraphAlphabet
    bound: int
    members: frozenset

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, m):
        return m in self.members

    def sorted(self):
        return sorted(self.members, key=sort_key)

    def sources(self):
        return frozenset(m.source for m in self.members)

    def targets(self):
        return frozenset(m.target for m in self.members)

    def _same_frame(self, other):
        if self.alphabet != other.alphabet:
            raise AlphabetError("languages over different alphabets")
        if self.bound != other.bound:
            raise ValueError(f"languages bounded at {self.bound} and {other.bound}")

    def _with(self, members):
        return LanguageSet(self.alphabet, self.bound, frozenset(members))

    def __or__(self, other):
        self._same_frame(other)
        return self._with(self.members | other.members)

    def __and__(self, other):
        self._same_frame(other)
        return self._with(self.members & other.members)

    def __sub__(self, other):
        self._same_frame(other)
        return self._with(self.members - other.members)

    def concat(self, other):
        """Typed concatenation, keeping results within the bound."""
        self._same_frame(other)
        return self._with(_concat(self.members, other.members, self.bound))

    def plus(self):
        return self._with(_plus(self.members, self.bound))

    def restrict(self, bound):
        """The members of length at most ``bound``, as a set with that bound."""
        return LanguageSet(self.alphabet, bound,
                           frozenset(m for m in self.members if len(m.word) <= bound))


def _by_source(ms):
    """Index morphisms by source vertex, then by length."""
    index = {}
    for m in ms:
        index.setdefault(m.source, {}).setdefault(len(m.word), []).append(m)
    return index


def _concat(xs, ys, bound):
    index = _by_source(ys)
    out = set()
    for x in xs:
        by_length = index.get(x.target, {})
        for k in range(bound - len(x.word) + 1):
            for y in by_length.get(k, ()):
                out.add(Morphism(x.source, x.word + y.word, y.target))
        _guard(len(out))
    return out


def _plus(xs, bound):
    result = set(xs)
    frontier = set(xs)
    while frontier:
        frontier = _concat(frontier, xs, bound) - result
        result |= frontier
        _guard(len(result))
    return result


def enum_morphisms(alphabet, maxlen):
    """Every identity and every walk with at most ``maxlen`` edges."""
    _check_bound(maxlen)
    layer = [Morphism(v, (), v) for v in alphabet.vertices]
    members = set(layer)
    for _ in range(maxlen):
        layer = [Morphism(m.source, m.word + (e.name,), e.target)
                 for m in layer for e in alphabet.out_edges(m.target)]
        members.update(layer)
        _guard(len(members))
    return LanguageSet(alphabet, maxlen, frozenset(members))


def bounded_language(a, maxlen):
    """Labels of accepting paths with at most ``maxlen`` transitions.

    Walks paths forward layer by layer as ``(first state, current state,
    word)`` triples, which is unrelated to the subset simulation used by
    ``automaton.accepts``.
    """
    _check_bound(maxlen)
    a.require_silent_free("bounded enumeration")
    succ = {}
    for t in a.transitions:
        succ.setdefault(t.source, []).append(t)
    layer = {(a.states[q], q, ()) for q in a.initial}
    members = set()
    for step in range(maxlen + 1):
        for origin, q, word in layer:
            if q in a.accepting:
                members.add(Morphism(origin, word, a.states[q]))
        if step == maxlen:
            break
        layer = {(origin, t.target, word + (t.label,))
                 for origin, q, word in layer for t in succ.get(q, ())}
        _guard(len(layer))
    return LanguageSet(a.alphabet, maxlen, frozenset(members))


def bounded_rat(alphabet, e, maxlen):
    """Set semantics of an expression, cut off at ``maxlen`` edges."""
    _check_bound(maxlen)

    def sem(node):
        if isinstance(node, Empty):
            return set()
        if isinstance(node, Atom):
            return {alphabet.letter(node.edge)} if maxlen >= 1 else set()
        if isinstance(node, Id):
            if not alphabet.has_vertex(node.vertex):
                raise AlphabetError(f"unknown vertex {node.vertex!r}")
            return {Morphism(node.vertex, (), node.vertex)}
        if isinstance(node, Union):
            return sem(node.left) | sem(node.right)
        if isinstance(node, Concat):
            return _concat(sem(node.left), sem(node.right), maxlen)
        if isinstance(node, Plus):
            return _plus(sem(node.child), maxlen)
        raise TypeError(f"not an expression: {node!r}")

    return LanguageSet(alphabet, maxlen, frozenset(sem(e)))


@dataclass(frozen=True)
class Comparison:
    """Outcome of :func:`bounded_equal`; truthy when the sets agree."""

    only_left: tuple
    only_right: tuple

    def __bool__(self):
        return not self.only_left and not self.only_right

    @property
    def equal(self):
        return bool(self)

    def report(self):
        if self:
            return "languages agree"
        lines = []
        for side, items in (("only in first", self.only_left),
                            ("only in second", self.only_right)):
            for m in items:
                lines.append(f"{side}: {format_word(m)}")
        return "\n".join(lines)


def bounded_equal(l1, l2, limit=10):
    """Compare two bounded languages; keeps up to ``limit`` witnesses per side."""
    l1._same_frame(l2)
    left = sorted(l1.members - l2.members, key=sort_key)[:limit]
    right = sorted(l2.members - l1.members, key=sort_key)[:limit]
    return Comparison(tuple(left), tuple(right))
