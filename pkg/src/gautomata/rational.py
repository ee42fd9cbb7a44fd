"""Rational expressions over a graph alphabet and the two Kleene directions.

Grammar (loosest binding first)::

    expr   := term ('+' term)*
    term   := factor ('.' factor)*
    factor := atom '^+'*
    atom   := <edge> | 'id:'<vertex> | '0' | '(' expr ')'

Edge names may themselves contain ``.`` and ``+``, so the binary operators
must stand alone as whitespace-separated tokens (``P . b^+``).  ``0`` is
reserved for the empty set.  There is no Kleene star; ``id:v + e^+`` plays
its role at a single type.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass

from .automaton import Automaton, Transition, trim
from .errors import AlphabetError, ParseError


class RatExpr:
    """Base class of expression nodes."""

    def __str__(self):
        return print_expr(self)


@dataclass(frozen=True)
class Empty(RatExpr):
    pass


@dataclass(frozen=True)
class Atom(RatExpr):
    edge: str


@dataclass(frozen=True)
class Id(RatExpr):
    vertex: str


@dataclass(frozen=True)
class Union(RatExpr):
    left: RatExpr
    right: RatExpr


@dataclass(frozen=True)
class Concat(RatExpr):
    left: RatExpr
    right: RatExpr


@dataclass(frozen=True)
class Plus(RatExpr):
    child: RatExpr


EMPTY = Empty()


# Simplifying constructors.  The parser never uses these, so parsing keeps
# the exact tree the user wrote.

def union(left, right):
    if isinstance(left, Empty):
        return right
    if isinstance(right, Empty):
        return left
    return Union(left, right)


def concat(left, right):
    if isinstance(left, Empty) or isinstance(right, Empty):
        return EMPTY
    return Concat(left, right)


def plus(child):
    return EMPTY if isinstance(child, Empty) else Plus(child)


def union_all(parts):
    result = EMPTY
    for p in parts:
        result = union(result, p)
    return result


def concat_all(parts):
    """Left-nested concatenation; ``None`` entries stand for a typed unit and are skipped."""
    result = None
    for p in parts:
        if p is None:
            continue
        result = p if result is None else concat(result, p)
    return result


# -- parsing and printing -----------------------------------------------------

_TOKEN = re.compile(r"\s+|\(|\)|[^\s()]+")
_PLUS_SUFFIX = "^+"


def _tokenize(text):
    tokens = []
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if tok.isspace():
            continue
        if tok in ("(", ")", "+", "."):
            tokens.append(tok)
            continue
        suffixes = 0
        while tok.endswith(_PLUS_SUFFIX):
            tok = tok[: -len(_PLUS_SUFFIX)]
            suffixes += 1
        if tok:
            if "^" in tok:
                raise ParseError(f"unexpected '^' in {m.group()!r}")
            tokens.append(tok)
        tokens.extend([_PLUS_SUFFIX] * suffixes)
    return tokens


class _Parser:
    def __init__(self, alphabet, text):
        self.alphabet = alphabet
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() == "+":
            self.take()
            node = Union(node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() == ".":
            self.take()
            node = Concat(node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        while self.peek() == _PLUS_SUFFIX:
            self.take()
            node = Plus(node)
        return node

    def atom(self):
        tok = self.take()
        if tok == "(":
            node = self.expr()
            if self.take() != ")":
                raise ParseError("expected ')'")
            return node
        if tok in (")", "+", ".", _PLUS_SUFFIX):
            raise ParseError(f"unexpected {tok!r}")
        if tok == "0":
            return EMPTY
        if tok.startswith("id:"):
            vertex = tok[3:]
            if not self.alphabet.has_vertex(vertex):
                raise AlphabetError(f"unknown vertex {vertex!r}")
            return Id(vertex)
        if not self.alphabet.has_edge(tok):
            raise AlphabetError(f"unknown edge {tok!r}")
        return Atom(tok)


def parse_expr(alphabet, text):
    """Parse ``text`` into a tree, checking names against ``alphabet``."""
    p = _Parser(alphabet, text)
    node = p.expr()
    if p.peek() is not None:
        raise ParseError(f"unexpected {p.peek()!r} after expression")
    return node


_PREC = {Union: 1, Concat: 2, Plus: 3}


def _prec(e):
    return _PREC.get(type(e), 4)


def print_expr(e):
    """Text with the fewest parentheses that parses back to the same tree."""
    if isinstance(e, Empty):
        return "0"
    if isinstance(e, Atom):
        return e.edge
    if isinstance(e, Id):
        return "id:" + e.vertex
    if isinstance(e, Plus):
        inner = print_expr(e.child)
        return (f"({inner})" if _prec(e.child) < 3 else inner) + _PLUS_SUFFIX
    op = " + " if isinstance(e, Union) else " . "
    mine = _prec(e)
    left = print_expr(e.left)
    right = print_expr(e.right)
    # Both operators parse left-associatively.
    if _prec(e.left) < mine:
        left = f"({left})"
    if _prec(e.right) <= mine:
        right = f"({right})"
    return left + op + right


def walk(e):
    """All nodes of ``e`` in prefix order."""
    yield e
    if isinstance(e, (Union, Concat)):
        yield from walk(e.left)
        yield from walk(e.right)
    elif isinstance(e, Plus):
        yield from walk(e.child)


# -- expression -> automaton --------------------------------------------------

def _atom_automaton(alphabet, name):
    e = alphabet.edge(name)
    # Two states even for a loop edge, so the language is exactly {a}.
    return Automaton(alphabet, {"i": e.source, "f": e.target}, {"i"}, {"f"},
                     {Transition("i", name, "f")})


def compile(alphabet, e):
    """Build a silent-free automaton recognizing the set denoted by ``e``."""
    from . import ops

    if isinstance(e, Empty):
        return Automaton.empty(alphabet)
    if isinstance(e, Atom):
        return _atom_automaton(alphabet, e.edge)
    if isinstance(e, Id):
        if not alphabet.has_vertex(e.vertex):
            raise AlphabetError(f"unknown vertex {e.vertex!r}")
        return Automaton(alphabet, {"q": e.vertex}, {"q"}, {"q"})
    if isinstance(e, Union):
        result = ops.union(compile(alphabet, e.left), compile(alphabet, e.right))
    elif isinstance(e, Concat):
        result = ops.concat(compile(alphabet, e.left), compile(alphabet, e.right))
    elif isinstance(e, Plus):
        result = ops.plus(compile(alphabet, e.child))
    else:
        raise TypeError(f"not an expression: {e!r}")
    return trim(result)


def eliminate_silent(a):
    """Forward-closure removal of silent transitions.

    A state inherits the visible transitions of every state in its silent
    closure, and becomes accepting when the closure meets an accepting
    state.  Closures never cross types, so typing is preserved.
    """
    if not a.has_silent():
        return a
    silent = defaultdict(set)
    for t in a.transitions:
        if t.silent:
            silent[t.source].add(t.target)

    def closure(q):
        seen, todo = {q}, [q]
        while todo:
            for r in silent[todo.pop()]:
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return seen

    visible = defaultdict(list)
    for t in a.transitions:
        if not t.silent:
            visible[t.source].append(t)

    transitions, accepting = set(), set(a.accepting)
    for q in a.states:
        reach = closure(q)
        if reach & a.accepting:
            accepting.add(q)
        for r in reach:
            for t in visible[r]:
                transitions.add(Transition(q, t.label, t.target))
    return a.replace(accepting=accepting, transitions=transitions)


# -- automaton -> expression --------------------------------------------------

def _loop_factor(vertex, loop):
    """``id:v + loop^+``, or ``None`` (a typed unit) when there is no loop."""
    return None if loop is None else Union(Id(vertex), plus(loop))


def _single_pair(a, start, end):
    """Expression for the paths of ``a`` from ``start`` to ``end``."""
    keep = _between(a, start, end)
    if not keep:
        return EMPTY
    labels = {}
    for t in sorted(a.transitions):
        if t.source in keep and t.target in keep:
            key = (t.source, t.target)
            labels[key] = union(labels[key], Atom(t.label)) if key in labels else Atom(t.label)
    mu = a.states

    alive = set(keep)
    while len(alive) > len({start, end}):
        candidates = sorted(alive - {start, end})

        def cost(q):
            ins = sum(1 for (p, r) in labels if r == q and p != q)
            outs = sum(1 for (p, r) in labels if p == q and r != q)
            return (ins * outs, q)

        q = min(candidates, key=cost)
        factor = _loop_factor(mu[q], labels.pop((q, q), None))
        preds = [(p, lab) for (p, r), lab in sorted(labels.items(), key=lambda kv: kv[0]) if r == q]
        succs = [(r, lab) for (p, r), lab in sorted(labels.items(), key=lambda kv: kv[0]) if p == q]
        for p, _ in preds:
            del labels[p, q]
        for r, _ in succs:
            del labels[q, r]
        for p, into in preds:
            for r, outof in succs:
                bridge = concat_all([into, factor, outof])
                labels[p, r] = union(labels[p, r], bridge) if (p, r) in labels else bridge
        alive.discard(q)

    if start == end:
        loop = labels.get((start, start))
        return Union(Id(mu[start]), plus(loop)) if loop is not None else Id(mu[start])

    before = _loop_factor(mu[start], labels.get((start, start)))
    after = _loop_factor(mu[end], labels.get((end, end)))
    forward = labels[start, end]
    back = labels.get((end, start))
    middle = None
    if back is not None:
        cycle = concat_all([forward, after, back, before])
        middle = Union(Id(mu[start]), plus(cycle))
    return concat_all([before, middle, forward, after])


def _between(a, start, end):
    """States lying on some path from ``start`` to ``end``."""
    from .automaton import reachable

    fwd = reachable(a, {start})
    if end not in fwd:
        return set()
    rev = Automaton(a.alphabet, a.states, {end}, set(),
                    {Transition(t.target, t.label, t.source) for t in a.transitions})
    return fwd & reachable(rev)


def to_rational(a):
    """State elimination: an expression denoting ``L(a)``.

    One copy per (initial, accepting) pair; in each copy states other than
    the two endpoints are removed cheapest-first (in-degree times
    out-degree, then name), after which the two-state closed form applies.
    """
    a.require_silent_free("state elimination")
    a = trim(a)
    parts = [
        _single_pair(a, i, f)
        for i in sorted(a.initial)
        for f in sorted(a.accepting)
    ]
    return union_all(parts)
