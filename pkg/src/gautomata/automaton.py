"""Automata over graph alphabets.

States carry a vertex label (their type) and transitions carry an edge of
the alphabet, so a transition labeled ``a`` must leave a state of type
``d0(a)`` and enter one of type ``d1(a)``.  Silent transitions carry a
vertex instead and never change the type; they only appear inside the
Kleene constructions and are removed by ``rational.eliminate_silent``.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Mapping, NamedTuple

from .alphabet import GraphAlphabet, Morphism
from .errors import AlphabetError, PreconditionError


class Transition(NamedTuple):
    source: str
    label: str
    target: str
    silent: bool = False


@dataclass(frozen=True)
class Automaton:
    """``(Q, I, F, E, s, t, mu, lambda)`` over a graph alphabet.

    ``states`` maps each state name to its vertex label.  Construction
    performs no typing checks so that broken automata can be represented
    and reported by :func:`validate`.
    """

    alphabet: GraphAlphabet
    states: Mapping[str, str]
    initial: frozenset = frozenset()
    accepting: frozenset = frozenset()
    transitions: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", MappingProxyType(dict(self.states)))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(
            self, "transitions", frozenset(Transition(*t) for t in self.transitions)
        )

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.states.items()), self.initial,
                     self.accepting, self.transitions))

    def __repr__(self):
        return (f"Automaton({len(self.states)} states, {len(self.transitions)} "
                f"transitions, |I|={len(self.initial)}, |F|={len(self.accepting)})")

    @classmethod
    def empty(cls, alphabet):
        return cls(alphabet, {})

    def mu(self, q):
        return self.states[q]

    def state_list(self):
        return sorted(self.states)

    def transition_list(self):
        return sorted(self.transitions)

    @cached_property
    def out(self):
        """State -> transitions leaving it, sorted."""
        table = defaultdict(list)
        for t in sorted(self.transitions):
            table[t.source].append(t)
        return {q: tuple(ts) for q, ts in table.items()}

    @cached_property
    def delta(self):
        """``(state, edge) -> set of targets`` for non-silent transitions."""
        table = defaultdict(set)
        for t in self.transitions:
            if not t.silent:
                table[t.source, t.label].add(t.target)
        return dict(table)

    def has_silent(self):
        return any(t.silent for t in self.transitions)

    def require_silent_free(self, what="this operation"):
        if self.has_silent():
            raise PreconditionError(
                f"{what} needs an automaton without silent transitions; "
                "eliminate them first"
            )

    def successors(self, q):
        return {t.target for t in self.out.get(q, ())}

    def replace(self, **changes):
        fields = dict(alphabet=self.alphabet, states=self.states, initial=self.initial,
                      accepting=self.accepting, transitions=self.transitions)
        fields.update(changes)
        return Automaton(**fields)

    def renamed(self, rename):
        """Rename states through the callable ``rename`` (must be injective)."""
        return Automaton(
            self.alphabet,
            {rename(q): v for q, v in self.states.items()},
            {rename(q) for q in self.initial},
            {rename(q) for q in self.accepting},
            {Transition(rename(t.source), t.label, rename(t.target), t.silent)
             for t in self.transitions},
        )

    def prefixed(self, prefix):
        return self.renamed(lambda q: prefix + q)

    def restrict(self, keep):
        """Sub-automaton induced by the state set ``keep``."""
        keep = set(keep)
        return Automaton(
            self.alphabet,
            {q: v for q, v in self.states.items() if q in keep},
            self.initial & keep,
            self.accepting & keep,
            {t for t in self.transitions if t.source in keep and t.target in keep},
        )


def require_same_alphabet(a1, a2):
    if a1.alphabet != a2.alphabet:
        raise AlphabetError("automata are defined over different alphabets")
    return a1.alphabet


def validate(a):
    """Return every typing violation and dangling reference; ``[]`` means valid."""
    problems = []
    alpha = a.alphabet
    for q in sorted(a.initial - a.states.keys()):
        problems.append(f"initial state {q!r} is not declared")
    for q in sorted(a.accepting - a.states.keys()):
        problems.append(f"accepting state {q!r} is not declared")
    for q in a.state_list():
        if not alpha.has_vertex(a.states[q]):
            problems.append(f"state {q!r} has unknown vertex {a.states[q]!r}")

    for t in a.transition_list():
        where = f"transition {t.source} -{'@' if t.silent else ''}{t.label}-> {t.target}"
        missing = [q for q in (t.source, t.target) if q not in a.states]
        if missing:
            problems.append(f"{where}: undeclared state {missing[0]!r}")
            continue
        if t.silent:
            if not alpha.has_vertex(t.label):
                problems.append(f"{where}: unknown vertex {t.label!r}")
                continue
            lo = hi = t.label
        else:
            if not alpha.has_edge(t.label):
                problems.append(f"{where}: unknown edge {t.label!r}")
                continue
            lo, hi = alpha.d0(t.label), alpha.d1(t.label)
        mu_s, mu_t = a.states[t.source], a.states[t.target]
        if (mu_s, mu_t) != (lo, hi):
            problems.append(
                f"{where}: typed {mu_s}->{mu_t} but label requires {lo}->{hi}"
            )
    return problems


def accepts(a, x: Morphism) -> bool:
    """Membership by subset simulation along the edge word of ``x``."""
    a.require_silent_free("membership")
    a.alphabet.check(x)
    current = {q for q in a.initial if a.states[q] == x.source}
    for name in x.word:
        current = {r for q in current for r in a.delta.get((q, name), ())}
        if not current:
            return False
    return any(q in a.accepting and a.states[q] == x.target for q in current)


def is_deterministic(a) -> bool:
    a.require_silent_free("determinism check")
    seen = set()
    for q in a.initial:
        if a.states[q] in seen:
            return False
        seen.add(a.states[q])
    return all(len(targets) <= 1 for targets in a.delta.values())


def is_complete(a) -> bool:
    a.require_silent_free("completeness check")
    if {a.states[q] for q in a.initial} != a.alphabet.vertices:
        return False
    return all(
        (q, e.name) in a.delta
        for q, v in a.states.items()
        for e in a.alphabet.out_edges(v)
    )


def reachable(a, start=None):
    """States reachable from ``start`` (default: the initial states)."""
    seen = set(a.initial if start is None else start)
    todo = deque(seen)
    while todo:
        q = todo.popleft()
        for r in a.successors(q):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def coaccessible(a):
    """States from which some accepting state is reachable."""
    back = defaultdict(set)
    for t in a.transitions:
        back[t.target].add(t.source)
    seen = set(a.accepting)
    todo = deque(seen)
    while todo:
        q = todo.popleft()
        for p in back[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def trim(a):
    """Keep only states that are both reachable and co-accessible."""
    return a.restrict(reachable(a) & coaccessible(a))


def is_trim(a):
    return len(trim(a).states) == len(a.states)


def endpoints(a):
    """``(d0(L(A)), d1(L(A)))`` read off the automaton."""
    useful_sources = coaccessible(a)
    useful_targets = reachable(a)
    return (
        frozenset(a.states[q] for q in a.initial if q in useful_sources),
        frozenset(a.states[q] for q in a.accepting if q in useful_targets),
    )


def universal(alphabet):
    """The alphabet graph itself, every state initial and accepting."""
    states = {v: v for v in alphabet.vertices}
    return Automaton(
        alphabet, states, states.keys(), states.keys(),
        {Transition(e.source, e.name, e.target) for e in alphabet.edges},
    )


@dataclass(frozen=True)
class UntypedNFA:
    """Ordinary NFA over the edge names, vertex labels forgotten."""

    states: frozenset
    initial: frozenset
    accepting: frozenset
    transitions: frozenset  # (source, edge, target)

    def accepts(self, word):
        current = set(self.initial)
        for letter in word:
            current = {t for (s, a, t) in self.transitions
                       if s in current and a == letter}
        return bool(current & self.accepting)


def untyped(a):
    """Forget state types; the NFA recognizes the untyped language of ``a``."""
    a.require_silent_free("untyped projection")
    return UntypedNFA(
        frozenset(a.states), a.initial, a.accepting,
        frozenset((t.source, t.label, t.target) for t in a.transitions),
    )


def _dot_id(name):
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(a, name="automaton"):
    """Graphviz rendering with a stable line order."""
    lines = [f"digraph {name} {{"]
    for q in a.state_list():
        shape = "doublecircle" if q in a.accepting else "circle"
        lines.append(f'  {_dot_id(q)} [shape={shape}, label={_dot_id(q + ":" + a.states[q])}];')
    for q in sorted(a.initial):
        start = _dot_id("__start__" + q)
        lines.append(f"  {start} [shape=point];")
        lines.append(f"  {start} -> {_dot_id(q)};")
    for t in a.transition_list():
        label = "τ:" + t.label if t.silent else t.label
        lines.append(f"  {_dot_id(t.source)} -> {_dot_id(t.target)} [label={_dot_id(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
