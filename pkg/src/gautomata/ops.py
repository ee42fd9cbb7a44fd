"""Closure operations on automata.

Binary operations make the two state sets disjoint by prefixing ``l:`` and
``r:``.  Subset states are named ``{q1,q2,...}`` with members sorted.
"""

from __future__ import annotations

from collections import deque

from .automaton import (Automaton, Transition, is_complete, is_deterministic,
                        require_same_alphabet)
from .errors import PreconditionError
from .rational import eliminate_silent


def _disjoint(a1, a2):
    return a1.prefixed("l:"), a2.prefixed("r:")


def union(a1, a2):
    """Disjoint sum; recognizes ``L(a1) | L(a2)``."""
    alphabet = require_same_alphabet(a1, a2)
    l, r = _disjoint(a1, a2)
    return Automaton(alphabet, {**l.states, **r.states}, l.initial | r.initial,
                     l.accepting | r.accepting, l.transitions | r.transitions)


def _bridges(sources, targets, mu):
    return {
        Transition(p, mu[p], q, silent=True)
        for p in sources
        for q in targets
        if mu[p] == mu[q]
    }


def concat(a1, a2):
    """Typed concatenation through silent bridges from ``F1`` to same-typed ``I2``."""
    alphabet = require_same_alphabet(a1, a2)
    l, r = _disjoint(a1, a2)
    states = {**l.states, **r.states}
    glued = Automaton(alphabet, states, l.initial, r.accepting,
                      l.transitions | r.transitions
                      | _bridges(l.accepting, r.initial, states))
    return eliminate_silent(glued)


def plus(a):
    """Kleene plus: silent back-edges from accepting to same-typed initial states."""
    looped = a.replace(transitions=a.transitions
                       | _bridges(a.accepting, a.initial, a.states))
    return eliminate_silent(looped)


def _pair(p, q):
    return f"({p},{q})"


def intersect(a1, a2):
    """Typed product over all pairs of states with equal vertex labels."""
    alphabet = require_same_alphabet(a1, a2)
    a1.require_silent_free("intersection")
    a2.require_silent_free("intersection")
    states = {
        _pair(p, q): v
        for p, v in a1.states.items()
        for q, w in a2.states.items()
        if v == w
    }
    by_label = {}
    for t in a2.transitions:
        by_label.setdefault(t.label, []).append(t)
    transitions = {
        Transition(_pair(t1.source, t2.source), t1.label, _pair(t1.target, t2.target))
        for t1 in a1.transitions
        for t2 in by_label.get(t1.label, ())
    }
    return Automaton(
        alphabet, states,
        {_pair(p, q) for p in a1.initial for q in a2.initial if a1.states[p] == a2.states[q]},
        {_pair(p, q) for p in a1.accepting for q in a2.accepting if a1.states[p] == a2.states[q]},
        transitions,
    )


def subset_name(subset):
    return "{" + ",".join(sorted(subset)) + "}"


def determinize(a):
    """Subset construction over nonempty, single-typed, reachable subsets.

    Each vertex occurring among the initial states contributes exactly one
    initial subset: all initial states of that type.
    """
    a.require_silent_free("determinization")
    starts = {}
    for q in a.initial:
        starts.setdefault(a.states[q], set()).add(q)
    start_sets = [frozenset(s) for _, s in sorted(starts.items())]

    seen = set(start_sets)
    todo = deque(start_sets)
    transitions = set()
    while todo:
        subset = todo.popleft()
        moves = {}
        for q in subset:
            for t in a.out.get(q, ()):
                moves.setdefault(t.label, set()).add(t.target)
        for label, targets in moves.items():
            target = frozenset(targets)
            transitions.add(Transition(subset_name(subset), label, subset_name(target)))
            if target not in seen:
                seen.add(target)
                todo.append(target)

    return Automaton(
        a.alphabet,
        {subset_name(s): a.states[next(iter(s))] for s in seen},
        {subset_name(s) for s in start_sets},
        {subset_name(s) for s in seen if s & a.accepting},
        transitions,
    )


def _fresh(base, taken):
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def complete(a):
    """Add missing initial states and sink states until the automaton is complete.

    Sinks ``sink.v`` are created only when some transition is missing towards
    type ``v``, so completing a complete automaton changes nothing.  None of
    the new states is accepting, hence none is co-accessible.
    """
    a.require_silent_free("completion")
    alphabet = a.alphabet
    states = dict(a.states)
    taken = set(states)
    initial = set(a.initial)
    transitions = set(a.transitions)

    typed_initial = {states[q] for q in initial}
    for v in alphabet.vertex_list():
        if v not in typed_initial:
            q = _fresh(f"init.{v}", taken)
            states[q] = v
            initial.add(q)

    present = {(t.source, t.label) for t in transitions}
    sinks = {}
    todo = deque(sorted(states))
    while todo:
        q = todo.popleft()
        for e in alphabet.out_edges(states[q]):
            if (q, e.name) in present:
                continue
            if e.target not in sinks:
                sink = _fresh(f"sink.{e.target}", taken)
                sinks[e.target] = sink
                states[sink] = e.target
                todo.append(sink)
            transitions.add(Transition(q, e.name, sinks[e.target]))
            present.add((q, e.name))
    return Automaton(alphabet, states, initial, a.accepting, transitions)


def complement(a):
    """Swap accepting and rejecting states of a complete deterministic automaton."""
    if not is_deterministic(a):
        raise PreconditionError("complement requires a deterministic automaton")
    if not is_complete(a):
        raise PreconditionError("complement requires a complete automaton")
    return a.replace(accepting=set(a.states) - a.accepting)


def _read(a, start, word):
    current = set(start)
    for name in word:
        current = {r for q in current for r in a.delta.get((q, name), ())}
    return current


def quotient_left(a, w):
    """Automaton for ``{u : d0(u) = d1(w), wu in L(a)}``."""
    a.require_silent_free("left quotient")
    a.alphabet.check(w)
    start = {q for q in a.initial if a.states[q] == w.source}
    return a.replace(initial=_read(a, start, w.word))


def quotient_right(a, w):
    """Automaton for ``{u : d1(u) = d0(w), uw in L(a)}``."""
    a.require_silent_free("right quotient")
    a.alphabet.check(w)
    back = {}
    for t in a.transitions:
        back.setdefault((t.target, t.label), set()).add(t.source)
    current = {q for q in a.accepting if a.states[q] == w.target}
    for name in reversed(w.word):
        current = {p for q in current for p in back.get((q, name), ())}
    return a.replace(accepting=current)
