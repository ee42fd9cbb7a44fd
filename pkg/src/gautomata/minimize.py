"""Nerode congruence, minimal automata, quotient counting and automaton morphisms."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .alphabet import Morphism
from .automaton import (Automaton, Transition, coaccessible, is_deterministic, is_trim,
                        require_same_alphabet, trim)
from .errors import MorphismError, PreconditionError
from .ops import determinize


def _require_dfa(a, what):
    if not is_deterministic(a):
        raise PreconditionError(f"{what} requires a deterministic automaton")


def _require_trim(a, what):
    if not is_trim(a):
        raise PreconditionError(
            f"{what} requires a trimmed automaton (all states reachable and co-accessible)"
        )


@dataclass(frozen=True)
class NerodePartition:
    """Blocks of states with equal right languages."""

    blocks: tuple  # of frozensets, ordered by smallest member
    vertex: tuple  # vertex label of each block
    accepting: tuple  # acceptance flag of each block
    _index: dict = field(repr=False, compare=False, default_factory=dict)

    def block_of(self, q):
        return self._index[q]

    def __len__(self):
        return len(self.blocks)


def _refine(d, start):
    """Moore refinement of ``start`` (state -> key) under the transitions of ``d``."""
    labels = sorted({t.label for t in d.transitions})
    block = start
    while True:
        signature = {
            q: (block[q],) + tuple(
                (a, block[next(iter(d.delta[q, a]))]) if (q, a) in d.delta else (a, None)
                for a in labels
            )
            for q in d.states
        }
        renumber = {s: i for i, s in enumerate(sorted(set(signature.values()), key=repr))}
        refined = {q: renumber[signature[q]] for q in d.states}
        if len(renumber) == len(set(block.values())):
            return refined
        block = refined


def nerode_partition(d):
    """Coarsest partition of a trimmed DFA that respects labels, acceptance and moves."""
    _require_dfa(d, "Nerode partition")
    _require_trim(d, "Nerode partition")
    start = {q: (d.states[q], q in d.accepting) for q in d.states}
    keys = {k: i for i, k in enumerate(sorted(set(start.values())))}
    final = _refine(d, {q: keys[k] for q, k in start.items()})

    groups = {}
    for q in d.state_list():
        groups.setdefault(final[q], []).append(q)
    blocks = sorted((frozenset(g) for g in groups.values()), key=min)
    index = {q: i for i, b in enumerate(blocks) for q in b}
    return NerodePartition(
        tuple(blocks),
        tuple(d.states[min(b)] for b in blocks),
        tuple(min(b) in d.accepting for b in blocks),
        index,
    )


def minimize(a):
    """The Myhill-Nerode automaton of ``L(a)``: trimmed subset automaton modulo Nerode."""
    a.require_silent_free("minimization")
    d = trim(determinize(a))
    if not d.states:
        return Automaton.empty(a.alphabet)
    part = nerode_partition(d)

    initial_blocks = {}
    for q in d.initial:
        b = part.block_of(q)
        v = part.vertex[b]
        # Distinct vertices never share a class with a nonempty quotient.
        assert initial_blocks.get(v, b) == b, "two initial classes for one vertex"
        initial_blocks[v] = b

    # Number blocks in breadth-first order for stable, readable names.
    order = {}
    todo = deque(b for _, b in sorted(initial_blocks.items()))
    for b in todo:
        order.setdefault(b, len(order))
    moves = {}
    for t in d.transitions:
        moves.setdefault(part.block_of(t.source), {})[t.label] = part.block_of(t.target)
    while todo:
        b = todo.popleft()
        for label in sorted(moves.get(b, {})):
            c = moves[b][label]
            if c not in order:
                order[c] = len(order)
                todo.append(c)

    name = {b: f"m{i}" for b, i in order.items()}
    return Automaton(
        a.alphabet,
        {name[b]: part.vertex[b] for b in order},
        {name[b] for b in initial_blocks.values()},
        {name[b] for b in order if part.accepting[b]},
        {Transition(name[b], label, name[c])
         for b, row in moves.items() for label, c in row.items()},
    )


@dataclass(frozen=True)
class QuotientSummary:
    """Distinct left quotients ``w^-1 L`` of a regular language.

    ``witnesses`` holds one shortest word per nonempty quotient.
    ``has_empty`` tells whether some word has an empty quotient.
    """

    witnesses: tuple
    has_empty: bool

    @property
    def count(self):
        return len(self.witnesses)

    @property
    def total(self):
        return self.count + self.has_empty


def _same_language(a, left, right, vertex):
    """Union-find equivalence of the right languages of two state sets of type ``vertex``."""
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    todo = [(left, right, vertex)]
    while todo:
        r1, r2, v = todo.pop()
        x, y = find((r1, v)), find((r2, v))
        if x == y:
            continue
        if bool(r1 & a.accepting) != bool(r2 & a.accepting):
            return False
        parent[x] = y
        for e in a.alphabet.out_edges(v):
            n1 = frozenset(t for q in r1 for t in a.delta.get((q, e.name), ()))
            n2 = frozenset(t for q in r2 for t in a.delta.get((q, e.name), ()))
            todo.append((n1, n2, e.target))
    return True


def suffix_quotients(a):
    """Count left quotients by exploring reached state sets.

    A word ``w`` reaches a set ``R`` of states and ``w^-1 L`` is the union
    of the right languages of ``R``; reached sets are compared with a
    union-find language-equivalence check, independently of the partition
    refinement used by :func:`minimize`.
    """
    a.require_silent_free("quotient counting")
    useful = coaccessible(a)
    starts = []
    for v in a.alphabet.vertex_list():
        r = frozenset(q for q in a.initial if a.states[q] == v)
        starts.append((r, Morphism(v, (), v)))

    witness = {}
    todo = deque()
    for r, w in starts:
        if (r, w.target) not in witness:
            witness[r, w.target] = w
            todo.append((r, w))
    while todo:
        r, w = todo.popleft()
        for e in a.alphabet.out_edges(w.target):
            nxt = frozenset(t for q in r for t in a.delta.get((q, e.name), ()))
            if (nxt, e.target) not in witness:
                wn = Morphism(w.source, w.word + (e.name,), e.target)
                witness[nxt, e.target] = wn
                todo.append((nxt, wn))

    has_empty = False
    reps = []  # (state set, vertex, witness)
    for (r, v), w in witness.items():
        if not r & useful:
            has_empty = True
            continue
        if not any(v == rv and _same_language(a, r, rr, v) for rr, rv, _ in reps):
            reps.append((r, v, w))
    return QuotientSummary(tuple(w for _, _, w in reps), has_empty)


@dataclass(frozen=True)
class AutMorphism:
    """State map ``source -> target`` preserving initial/accepting states, labels and moves."""

    source: Automaton
    target: Automaton
    mapping: dict

    def violations(self):
        src, dst, phi = self.source, self.target, self.mapping
        problems = []
        for q in src.state_list():
            if q not in phi:
                problems.append(f"{q} is not mapped")
                continue
            if phi[q] not in dst.states:
                problems.append(f"{q} maps to unknown state {phi[q]}")
                continue
            if src.states[q] != dst.states[phi[q]]:
                problems.append(f"{q} and {phi[q]} carry different vertices")
            if q in src.initial and phi[q] not in dst.initial:
                problems.append(f"initial {q} maps to non-initial {phi[q]}")
            if q in src.accepting and phi[q] not in dst.accepting:
                problems.append(f"accepting {q} maps to non-accepting {phi[q]}")
        for t in src.transition_list():
            if t.source in phi and t.target in phi:
                if Transition(phi[t.source], t.label, phi[t.target]) not in dst.transitions:
                    problems.append(f"no image for {t.source} -{t.label}-> {t.target}")
        return problems

    def is_injective(self):
        return len(set(self.mapping.values())) == len(self.mapping)

    def is_surjective(self):
        return set(self.mapping.values()) == set(self.target.states)

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def lines(self):
        return [f"map {q} -> {self.mapping[q]}" for q in sorted(self.mapping)]


def find_morphism(a1, a2):
    """Map each state of ``a1`` to the state of ``a2`` reached by the same word."""
    require_same_alphabet(a1, a2)
    for a, n in ((a1, "first"), (a2, "second")):
        _require_dfa(a, f"morphism search ({n} automaton)")
        _require_trim(a, f"morphism search ({n} automaton)")

    init2 = {a2.states[q]: q for q in a2.initial}
    phi = {}
    todo = deque()
    for q in sorted(a1.initial):
        v = a1.states[q]
        if v not in init2:
            raise MorphismError(f"no initial state of type {v} in the target automaton")
        phi[q] = init2[v]
        todo.append(q)
    while todo:
        q = todo.popleft()
        for t in a1.out.get(q, ()):
            image = a2.delta.get((phi[q], t.label))
            if not image:
                raise MorphismError(
                    f"{phi[q]} has no {t.label}-transition matching {t.source} -> {t.target}"
                )
            (r,) = image
            if t.target in phi:
                if phi[t.target] != r:
                    raise MorphismError(
                        f"{t.target} would map to both {phi[t.target]} and {r}"
                    )
            else:
                phi[t.target] = r
                todo.append(t.target)

    result = AutMorphism(a1, a2, phi)
    problems = result.violations()
    if problems:
        raise MorphismError("; ".join(problems))
    return result


def check_minimal(a):
    """True when no deterministic automaton for ``L(a)`` has fewer states."""
    _require_dfa(a, "minimality check")
    _require_trim(a, "minimality check")
    return len(a.states) == len(minimize(a).states)
