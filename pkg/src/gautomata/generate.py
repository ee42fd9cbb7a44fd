"""Seeded random alphabets, automata and expressions for property checks."""

from __future__ import annotations

import random

from .alphabet import GraphAlphabet
from .automaton import Automaton, Transition
from .rational import EMPTY, Atom, Concat, Id, Plus, Union


def random_alphabet(rng: random.Random, max_vertices=4, max_edges=8) -> GraphAlphabet:
    nv = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(nv)]
    ne = rng.randint(1, max_edges)
    edges = [(f"e{i}", rng.choice(vertices), rng.choice(vertices)) for i in range(ne)]
    return GraphAlphabet(vertices, edges)


def random_automaton(rng: random.Random, alphabet: GraphAlphabet, max_states=5,
                     density=0.5, p_initial=0.4, p_accepting=0.4) -> Automaton:
    """Random well-typed automaton; each possible edge at a state is used with ``density``."""
    n = rng.randint(1, max_states)
    vertices = alphabet.vertex_list()
    states = {f"q{i}": rng.choice(vertices) for i in range(n)}
    by_vertex = {}
    for q, v in states.items():
        by_vertex.setdefault(v, []).append(q)

    transitions = set()
    for q in sorted(states):
        for e in alphabet.out_edges(states[q]):
            targets = by_vertex.get(e.target)
            if targets and rng.random() < density:
                transitions.add(Transition(q, e.name, rng.choice(targets)))
                # Occasionally branch nondeterministically.
                if rng.random() < 0.2:
                    transitions.add(Transition(q, e.name, rng.choice(targets)))
    initial = {q for q in states if rng.random() < p_initial}
    accepting = {q for q in states if rng.random() < p_accepting}
    return Automaton(alphabet, states, initial, accepting, transitions)


def random_complete_dfa(rng: random.Random, alphabet: GraphAlphabet, max_states=5) -> Automaton:
    """Random deterministic automaton with every vertex initial and every move defined."""
    vertices = alphabet.vertex_list()
    n = max(len(vertices), rng.randint(1, max_states))
    labels = vertices + [rng.choice(vertices) for _ in range(n - len(vertices))]
    states = {f"q{i}": v for i, v in enumerate(labels)}
    by_vertex = {}
    for q, v in states.items():
        by_vertex.setdefault(v, []).append(q)
    transitions = {
        Transition(q, e.name, rng.choice(by_vertex[e.target]))
        for q in sorted(states) for e in alphabet.out_edges(states[q])
    }
    initial = {rng.choice(by_vertex[v]) for v in vertices}
    accepting = {q for q in states if rng.random() < 0.5}
    return Automaton(alphabet, states, initial, accepting, transitions)


def random_expr(rng: random.Random, alphabet: GraphAlphabet, depth=3):
    """Random expression tree over ``alphabet`` of height at most ``depth``."""
    if depth == 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.08:
            return EMPTY
        if r < 0.2 or not alphabet.edges:
            return Id(rng.choice(alphabet.vertex_list()))
        return Atom(rng.choice(alphabet.edge_list()).name)
    kind = rng.choice(("union", "concat", "concat", "plus"))
    if kind == "plus":
        return Plus(random_expr(rng, alphabet, depth - 1))
    left = random_expr(rng, alphabet, depth - 1)
    right = random_expr(rng, alphabet, depth - 1)
    return Union(left, right) if kind == "union" else Concat(left, right)
