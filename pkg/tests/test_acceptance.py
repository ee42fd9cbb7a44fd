"""Acceptance criteria 1-9, each checked against the bounded oracle.

Every criterion records a one-line verdict; ``conftest.py`` prints them at
the end of the run and running this file directly prints them as well.
"""

import random
import re

import numpy as np

from gautomata import (GautError, accepts, bounded_equal, bounded_language, bounded_rat,
                       compile, complement, concat, determinize, enum_morphisms, find_morphism,
                       gen_builtin, gen_st, identity, intersect, is_deterministic, minimize,
                       parse_alphabet, parse_automaton, parse_expr, parse_word, plus,
                       print_expr, serialize_alphabet, serialize_automaton, suffix_quotients,
                       to_rational, trim, union, untyped, validate)
from gautomata.cli import run
from gautomata.formats import load_automaton
from gautomata.generate import (random_alphabet, random_automaton, random_complete_dfa,
                                random_expr)
from conftest import ST_PARALLEL

BOUND = 6
RESULTS = {}


def record(number, ok, detail):
    RESULTS[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    return ok


def _failures(checks):
    return [name for name, ok in checks if not ok]


def test_criterion_1_closure_operations():
    rng = random.Random(1001)
    bad = {"union": 0, "concat": 0, "plus": 0, "intersect": 0}
    for _ in range(200):
        g = random_alphabet(rng)
        a1, a2 = random_automaton(rng, g), random_automaton(rng, g)
        l1, l2 = bounded_language(a1, BOUND), bounded_language(a2, BOUND)
        bad["union"] += bounded_language(union(a1, a2), BOUND) != l1 | l2
        bad["concat"] += bounded_language(concat(a1, a2), BOUND) != l1.concat(l2)
        bad["plus"] += bounded_language(plus(a1), BOUND) != l1.plus()
        bad["intersect"] += bounded_language(intersect(a1, a2), BOUND) != l1 & l2
    ok = not any(bad.values())
    assert record(1, ok, "200 cases per operation, bound 6, failures "
                  + ", ".join(f"{k}={v}" for k, v in bad.items())), bad


def test_criterion_2_kleene_round_trip():
    rng = random.Random(1002)
    aut_bad = expr_bad = 0
    for _ in range(100):
        g = random_alphabet(rng)
        a = random_automaton(rng, g)
        aut_bad += bounded_rat(g, to_rational(a), BOUND) != bounded_language(a, BOUND)
    for _ in range(100):
        g = random_alphabet(rng)
        e = random_expr(rng, g)
        compiled = compile(g, parse_expr(g, print_expr(e)))
        expr_bad += bounded_language(compiled, BOUND) != bounded_rat(g, e, BOUND)
    ok = aut_bad == 0 and expr_bad == 0
    assert record(2, ok, f"to_rational failures {aut_bad}/100, compile failures {expr_bad}/100")


def test_criterion_3_determinization():
    rng = random.Random(1003)
    bad = 0
    for _ in range(100):
        g = random_alphabet(rng)
        a = random_automaton(rng, g)
        d = determinize(a)
        ok = (is_deterministic(d)
              and bounded_language(d, BOUND) == bounded_language(a, BOUND)
              and len(d.states) <= 2 ** len(a.states))
        bad += not ok
    assert record(3, bad == 0, f"100 automata, failures {bad}")


def test_criterion_4_complement(tmp_path):
    rng = random.Random(1004)
    bad = 0
    for _ in range(100):
        g = random_alphabet(rng)
        a = random_complete_dfa(rng, g)
        expected = enum_morphisms(g, 5) - bounded_language(a, 5)
        bad += bounded_language(complement(a), 5) != expected
    nd = parse_automaton("gaut 1\nuse builtin:lock\nstate p unsafe init\nstate q unsafe final\n"
                         "state r unsafe\ntrans a p q\ntrans a p r\n")
    path = tmp_path / "nd.gaut"
    path.write_text(serialize_automaton(nd))
    code = run(["complement", str(path), "-o", str(tmp_path / "out.gaut")])
    ok = bad == 0 and code == 3
    assert record(4, ok, f"100 complete DFAs, bound 5, failures {bad}; "
                  f"nondeterministic input exit code {code}")


def test_criterion_5_myhill_nerode():
    rng = random.Random(1005)
    count_bad = idem_bad = 0
    for _ in range(100):
        g = random_alphabet(rng)
        a = random_automaton(rng, g)
        m = minimize(a)
        count_bad += len(m.states) != suffix_quotients(a).count
        mm = minimize(m)
        idem_bad += (serialize_automaton(mm) != serialize_automaton(m))

    # Pairs (minimal automaton, trimmed subset automaton) of the same language.
    pairs = morph_bad = size_bad = redundant = 0
    while pairs < 20:
        g = random_alphabet(rng)
        a = random_automaton(rng, g)
        m, other = minimize(a), trim(determinize(a))
        if not m.states:
            continue
        pairs += 1
        assert bounded_equal(bounded_language(m, BOUND), bounded_language(other, BOUND))
        size_bad += len(m.states) > len(other.states)
        redundant += len(other.states) > len(m.states)
        try:
            phi = find_morphism(m, other)
            morph_bad += not phi.is_injective()
        except GautError:
            morph_bad += 1
    ok = count_bad == 0 and idem_bad == 0 and morph_bad == 0 and size_bad == 0
    assert record(5, ok, f"quotient-count mismatches {count_bad}/100, non-idempotent "
                  f"{idem_bad}/100; of 20 pairs, no injective morphism {morph_bad} "
                  f"(targets with more states than the minimal one: {redundant}), "
                  f"minimal larger {size_bad}"), (count_bad, idem_bad, morph_bad, size_bad)


def test_criterion_6_reference_examples():
    checks = []
    lock_text = serialize_alphabet(gen_builtin("lock"))
    lock = parse_alphabet(lock_text)
    checks.append(("lock", set(lock.vertices) == {"unsafe", "safe"} and {
        (e.name, e.source, e.target) for e in lock.edges} == {
        ("a", "unsafe", "unsafe"), ("P", "unsafe", "safe"), ("V", "safe", "unsafe"),
        ("b", "safe", "safe")}))
    types = parse_alphabet(serialize_alphabet(gen_builtin("types")))
    checks.append(("types", set(types.vertices) == {"int", "uint", "float"} and {
        (e.name, e.source, e.target) for e in types.edges} == {
        ("abs", "int", "uint"), ("neg", "uint", "int"), ("sqrt", "uint", "float"),
        ("round", "float", "int")}))

    par = load_automaton(ST_PARALLEL)
    checks.append(("parallel automaton alphabet", par.alphabet == gen_st(["a", "b", "c"], 2)))
    checks.append(("parallel automaton valid", validate(par) == []))
    checks.append(("rejects identity", not accepts(par, identity(par.alphabet, "⟨⟩"))))
    bottom = parse_word(par.alphabet, "∅ : b• •b c• •c : ∅")
    checks.append(("accepts bottom row", accepts(par, bottom)))

    ring = gen_st(["a", "b"], 1)
    checks.append(("depth-1 ring", set(ring.vertices) == {"⟨⟩", "⟨a⟩", "⟨b⟩"} and {
        (e.source, e.target) for e in ring.edges} == {
        ("⟨⟩", "⟨a⟩"), ("⟨a⟩", "⟨⟩"), ("⟨⟩", "⟨b⟩"), ("⟨b⟩", "⟨⟩")}
        and len(ring.edges) == 4))
    failed = _failures(checks)
    assert record(6, not failed, "all reference checks hold" if not failed
                  else f"failed: {', '.join(failed)}")


def test_criterion_7_counting():
    lock = gen_builtin("lock")
    index = {v: i for i, v in enumerate(lock.vertex_list())}
    adj = np.zeros((2, 2), dtype=np.int64)
    for e in lock.edges:
        adj[index[e.source], index[e.target]] += 1
    walks = sum(int(np.linalg.matrix_power(adj, k).sum()) for k in range(3))
    size = len(enum_morphisms(lock, 2))
    assert record(7, size == walks == 14,
                  f"enum_morphisms(lock, 2) = {size}, adjacency walk count = {walks}")


def _nfa_words(nfa, bound):
    """Words accepted by an untyped NFA, by forward search over its transitions."""
    succ = {}
    for s, a, t in nfa.transitions:
        succ.setdefault(s, []).append((a, t))
    layer = {(q, ()) for q in nfa.initial}
    out = set()
    for step in range(bound + 1):
        out |= {w for q, w in layer if q in nfa.accepting}
        if step < bound:
            layer = {(t, w + (a,)) for q, w in layer for a, t in succ.get(q, ())}
    return out


def test_criterion_8_untyped_projection():
    rng = random.Random(1008)
    bad = 0
    for _ in range(100):
        g = random_alphabet(rng)
        a = random_automaton(rng, g)
        typed = {m.word for m in bounded_language(a, BOUND)}
        bad += typed != _nfa_words(untyped(a), BOUND)
    assert record(8, bad == 0, f"100 automata, bound 6, failures {bad}")


# Mutations act on one field of one line of a serialized automaton and are
# chosen so that the result breaks a typing or reference invariant.

def _corpus(rng):
    files = [ST_PARALLEL.read_text(encoding="utf-8")]
    lock = gen_builtin("lock")
    while len(files) < 10:
        g = random_alphabet(rng) if len(files) % 2 else lock
        a = random_automaton(rng, g, density=0.8)
        if a.transitions:
            files.append(serialize_automaton(a))
    return files


def _mutate(rng, text):
    a = parse_automaton(text, base_dir=ST_PARALLEL.parent)
    g = a.alphabet
    lines = text.splitlines()
    states = [i for i, l in enumerate(lines) if l.startswith("state ")]
    trans = [i for i, l in enumerate(lines) if l.startswith("trans ")]
    kind = rng.choice(["label", "unknown-label", "vertex", "unknown-vertex", "endpoint",
                       "flag", "keyword", "arity"])
    if kind in ("label", "unknown-label"):
        i = rng.choice(trans)
        _, label, src, dst = lines[i].split()
        typing = (a.states[src], a.states[dst])
        wrong = [e.name for e in g.edge_list() if (e.source, e.target) != typing]
        new = rng.choice(wrong) if kind == "label" and wrong else label + "_x"
        lines[i] = f"trans {new} {src} {dst}"
    elif kind in ("vertex", "unknown-vertex"):
        used = {f for i in trans for f in lines[i].split()[2:]}
        i = rng.choice([i for i in states if lines[i].split()[1] in used])
        fields = lines[i].split()
        others = [v for v in g.vertex_list() if v != fields[2]]
        fields[2] = rng.choice(others) if kind == "vertex" and others else fields[2] + "_x"
        lines[i] = " ".join(fields)
    elif kind == "endpoint":
        i = rng.choice(trans)
        fields = lines[i].split()
        fields[rng.choice([2, 3])] = "ghost"
        lines[i] = " ".join(fields)
    elif kind == "flag":
        i = rng.choice(states)
        lines[i] += " initial"
    elif kind == "keyword":
        i = rng.choice(states + trans)
        lines[i] = re.sub(r"^(\w+)", lambda m: m.group(1)[:-1], lines[i])
    else:
        i = rng.choice(trans)
        lines[i] = " ".join(lines[i].split()[:-1])
    return kind, "\n".join(lines) + "\n"


def test_criterion_9_mutation_robustness():
    rng = random.Random(1009)
    corpus = _corpus(rng)
    silent = []
    for n in range(100):
        kind, text = _mutate(rng, corpus[n % len(corpus)])
        try:
            a = parse_automaton(text, base_dir=ST_PARALLEL.parent)
        except GautError:
            continue
        if not validate(a):
            silent.append(kind)
    assert record(9, not silent, f"100 corruptions, undetected {len(silent)}"
                  + (f" ({', '.join(silent)})" if silent else "")), silent


if __name__ == "__main__":
    import pytest
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
