import random

import pytest

from gautomata import (Automaton, GautError, ParseError, Transition, parse_automaton, parse_nfa,
                       serialize_automaton, serialize_nfa, untyped, validate)
from gautomata.formats import load_automaton
from gautomata.generate import random_alphabet, random_automaton
from util import rat

SMALL = """gaut 1
use builtin:lock
state q0 unsafe init   # start
state q1 safe final
trans P q0 q1
trans b q1 q1
trans @safe q1 q1
"""


def test_parse_small(lock):
    a = parse_automaton(SMALL)
    assert a.alphabet == lock
    assert a.initial == {"q0"} and a.accepting == {"q1"}
    assert Transition("q1", "safe", "q1", silent=True) in a.transitions
    assert validate(a) == []


def test_round_trip_random_automata():
    rng = random.Random(5)
    for _ in range(100):
        a = random_automaton(rng, random_alphabet(rng))
        text = serialize_automaton(a)
        assert parse_automaton(text) == a
        assert serialize_automaton(parse_automaton(text)) == text


def test_round_trip_with_silent(lock):
    a = parse_automaton(SMALL)
    assert parse_automaton(serialize_automaton(a)) == a


def test_alphabet_file_reference(tmp_path, lock):
    (tmp_path / "lock.galph").write_text(
        "galph 1\nvertex unsafe\nvertex safe\n"
        "edge a unsafe unsafe\nedge P unsafe safe\nedge V safe unsafe\nedge b safe safe\n")
    path = tmp_path / "x.gaut"
    path.write_text(SMALL.replace("builtin:lock", "lock.galph"))
    assert load_automaton(path).alphabet == lock


@pytest.mark.parametrize("text, fragment", [
    ("", "header"),
    ("gaut 2\nuse builtin:lock\n", "header"),
    ("gaut 1\n", "missing alphabet"),
    ("gaut 1\nstate q0 unsafe\n", "before alphabet"),
    ("gaut 1\nuse builtin:lock\nuse builtin:lock\n", "twice"),
    ("gaut 1\nuse builtin:lock\nstate q0 unsafe start\n", "flags"),
    ("gaut 1\nuse builtin:lock\nstate q0 unsafe\nstate q0 safe\n", "duplicate"),
    ("gaut 1\nuse builtin:lock\ntrans P q0\n", "trans takes"),
    ("gaut 1\nuse builtin:lock\ntrans @ q0 q0\n", "silent"),
    ("gaut 1\nalphabet\nvertex u\n", "not closed"),
    ("gaut 1\nuse builtin:zoo\n", "zoo"),
    ("gaut 1\nuse builtin:lock\nstrange line\n", "line 3"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(GautError, match=fragment):
        parse_automaton(text)


def test_inline_alphabet_error_has_file_line():
    text = "gaut 1\nalphabet\nvertex u\nedge x u w\nend\n"
    with pytest.raises(ParseError, match="line 4"):
        parse_automaton(text)


def test_typing_errors_are_not_parse_errors():
    a = parse_automaton("gaut 1\nuse builtin:lock\nstate p unsafe\nstate q unsafe\ntrans P p q\n")
    assert len(validate(a)) == 1


def test_nfa_round_trip(lock):
    n = untyped(rat(lock, "P . b^+ + a"))
    assert parse_nfa(serialize_nfa(n)) == n
    with pytest.raises(ParseError):
        parse_nfa("nfa 1\ntrans x\n")


def test_empty_automaton_text(lock):
    text = serialize_automaton(Automaton.empty(lock))
    assert "state" not in text and parse_automaton(text) == Automaton.empty(lock)
