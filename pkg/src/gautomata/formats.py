"""The ``.gaut`` and ``.nfa`` line formats.

``.gaut``::

    gaut 1
    use builtin:lock          # or a .galph path, or an inline block:
    alphabet
    vertex unsafe
    ...
    end
    state q0 unsafe init
    state q1 safe final
    trans P q0 q1
    trans @safe q1 q1         # silent transition

Typing and dangling references are not parse errors; they are reported by
``automaton.validate``.
"""

from __future__ import annotations

from pathlib import Path

from .alphabet import alphabet_lines, parse_alphabet, parse_alphabet_ref, GALPH_HEADER
from .automaton import Automaton, Transition, UntypedNFA
from .errors import GautError, ParseError

GAUT_HEADER = "gaut 1"
NFA_HEADER = "nfa 1"
_FLAGS = ("init", "final")


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _state_decl(fields, lineno, with_vertex):
    need = 3 if with_vertex else 2
    if len(fields) < need:
        raise ParseError("state needs a name" + (" and a vertex" if with_vertex else ""), lineno)
    flags = fields[need:]
    if any(f not in _FLAGS for f in flags) or len(set(flags)) != len(flags):
        raise ParseError(f"bad state flags {' '.join(flags)!r}", lineno)
    return fields[1], (fields[2] if with_vertex else None), "init" in flags, "final" in flags


def parse_automaton(text, base_dir=None):
    lines = list(_lines(text))
    if not lines or lines[0][1].split() != GAUT_HEADER.split():
        raise ParseError(f"expected header {GAUT_HEADER!r}", lines[0][0] if lines else 1)

    alphabet = None
    states, initial, accepting, transitions = {}, set(), set(), set()
    i = 1
    while i < len(lines):
        lineno, line = lines[i]
        fields = line.split()
        kind = fields[0]
        if kind in ("use", "alphabet"):
            if alphabet is not None:
                raise ParseError("alphabet declared twice", lineno)
            if states or transitions:
                raise ParseError("alphabet must precede states and transitions", lineno)
            if kind == "use":
                if len(fields) != 2:
                    raise ParseError("use takes exactly one reference", lineno)
                try:
                    alphabet = parse_alphabet_ref(fields[1], base_dir)
                except OSError as exc:
                    raise ParseError(f"cannot read alphabet: {exc}", lineno) from None
            else:
                block = []
                i += 1
                while i < len(lines) and lines[i][1] != "end":
                    block.append(lines[i])
                    i += 1
                if i == len(lines):
                    raise ParseError("alphabet block is not closed by 'end'", lineno)
                # Preserve line numbers inside the block for error messages.
                padded = [""] * (block[-1][0] if block else lineno)
                padded[lineno - 1] = GALPH_HEADER
                for n, l in block:
                    padded[n - 1] = l
                alphabet = parse_alphabet("\n".join(padded))
        elif kind == "state":
            if alphabet is None:
                raise ParseError("state before alphabet declaration", lineno)
            name, vertex, is_init, is_final = _state_decl(fields, lineno, True)
            if name in states:
                raise ParseError(f"duplicate state {name!r}", lineno)
            states[name] = vertex
            if is_init:
                initial.add(name)
            if is_final:
                accepting.add(name)
        elif kind == "trans":
            if alphabet is None:
                raise ParseError("transition before alphabet declaration", lineno)
            if len(fields) != 4:
                raise ParseError("trans takes a label and two states", lineno)
            label, src, dst = fields[1:]
            silent = label.startswith("@")
            if silent:
                label = label[1:]
                if not label:
                    raise ParseError("silent label needs a vertex", lineno)
            transitions.add(Transition(src, label, dst, silent))
        else:
            raise ParseError(f"syntax error: {line!r}", lineno)
        i += 1
    if alphabet is None:
        raise ParseError("missing alphabet declaration", lines[-1][0])
    return Automaton(alphabet, states, initial, accepting, transitions)


def serialize_automaton(a):
    """Self-contained canonical text: inline alphabet, sorted states and transitions."""
    out = [GAUT_HEADER, "alphabet"]
    out.extend("  " + l for l in alphabet_lines(a.alphabet))
    out.append("end")
    for q in a.state_list():
        flags = [f for f, on in (("init", q in a.initial), ("final", q in a.accepting)) if on]
        out.append(" ".join(["state", q, a.states[q], *flags]))
    for t in a.transition_list():
        label = "@" + t.label if t.silent else t.label
        out.append(f"trans {label} {t.source} {t.target}")
    return "\n".join(out) + "\n"


def load_automaton(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GautError(f"cannot read {path}: {exc}") from None
    return parse_automaton(text, base_dir=path.parent)


def serialize_nfa(n: UntypedNFA) -> str:
    out = [NFA_HEADER]
    for q in sorted(n.states):
        flags = [f for f, on in (("init", q in n.initial), ("final", q in n.accepting)) if on]
        out.append(" ".join(["state", q, *flags]))
    for s, a, t in sorted(n.transitions):
        out.append(f"trans {a} {s} {t}")
    return "\n".join(out) + "\n"


def parse_nfa(text) -> UntypedNFA:
    lines = list(_lines(text))
    if not lines or lines[0][1].split() != NFA_HEADER.split():
        raise ParseError(f"expected header {NFA_HEADER!r}", lines[0][0] if lines else 1)
    states, initial, accepting, transitions = set(), set(), set(), set()
    for lineno, line in lines[1:]:
        fields = line.split()
        if fields[0] == "state":
            name, _, is_init, is_final = _state_decl(fields, lineno, False)
            if name in states:
                raise ParseError(f"duplicate state {name!r}", lineno)
            states.add(name)
            if is_init:
                initial.add(name)
            if is_final:
                accepting.add(name)
        elif fields[0] == "trans" and len(fields) == 4:
            transitions.add((fields[2], fields[1], fields[3]))
        else:
            raise ParseError(f"syntax error: {line!r}", lineno)
    return UntypedNFA(frozenset(states), frozenset(initial), frozenset(accepting),
                      frozenset(transitions))
