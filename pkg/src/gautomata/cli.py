"""Command-line front end: ``gaut <command> ...``.

Exit codes: 0 success (or "yes"), 1 "no" answer (rejected word, differing
languages, invalid automaton), 2 usage or syntax error, 3 semantic error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import automaton as aut
from .minimize import find_morphism, minimize, suffix_quotients
from . import ops, oracle, rational
from .alphabet import (format_word, gen_builtin, gen_st, parse_alphabet_ref, parse_word,
                       serialize_alphabet)
from .errors import GautError, ParseError
from .formats import load_automaton, serialize_automaton, serialize_nfa

EXIT_NO = 1
EXIT_USAGE = 2
EXIT_SEMANTIC = 3


class _SemanticError(GautError):
    pass


def _maxlen(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= n <= oracle.MAX_BOUND:
        raise argparse.ArgumentTypeError(f"must lie in [0, {oracle.MAX_BOUND}]")
    return n


def _load(path):
    a = load_automaton(path)
    problems = aut.validate(a)
    if problems:
        raise _SemanticError(f"{path}: invalid automaton: " + "; ".join(problems))
    return rational.eliminate_silent(a)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_validate(args):
    a = load_automaton(args.automaton)
    problems = aut.validate(a)
    for p in problems:
        print(p)
    if problems:
        return EXIT_NO
    print("valid")
    return 0


def cmd_member(args):
    a = _load(args.automaton)
    ok = aut.accepts(a, parse_word(a.alphabet, args.word))
    print("accepted" if ok else "rejected")
    return 0 if ok else EXIT_NO


def cmd_enum(args):
    for m in oracle.bounded_language(_load(args.automaton), args.maxlen):
        print(format_word(m))
    return 0


def _binary(op):
    def run(args):
        result = op(_load(args.first), _load(args.second))
        _emit(serialize_automaton(result), args.output)
        return 0
    return run


def _unary(op):
    def run(args):
        _emit(serialize_automaton(op(_load(args.automaton))), args.output)
        return 0
    return run


def cmd_complement(args):
    a = _load(args.automaton)
    if args.force_dc:
        a = ops.complete(ops.determinize(a))
    _emit(serialize_automaton(ops.complement(a)), args.output)
    return 0


def _quotient(op):
    def run(args):
        a = _load(args.automaton)
        _emit(serialize_automaton(op(a, parse_word(a.alphabet, args.word))), args.output)
        return 0
    return run


def cmd_to_rat(args):
    print(rational.print_expr(rational.to_rational(_load(args.automaton))))
    return 0


def cmd_from_rat(args):
    alphabet = parse_alphabet_ref(args.alphabet)
    a = rational.compile(alphabet, rational.parse_expr(alphabet, args.expr))
    _emit(serialize_automaton(a), args.output)
    return 0


def cmd_equiv(args):
    l1 = oracle.bounded_language(_load(args.first), args.maxlen)
    l2 = oracle.bounded_language(_load(args.second), args.maxlen)
    result = oracle.bounded_equal(l1, l2)
    print(result.report())
    return 0 if result else EXIT_NO


def cmd_quotients(args):
    summary = suffix_quotients(_load(args.automaton))
    print(f"nonempty quotients: {summary.count}")
    print(f"empty quotient: {'yes' if summary.has_empty else 'no'}")
    for w in summary.witnesses:
        print(format_word(w))
    return 0


def cmd_morphism(args):
    phi = find_morphism(_load(args.first), _load(args.second))
    for line in phi.lines():
        print(line)
    return 0


def cmd_untyped(args):
    _emit(serialize_nfa(aut.untyped(_load(args.automaton))), args.output)
    return 0


def cmd_dot(args):
    sys.stdout.write(aut.to_dot(load_automaton(args.automaton)))
    return 0


def cmd_gen(args):
    if args.kind == "st":
        if not args.events:
            raise ParseError("gen st needs --events")
        alphabet = gen_st(args.events.split(","), args.depth)
    else:
        alphabet = gen_builtin(args.kind)
    _emit(serialize_alphabet(alphabet), args.output)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="gaut", description="Automata over graph alphabets.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help, *positionals, output=False, maxlen=False):
        p = sub.add_parser(name, help=help)
        for pos in positionals:
            p.add_argument(pos)
        if output:
            p.add_argument("-o", "--output", help="write here instead of stdout")
        if maxlen:
            p.add_argument("--maxlen", type=_maxlen, default=6,
                           help="length bound for enumeration (0-8, default 6)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "report typing violations", "automaton")
    add("member", cmd_member, "test membership of a word 'v : e1 e2 : w'", "automaton", "word")
    add("enum", cmd_enum, "list accepted words up to --maxlen", "automaton", maxlen=True)
    for name, op in (("union", ops.union), ("concat", ops.concat),
                     ("intersect", ops.intersect)):
        add(name, _binary(op), f"{name} of two automata", "first", "second", output=True)
    for name, op in (("plus", ops.plus), ("determinize", ops.determinize),
                     ("complete", ops.complete), ("minimize", minimize),
                     ("trim", aut.trim)):
        add(name, _unary(op), f"{name} an automaton", "automaton", output=True)
    p = add("complement", cmd_complement, "complement a complete deterministic automaton",
            "automaton", output=True)
    p.add_argument("--force-dc", action="store_true",
                   help="determinize and complete before complementing")
    add("quotient-left", _quotient(ops.quotient_left), "left quotient by a word",
        "automaton", "word", output=True)
    add("quotient-right", _quotient(ops.quotient_right), "right quotient by a word",
        "automaton", "word", output=True)
    add("to-rat", cmd_to_rat, "rational expression for an automaton", "automaton")
    p = add("from-rat", cmd_from_rat, "compile an expression", "expr", output=True)
    p.add_argument("--alphabet", required=True,
                   help="a .galph file or builtin:lock, builtin:types, builtin:st:a,b:2")
    add("equiv", cmd_equiv, "compare bounded languages", "first", "second", maxlen=True)
    add("quotients", cmd_quotients, "count left quotients", "automaton")
    add("morphism", cmd_morphism, "find an automaton morphism", "first", "second")
    add("untyped", cmd_untyped, "forget state types (.nfa output)", "automaton", output=True)
    add("dot", cmd_dot, "Graphviz rendering", "automaton")
    p = add("gen", cmd_gen, "generate an alphabet", output=True)
    p.add_argument("kind", choices=["lock", "types", "st"])
    p.add_argument("--events", help="comma-separated event labels (st only)")
    p.add_argument("--depth", type=int, default=2, help="truncation depth (st only)")
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"gaut: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GautError, ValueError) as exc:
        print(f"gaut: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
