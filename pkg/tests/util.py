"""Small helpers shared by the test modules."""

from gautomata import Morphism, bounded_language, compile, parse_expr


def words(alphabet, *specs):
    """Build morphisms from ``(source, "e1 e2", target)`` triples."""
    return {Morphism(s, tuple(w.split()), t) for s, w, t in specs}


def lang(a, n=6):
    return bounded_language(a, n).members


def rat(alphabet, text):
    return compile(alphabet, parse_expr(alphabet, text))
