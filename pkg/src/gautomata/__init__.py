"""Automata over graph alphabets.

Letters are edges of a directed graph, so two words concatenate only when
the first ends at the vertex where the second starts.
"""

from .alphabet import (Edge, GraphAlphabet, Morphism, compose, format_word, gen_builtin,
                       gen_st, identity, parse_alphabet, parse_word, serialize_alphabet)
from .automaton import (Automaton, Transition, UntypedNFA, accepts, endpoints,
                        is_complete, is_deterministic, to_dot, trim, universal, untyped,
                        validate)
from .errors import (AlphabetError, GautError, MorphismError, OracleLimitError, ParseError,
                     PreconditionError, TypeMismatchError)
from .formats import parse_automaton, parse_nfa, serialize_automaton, serialize_nfa
from .minimize import (AutMorphism, NerodePartition, QuotientSummary, check_minimal,
                       find_morphism, minimize, nerode_partition, suffix_quotients)
from .ops import (complement, complete, concat, determinize, intersect, plus,
                  quotient_left, quotient_right, union)
from .oracle import LanguageSet, bounded_equal, bounded_language, bounded_rat, enum_morphisms
from .rational import (EMPTY, Atom, Concat, Empty, Id, Plus, RatExpr, Union, compile,
                       eliminate_silent, parse_expr, print_expr, to_rational)

__version__ = "0.1.0"
