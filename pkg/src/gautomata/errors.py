"""Exception hierarchy shared by every module of the package."""


class GautError(Exception):
    """Base class for all errors raised by gautomata."""


class ParseError(GautError):
    """Text does not conform to one of the supported syntaxes."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AlphabetError(GautError):
    """Unknown or duplicate vertex/edge name, or mismatched alphabets."""


class TypeMismatchError(GautError):
    """Concatenation of morphisms whose endpoints do not agree."""


class PreconditionError(GautError):
    """An operation was called on an automaton it does not accept.

    Typical causes: silent transitions present, a nondeterministic or
    incomplete automaton passed to ``complement``, an untrimmed automaton
    passed to the Nerode refinement.
    """


class MorphismError(PreconditionError):
    """No automaton morphism exists along the witness words."""


class OracleLimitError(GautError):
    """The brute-force enumeration exceeded its hard limits."""
