"""Exception types shared across the package."""


class WcdpError(Exception):
    """Base class for all errors raised by this package."""


class GrammarSyntaxError(WcdpError):
    """A grammar or lexicon file could not be parsed."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class UndeclaredLabelError(WcdpError):
    """A constraint mentions a relation label missing from the label sets."""


class PfOutOfRangeError(WcdpError):
    """A penalty factor outside [0, 1) was given."""


class AccessorScopeError(WcdpError):
    """A layer-specific accessor was applied to a relation of the wrong layer."""


class EmptySentenceError(WcdpError):
    """Domain generation was asked to run on a sentence with no tokens."""


class LastCandidateError(WcdpError):
    """Refused to remove the last candidate of a domain."""


class IncompleteAssignmentError(WcdpError):
    """Scoring was asked to rate an assignment missing some variable."""


class SearchBudgetExceededError(WcdpError):
    """Exhaustive search expanded more nodes than its configured budget."""
