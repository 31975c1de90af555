"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class HomdualError(Exception):
    """Base class for every error raised by homdual."""


class VocabularyMismatch(HomdualError, ValueError):
    """Two structures (or a structure and a pattern) disagree on their vocabulary."""


class OutOfRange(HomdualError, ValueError):
    """An element index lies outside the universe it refers to."""


class PartitionMismatch(HomdualError, ValueError):
    """A partition does not cover the universe it is applied to."""


class BudgetExceeded(HomdualError):
    """A construction would exceed its configured size budget.

    Args:
        what (str): Name of the construction that was refused.
        needed (int): Size the construction would have reached.
        budget (int): Configured limit.
    """

    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f'{what} needs {needed}, budget is {budget}')


class NotATree(HomdualError, ValueError):
    """A digraph that must be an oriented tree is not one."""


class InvalidSproinkSpec(HomdualError, ValueError):
    """Replacement trees or attachment vertices break the gluing rules."""


class InvalidPattern(HomdualError, ValueError):
    """A Pultr pattern whose maps are not homomorphisms or whose data is incomplete."""


class NotARetraction(HomdualError, ValueError):
    """A map offered as a retraction is not one."""


class NufVerificationError(HomdualError):
    """A near-unanimity candidate failed verification where a verified one is required."""


class PreconditionViolation(HomdualError):
    """A decision procedure was called on an input outside its domain."""


class ParseError(HomdualError):
    """Malformed input document.

    Args:
        message (str): What went wrong.
        line (int): 1-based line number.
        column (int): 1-based column of the offending token.
        source (str, optional): File the document came from.
    """

    def __init__(self, message: str, line: int, column: int = 1, source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        location = f'{line}:{column}' if source is None else f'{source}:{line}:{column}'
        super().__init__(f'{location}: {message}')


class InvalidVocabulary(HomdualError, ValueError):
    """Duplicate symbol names, non-identifier names or non-positive arities."""
