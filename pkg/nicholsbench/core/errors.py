"""Exception hierarchy for nicholsbench."""
from typing import Optional, Tuple


class NicholsBenchError(Exception):
    """Base class for all errors raised by nicholsbench."""


class InvalidOperandError(NicholsBenchError, ValueError):
    """Raised for division by zero and other operands outside an operation's domain."""


class DegreeMismatchError(NicholsBenchError, ValueError):
    """Raised when a multidegree does not have length theta."""


class NonHomogeneousError(NicholsBenchError, ValueError):
    """Raised when an operation needs a homogeneous element and gets something else."""


class CutoffExceededError(NicholsBenchError, ValueError):
    """Raised when a computation would need a total degree above the cutoff."""

    def __init__(self, degree: int, cutoff: int):
        super().__init__(f"total degree {degree} exceeds cutoff {cutoff}")
        self.degree = degree
        self.cutoff = cutoff


class UndefinedCartanEntryError(NicholsBenchError, ValueError):
    """Raised when m_ij does not exist for a pair of vertices."""

    def __init__(self, i: int, j: int):
        super().__init__(f"m_{i}{j} is undefined")
        self.witness: Tuple[int, int] = (i, j)


class RelationSyntaxError(NicholsBenchError, ValueError):
    """Syntax error in a relation expression or scalar literal.

    Attributes:
        text: The source text
        position: Zero-based character offset of the failure
        line: One-based line number
        column: One-based column number
    """

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        self.line = text.count("\n", 0, position) + 1
        line_start = text.rfind("\n", 0, position) + 1
        self.column = position - line_start + 1
        super().__init__(self._render())

    def _render(self) -> str:
        if not self.text:
            return self.message
        line_start = self.text.rfind("\n", 0, self.position) + 1
        line_end = self.text.find("\n", self.position)
        if line_end < 0:
            line_end = len(self.text)
        source_line = self.text[line_start:line_end]
        caret = " " * (self.column - 1) + "^"
        return (
            f"{self.message} (line {self.line}, column {self.column})\n"
            f"  {source_line}\n  {caret}"
        )


class IllFormedRelationError(NicholsBenchError, ValueError):
    """Raised when a relation evaluates to something a presentation cannot hold."""

    def __init__(self, message: str, span: Optional[Tuple[int, int]] = None):
        super().__init__(message if span is None else f"{message} at {span[0]}..{span[1]}")
        self.span = span


class CatalogError(NicholsBenchError, ValueError):
    """Raised for unknown catalog tags, invalid parameters and bad compositions."""


class PresentationFileError(NicholsBenchError, ValueError):
    """Raised for malformed presentation files."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ConfigurationError(NicholsBenchError, ValueError):
    """Raised when a configuration file does not validate."""
