from __future__ import annotations

from typing import Optional


class ClauseTrimError(RuntimeError):
    """Base class for every error raised by the analysis library."""


class DimacsParseError(ClauseTrimError):
    def __init__(self, message: str, *, line: Optional[int] = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(ClauseTrimError):
    """An operation was called outside the regime it is defined for."""

    def __init__(self, message: str, *, condition: str) -> None:
        super().__init__(message)
        self.condition = condition


class UnknownClauseError(ClauseTrimError):
    def __init__(self, message: str, *, clause_id: int) -> None:
        super().__init__(message)
        self.clause_id = clause_id


class SearchExhausted(ClauseTrimError):
    """A search budget ran out before an answer was found. Never a verdict."""

    def __init__(self, message: str, *, reason: str, nodes: int = 0) -> None:
        super().__init__(message)
        self.reason = reason
        self.nodes = nodes


class GeneratorError(ClauseTrimError):
    def __init__(self, message: str, *, reduction: str) -> None:
        super().__init__(message)
        self.reduction = reduction
