import logging
from enum import Enum, IntEnum, auto
from typing import Optional

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """Process exit codes of the command line front end."""
    VERDICT = 0
    INCONCLUSIVE = 2
    INPUT_ERROR = 3


class ShapeStatus(Enum):
    COMPLETE = auto()
    PARTIAL = auto()
    INCONCLUSIVE = auto()


class TrinomialIndexError(Exception):
    """Base class for every error raised by the engine."""


class DomainError(TrinomialIndexError, ValueError):
    """An operation was called outside of its precondition."""


class ReducibleInputError(DomainError):
    """The input polynomial is reducible over Q (or not squarefree)."""

    def __init__(self, message: str, factor: Optional[str] = None):
        super().__init__(message)
        self.factor = factor


class NotApplicableError(TrinomialIndexError):
    """A guarded operation refused its input (for example refinement with e > 1)."""


class SpecFileError(DomainError):
    """A scan specification file could not be parsed."""


def exit_code_for(error: Exception) -> ExitCode:
    """Maps an engine exception onto the CLI exit code."""
    if isinstance(error, DomainError):
        return ExitCode.INPUT_ERROR
    if isinstance(error, NotApplicableError):
        return ExitCode.INCONCLUSIVE
    logger.error(f"Unexpected error type {type(error).__name__}: {error}")
    return ExitCode.INPUT_ERROR


def describe_error(error: Exception) -> str:
    """One-line message for stderr, including the detected factor if any."""
    if isinstance(error, ReducibleInputError) and error.factor:
        return f"{error} (factor: {error.factor})"
    return str(error)
