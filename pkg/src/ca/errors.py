"""Errors raised by the cellular automata core."""
from pathlib import Path
from typing import Optional


class CAError(ValueError):
    """Base class for invalid automata, configurations and patterns."""


class DimensionMismatchError(CAError):
    """A configuration, pattern or rule of the wrong dimension was supplied."""


class UnknownStateError(CAError):
    """A state name or id does not belong to the alphabet."""


class PreconditionError(CAError):
    """An operation was called outside the situation it is defined for."""


class FormatError(CAError):
    """A text file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[Path] = None):
        self.message = message
        self.line = line
        self.path = path
        location = ""
        if path is not None:
            location += f"{path}:"
        if line is not None:
            location += f"{line}:"
        super().__init__(f"{location} {message}" if location else message)
