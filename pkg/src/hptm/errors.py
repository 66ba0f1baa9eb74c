"""Exception types shared across the package."""

from __future__ import annotations


class UsageError(ValueError):
    """Raised when an operation is called with arguments outside its contract."""


class ResourceError(RuntimeError):
    """Raised when a computation would exceed a configured size limit."""


class ParseDiagnostic(ValueError):
    """A parse failure with the position of the offending input.

    ``offset`` is a byte offset into the parsed string; ``line`` is set when
    the failure comes from a multi-line problem file (1-based).
    """

    def __init__(
        self,
        message: str,
        offset: int = 0,
        fragment: str = "",
        line: int | None = None,
    ) -> None:
        self.message = message
        self.offset = offset
        self.fragment = fragment
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"line {self.line}, " if self.line is not None else ""
        frag = f" near {self.fragment!r}" if self.fragment else ""
        return f"{where}offset {self.offset}: {self.message}{frag}"
