"""Diagnostics with file:line:column positions, and the error hierarchy."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    message: str
    filename: str = ""
    line: int = 0
    col: int = 0

    def format(self) -> str:
        where = f"{self.filename or '<input>'}:{self.line}:{self.col}"
        return f"{where}: {self.severity}: {self.message}"


class DiagramError(Exception):
    """Base for compilation failures; carries a positioned diagnostic."""

    def __init__(self, diagnostic: Diagnostic) -> None:
        super().__init__(diagnostic.format())
        self.diagnostic = diagnostic


class ParseError(DiagramError):
    """Malformed source text."""


class ExpandError(DiagramError):
    """A command whose geometry cannot be built (degenerate, bad arity)."""


class LayoutError(DiagramError):
    """Geometry that cannot be drawn (empty diagram, overlapping objects)."""
