"""Diagnostic records shared by the syntax checker and the document validator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .model import Location

ERROR = "error"
WARNING = "warning"

# Source-level codes (carry line/column).
MISSING_TITLE = "MISSING_TITLE"
NO_SECTION = "NO_SECTION"
NO_RELATION = "NO_RELATION"
DUP_ID = "DUP_ID"
UNKNOWN_DIRECTIVE = "UNKNOWN_DIRECTIVE"
UNEXPECTED_DIRECTIVE = "UNEXPECTED_DIRECTIVE"
UNCLOSED_BLOCK = "UNCLOSED_BLOCK"
BLOCK_AFTER_SUBSECTION = "BLOCK_AFTER_SUBSECTION"
BAD_VERSION_LINE = "BAD_VERSION_LINE"
EMPTY_PACKET = "EMPTY_PACKET"
NO_PACKET = "NO_PACKET"
MISSING_CPR = "MISSING_CPR"
UNSUPPORTED_SYNTAX = "UNSUPPORTED_SYNTAX"
UNBALANCED_TERM = "UNBALANCED_TERM"
MISSING_PERIOD = "MISSING_PERIOD"

# Document-level codes (carry a Location).
DANGLING_CPR = "DANGLING_CPR"
DANGLING_DEF = "DANGLING_DEF"
ARITY_MISMATCH = "ARITY_MISMATCH"
HEAD_MISMATCH = "HEAD_MISMATCH"
GOAL_PACKET_HEAD = "GOAL_PACKET_HEAD"
DUP_VERSION = "DUP_VERSION"
BAD_ROOT = "BAD_ROOT"
FOREIGN_PACKET = "FOREIGN_PACKET"
STALE_BINDING = "STALE_BINDING"
BINDING_DIVERGED = "BINDING_DIVERGED"
CHAIN_BROKEN = "CHAIN_BROKEN"


@dataclass(frozen=True)
class Diagnostic:
    """One problem found in a source file or a parsed document.

    Syntax-level diagnostics point into the source with ``line``/``column``
    (both 1-based); structural diagnostics produced after parsing carry the
    ``location`` of the offending block instead.
    """

    code: str
    message: str
    severity: str = ERROR
    line: int | None = None
    column: int | None = None
    location: "Location | None" = None

    def render(self) -> str:
        where = ""
        if self.line is not None:
            where = f"{self.line}:{self.column or 1}: "
        elif self.location is not None:
            where = f"{self.location.label()}: "
        return f"{where}{self.severity}: {self.code}: {self.message}"


def errors(diags: list[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diags if d.severity == ERROR]
