"""Source positions and diagnostics.

Every token, syntax tree node, and trace frame points back into the
original source text through a SourceSpan.  Lines and columns are
1-based and spans are inclusive on both ends.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def merge(self, other: "SourceSpan") -> "SourceSpan":
        """Smallest span covering both inputs."""
        start = min((self.start_line, self.start_col), (other.start_line, other.start_col))
        end = max((self.end_line, self.end_col), (other.end_line, other.end_col))
        return SourceSpan(start[0], start[1], end[0], end[1])

    def to_wire(self) -> list[int]:
        return [self.start_line, self.start_col, self.end_line, self.end_col]

    @staticmethod
    def from_wire(raw: list[int]) -> "SourceSpan":
        return SourceSpan(raw[0], raw[1], raw[2], raw[3])

    def is_ordered(self) -> bool:
        return (self.start_line, self.start_col) <= (self.end_line, self.end_col)


def slice_source(source: str, span: SourceSpan) -> str:
    """Text covered by a span.  Multi-line slices keep the newlines."""
    lines = source.split("\n")
    if span.start_line == span.end_line:
        line = lines[span.start_line - 1]
        return line[span.start_col - 1 : span.end_col]
    parts = [lines[span.start_line - 1][span.start_col - 1 :]]
    parts.extend(lines[span.start_line : span.end_line - 1])
    parts.append(lines[span.end_line - 1][: span.end_col])
    return "\n".join(parts)


@dataclass(frozen=True)
class Diagnostic:
    """A problem found in the subject program, anchored to a span."""

    severity: str  # "error" or "warning"
    kind: str  # stable machine-readable id, e.g. "SyntaxError"
    message: str
    span: SourceSpan

    def render(self) -> str:
        return "%d:%d: %s[%s]: %s" % (
            self.span.start_line,
            self.span.start_col,
            self.severity,
            self.kind,
            self.message,
        )


class FrontendError(Exception):
    """Raised when the source cannot be turned into a program.

    Lexing and parsing stop at the first problem; semantic validation
    collects everything it can, so ``diagnostics`` may hold several
    entries.
    """

    def __init__(self, diagnostics: list[Diagnostic]):
        assert diagnostics
        super().__init__(diagnostics[0].render())
        self.diagnostics = diagnostics
