"""steptrace: an instrumented interpreter for a C++ teaching subset.

The pipeline has three stages, each usable on its own:

  * frontend   - tokenize / parse / validate source into a Program
  * interpreter - run or stream_run a Program into trace frames
  * trace      - serialize, check, and page trace documents

The CLI (``steptrace``) wires the stages together and can serve a
trace to the browser stepper.
"""

from .ast import Program, TypeTag, span_of
from .containers import AccessEvent, apply_events
from .interpreter import InterpreterOptions, RuntimeFailure, run, stream_run
from .lexer import Token, tokenize
from .parser import parse
from .source import Diagnostic, FrontendError, SourceSpan
from .trace import (
    FORMAT_VERSION, DocIssue, RangeError, SchemaViolation, TraceDocument,
    TraceFrame, VersionMismatch, deserialize, peek_usage, serialize,
    serialize_stream, validate_document, window,
)
from .validate import compile_source, validate_program

__version__ = "0.1.0"

__all__ = [
    "AccessEvent",
    "Diagnostic",
    "DocIssue",
    "FORMAT_VERSION",
    "FrontendError",
    "InterpreterOptions",
    "Program",
    "RangeError",
    "RuntimeFailure",
    "SchemaViolation",
    "SourceSpan",
    "Token",
    "TraceDocument",
    "TraceFrame",
    "TypeTag",
    "VersionMismatch",
    "apply_events",
    "compile_source",
    "deserialize",
    "parse",
    "peek_usage",
    "run",
    "serialize",
    "serialize_stream",
    "span_of",
    "stream_run",
    "tokenize",
    "validate_document",
    "validate_program",
    "window",
]
