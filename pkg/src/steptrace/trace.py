"""Trace documents: the JSON wire format consumed by renderers.

A trace is a list of frames, each one a complete picture of the
machine after one step: execution stacks, container snapshots, access
events, and accumulated stdout.  Serialization is canonical (compact
separators, fixed key order, UTF-8), so equal documents always produce
equal bytes, and the streaming serializer is defined to concatenate to
exactly the batch bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .containers import AccessEvent
from .source import SourceSpan

FORMAT_VERSION = "1.0.0"
SUPPORTED_MAJOR = 1

TERMINATION_STATUSES = ("finished", "runtimeError", "truncated")

# Every kind a runtimeError termination can carry. MissingReturnValue only
# occurs when the static checks were skipped (run on a parsed-but-unvalidated
# program); the others are reachable from fully validated source.
RUNTIME_ERROR_KINDS = (
    "IndexOutOfBounds",
    "EmptyContainerAccess",
    "DivisionByZero",
    "IntegerOverflow",
    "NonFiniteResult",
    "InputExhausted",
    "InputMalformed",
    "RecursionDepthExceeded",
    "MissingReturnValue",
)


class SchemaViolation(Exception):
    """Raised when bytes do not describe a well-formed trace document."""

    def __init__(self, path: str, reason: str):
        super().__init__("%s: %s" % (path, reason))
        self.path = path
        self.reason = reason


class VersionMismatch(Exception):
    def __init__(self, found: str, supported_major: int = SUPPORTED_MAJOR):
        super().__init__("document version %s needs major %d" % (found, supported_major))
        self.found = found
        self.supported_major = supported_major


class RangeError(ValueError):
    """An index or window outside the document."""


@dataclass
class TraceFrame:
    index: int
    span: SourceSpan
    explanation: str
    stacks: list  # wire-shaped function frames, outermost first
    containers: list  # wire-shaped container snapshots, in creation order
    events: list  # AccessEvents tied to this frame
    stdout: str  # everything printed so far
    termination: Optional[dict] = None

    def to_wire(self) -> dict:
        return {
            "index": self.index,
            "span": self.span.to_wire(),
            "explanation": self.explanation,
            "stacks": self.stacks,
            "containers": self.containers,
            "events": [e.to_wire() for e in self.events],
            "stdout": self.stdout,
            "termination": self.termination,
        }


@dataclass
class TraceDocument:
    format_version: str
    source: str
    options: dict  # wire-shaped interpreter options
    frames: list[TraceFrame]


# === Canonical serialization ===


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False, allow_nan=False)


def serialize(doc: TraceDocument) -> bytes:
    """Canonical bytes for a document."""
    return b"".join(serialize_stream(doc.source, doc.options,
                                     iter([doc.frames]), doc.format_version))


def serialize_stream(source: str, options: dict,
                     frame_chunks: Iterable[list[TraceFrame]],
                     format_version: str = FORMAT_VERSION) -> Iterator[bytes]:
    """Incremental serialization.

    Yields a header, then one bytes object per non-empty chunk, then a
    footer.  Concatenating everything gives byte-for-byte the result
    of serialize() on the assembled document.
    """
    head = _dumps({"formatVersion": format_version, "source": source, "options": options})
    yield (head[:-1] + ',"frames":[').encode("utf-8")
    first = True
    for chunk in frame_chunks:
        if not chunk:
            continue
        body = ",".join(_dumps(frame.to_wire()) for frame in chunk)
        if not first:
            body = "," + body
        first = False
        yield body.encode("utf-8")
    yield b"]}"


# === Deserialization with schema checking ===


def deserialize(data) -> TraceDocument:
    """Parse and structurally check trace bytes.

    Raises SchemaViolation with a JSON path on malformed input and
    VersionMismatch when the major version is unsupported.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaViolation("$", "not valid JSON: %s" % exc) from None
    top = _Check("$", raw).object(["formatVersion", "source", "options", "frames"])
    version = _Check("$.formatVersion", top["formatVersion"]).string()
    _check_version(version)
    source = _Check("$.source", top["source"]).string()
    options = _check_options(top["options"])
    frames_raw = _Check("$.frames", top["frames"]).array()
    frames = [_check_frame(f, "$.frames[%d]" % i) for i, f in enumerate(frames_raw)]
    return TraceDocument(version, source, options, frames)


def _check_version(version: str) -> None:
    parts = version.split(".")
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise SchemaViolation("$.formatVersion", "expected MAJOR.MINOR.PATCH, got %r" % version)
    if int(parts[0]) != SUPPORTED_MAJOR:
        raise VersionMismatch(version)


class _Check:
    """Tiny schema helper carrying a JSON path for error messages."""

    def __init__(self, path: str, value):
        self.path = path
        self.value = value

    def fail(self, reason: str):
        raise SchemaViolation(self.path, reason)

    def object(self, required: list[str]) -> dict:
        if not isinstance(self.value, dict):
            self.fail("expected an object")
        for key in required:
            if key not in self.value:
                self.fail("missing key %r" % key)
        for key in self.value:
            if key not in required:
                self.fail("unexpected key %r" % key)
        return self.value

    def array(self) -> list:
        if not isinstance(self.value, list):
            self.fail("expected an array")
        return self.value

    def string(self) -> str:
        if not isinstance(self.value, str):
            self.fail("expected a string")
        return self.value

    def integer(self) -> int:
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            self.fail("expected an integer")
        return self.value

    def boolean(self) -> bool:
        if not isinstance(self.value, bool):
            self.fail("expected a boolean")
        return self.value


def _check_options(raw) -> dict:
    keys = ["maxFrames", "substeps", "hashBuckets", "stdin", "streamChunk"]
    obj = _Check("$.options", raw).object(keys)
    _Check("$.options.maxFrames", obj["maxFrames"]).integer()
    _Check("$.options.substeps", obj["substeps"]).boolean()
    _Check("$.options.hashBuckets", obj["hashBuckets"]).integer()
    _Check("$.options.stdin", obj["stdin"]).string()
    if obj["streamChunk"] is not None:
        _Check("$.options.streamChunk", obj["streamChunk"]).integer()
    return obj


def _check_span(raw, path: str) -> SourceSpan:
    arr = _Check(path, raw).array()
    if len(arr) != 4 or any(isinstance(v, bool) or not isinstance(v, int) for v in arr):
        raise SchemaViolation(path, "span must be four integers")
    if min(arr) < 1:
        raise SchemaViolation(path, "span positions are 1-based")
    return SourceSpan.from_wire(arr)


_SCALAR_TYPES = (int, float, str, bool)


def _check_frame(raw, path: str) -> TraceFrame:
    keys = ["index", "span", "explanation", "stacks", "containers",
            "events", "stdout", "termination"]
    obj = _Check(path, raw).object(keys)
    index = _Check(path + ".index", obj["index"]).integer()
    span = _check_span(obj["span"], path + ".span")
    explanation = _Check(path + ".explanation", obj["explanation"]).string()
    stacks = [_check_stack(s, "%s.stacks[%d]" % (path, i))
              for i, s in enumerate(_Check(path + ".stacks", obj["stacks"]).array())]
    containers = [_check_container(c, "%s.containers[%d]" % (path, i))
                  for i, c in enumerate(_Check(path + ".containers", obj["containers"]).array())]
    events = [_check_event(e, "%s.events[%d]" % (path, i))
              for i, e in enumerate(_Check(path + ".events", obj["events"]).array())]
    stdout = _Check(path + ".stdout", obj["stdout"]).string()
    termination = _check_termination(obj["termination"], path + ".termination")
    return TraceFrame(index, span, explanation, stacks, containers, events,
                      stdout, termination)


def _check_stack(raw, path: str) -> dict:
    obj = _Check(path, raw).object(["function", "callSite", "active", "scopes"])
    _Check(path + ".function", obj["function"]).string()
    if obj["callSite"] is not None:
        _check_span(obj["callSite"], path + ".callSite")
    _Check(path + ".active", obj["active"]).boolean()
    scopes = _Check(path + ".scopes", obj["scopes"]).array()
    for i, scope in enumerate(scopes):
        spath = "%s.scopes[%d]" % (path, i)
        for j, var in enumerate(_Check(spath, scope).array()):
            vpath = "%s[%d]" % (spath, j)
            vobj = _Check(vpath, var).object(["name", "type", "value"])
            _Check(vpath + ".name", vobj["name"]).string()
            _Check(vpath + ".type", vobj["type"]).string()
            value = vobj["value"]
            if isinstance(value, dict):
                ref = _Check(vpath + ".value", value).object(["ref"])
                _Check(vpath + ".value.ref", ref["ref"]).string()
            elif not isinstance(value, _SCALAR_TYPES):
                raise SchemaViolation(vpath + ".value", "expected a scalar or {ref}")
    return obj


def _check_container(raw, path: str) -> dict:
    check = _Check(path, raw)
    if not isinstance(raw, dict) or "kind" not in raw:
        check.fail("expected a container snapshot with a kind")
    kind = raw["kind"]
    if kind in ("vector", "stack", "queue", "deque"):
        obj = check.object(["id", "name", "kind", "elemType", "values"])
        _Check(path + ".values", obj["values"]).array()
    elif kind == "map":
        obj = check.object(["id", "name", "kind", "keyType", "valueType", "root", "nodes"])
        for i, node in enumerate(_Check(path + ".nodes", obj["nodes"]).array()):
            _Check("%s.nodes[%d]" % (path, i), node).object(
                ["id", "key", "value", "left", "right"])
    elif kind == "unordered_map":
        obj = check.object(["id", "name", "kind", "keyType", "valueType", "buckets"])
        for i, chain in enumerate(_Check(path + ".buckets", obj["buckets"]).array()):
            _Check("%s.buckets[%d]" % (path, i), chain).array()
    else:
        check.fail("unknown container kind %r" % kind)
    _Check(path + ".id", obj["id"]).string()
    _Check(path + ".name", obj["name"]).string()
    return obj


def _check_event(raw, path: str) -> AccessEvent:
    obj = _Check(path, raw).object(["container", "kind", "target", "step", "edit"])
    _Check(path + ".container", obj["container"]).string()
    kind = _Check(path + ".kind", obj["kind"]).string()
    if kind not in ("read", "write", "delete"):
        raise SchemaViolation(path + ".kind", "unknown event kind %r" % kind)
    if not isinstance(obj["target"], dict):
        raise SchemaViolation(path + ".target", "expected an object")
    if obj["step"] is not None:
        _Check(path + ".step", obj["step"]).integer()
    if kind != "read" and not isinstance(obj["edit"], dict):
        raise SchemaViolation(path + ".edit", "write/delete events must carry an edit")
    return AccessEvent.from_wire(obj)


def _check_termination(raw, path: str) -> Optional[dict]:
    if raw is None:
        return None
    obj = _Check(path, raw)
    if not isinstance(raw, dict) or "status" not in raw:
        obj.fail("expected a termination object with a status")
    status = raw["status"]
    if status == "finished":
        obj.object(["status", "exitCode"])
        _Check(path + ".exitCode", raw["exitCode"]).integer()
    elif status == "runtimeError":
        obj.object(["status", "kind", "message"])
        _Check(path + ".kind", raw["kind"]).string()
        _Check(path + ".message", raw["message"]).string()
    elif status == "truncated":
        obj.object(["status"])
    else:
        obj.fail("unknown termination status %r" % status)
    return raw


# === Document-level validation ===


@dataclass(frozen=True)
class DocIssue:
    """A consistency problem in an otherwise well-formed document."""

    kind: str
    path: str
    message: str


def validate_document(doc: TraceDocument) -> list[DocIssue]:
    """Check cross-frame invariants.  Empty list means consistent."""
    issues: list[DocIssue] = []
    if not doc.frames:
        issues.append(DocIssue("EmptyDocument", "$.frames", "a trace has at least one frame"))
        return issues
    line_count = doc.source.count("\n") + 1
    lines = doc.source.split("\n")
    for i, frame in enumerate(doc.frames):
        path = "$.frames[%d]" % i
        if frame.index != i:
            issues.append(DocIssue("ContiguityViolation", path + ".index",
                                   "expected index %d, found %d" % (i, frame.index)))
        _check_frame_span(frame.span, lines, line_count, path, issues)
        _check_active_flags(frame, path, issues)
        last = i == len(doc.frames) - 1
        if last and frame.termination is None:
            issues.append(DocIssue("TerminationMissing", path + ".termination",
                                   "final frame must carry a termination"))
        if not last and frame.termination is not None:
            issues.append(DocIssue("TerminationMisplaced", path + ".termination",
                                   "only the final frame may carry a termination"))
        previous = doc.frames[i - 1] if i else None
        _check_event_targets(frame, previous, path, issues)
        if previous is not None:
            if not frame.stdout.startswith(previous.stdout):
                issues.append(DocIssue("StdoutRegression", path + ".stdout",
                                       "stdout must grow monotonically"))
            _check_stack_continuity(previous, frame, path, issues)
    if len(doc.frames) > doc.options.get("maxFrames", len(doc.frames)):
        issues.append(DocIssue("FrameBudgetExceeded", "$.frames",
                               "more frames than options.maxFrames"))
    return issues


def _check_frame_span(span: SourceSpan, lines: list[str], line_count: int,
                      path: str, issues: list[DocIssue]) -> None:
    if not span.is_ordered() or span.end_line > line_count:
        issues.append(DocIssue("SpanOutOfBounds", path + ".span",
                               "span %s does not fit the source" % span.to_wire()))
        return
    for line, col in ((span.start_line, span.start_col), (span.end_line, span.end_col)):
        if col > max(1, len(lines[line - 1])):
            issues.append(DocIssue("SpanOutOfBounds", path + ".span",
                                   "column %d past end of line %d" % (col, line)))
            return


def _check_active_flags(frame: TraceFrame, path: str, issues: list[DocIssue]) -> None:
    if not frame.stacks:
        return
    active = [i for i, s in enumerate(frame.stacks) if s["active"]]
    if active != [len(frame.stacks) - 1]:
        issues.append(DocIssue("ActiveFrameViolation", path + ".stacks",
                               "exactly the innermost function frame must be active"))


def _check_stack_continuity(prev: TraceFrame, cur: TraceFrame, path: str,
                            issues: list[DocIssue]) -> None:
    """Outer frames must be untouched while inner ones run.

    Between consecutive frames the stack may grow or shrink by at most
    one function frame, and every retained frame except the innermost
    must be identical.  The start frame shows no stacks at all, so
    growth from an empty picture is unconstrained: when the first
    statement is itself a call, main and the callee appear together.
    """
    if not prev.stacks:
        return
    if abs(len(cur.stacks) - len(prev.stacks)) > 1:
        issues.append(DocIssue("StackDiscontinuity", path + ".stacks",
                               "stack depth changed by more than one"))
        return
    shared = min(len(prev.stacks), len(cur.stacks))
    for i in range(shared - 1):
        if prev.stacks[i] != cur.stacks[i]:
            issues.append(DocIssue("StackDiscontinuity",
                                   "%s.stacks[%d]" % (path, i),
                                   "outer function frame changed while inner frames ran"))
            return


def _snapshot_has_target(snapshot: dict, target: dict) -> bool:
    kind = snapshot["kind"]
    if kind in ("vector", "stack", "queue", "deque"):
        return 0 <= target.get("index", -1) < len(snapshot["values"])
    if kind == "map":
        return any(n["id"] == target.get("node") for n in snapshot["nodes"])
    b = target.get("bucket", -1)
    return (0 <= b < len(snapshot["buckets"])
            and 0 <= target.get("pos", -1) < len(snapshot["buckets"][b]))


def _check_event_targets(frame: TraceFrame, previous: Optional[TraceFrame],
                         path: str, issues: list[DocIssue]) -> None:
    """Targets must exist in this frame or the one before it.

    A document's first frame has no predecessor (windows can start
    anywhere), so only the container itself is required there.
    """
    current = {c["id"]: c for c in frame.containers}
    before = {c["id"]: c for c in previous.containers} if previous else {}
    for j, event in enumerate(frame.events):
        epath = "%s.events[%d]" % (path, j)
        snapshots = [s for s in (current.get(event.container), before.get(event.container))
                     if s is not None]
        if not snapshots:
            issues.append(DocIssue("DanglingEventTarget", epath + ".container",
                                   "event names unknown container %r" % event.container))
            continue
        if previous is None:
            continue
        if not any(_snapshot_has_target(s, event.target) for s in snapshots):
            issues.append(DocIssue("DanglingEventTarget", epath + ".target",
                                   "target %s not present in this or the previous frame"
                                   % event.target))


# === Paging helpers ===


def window(doc: TraceDocument, start: int, stop: int) -> TraceDocument:
    """A sub-document holding frames [start, stop), re-indexed from 0.

    If the cut drops the original ending, the last kept frame is
    re-stamped as truncated so the result is still a valid document.
    """
    if not 0 <= start < stop <= len(doc.frames):
        raise RangeError("window [%d, %d) outside document of %d frames"
                         % (start, stop, len(doc.frames)))
    frames = []
    for offset, frame in enumerate(doc.frames[start:stop]):
        frames.append(TraceFrame(offset, frame.span, frame.explanation,
                                 frame.stacks, frame.containers, frame.events,
                                 frame.stdout, frame.termination))
    if frames[-1].termination is None:
        frames[-1].termination = {"status": "truncated"}
    return TraceDocument(doc.format_version, doc.source, doc.options, frames)


def peek_usage(doc: TraceDocument, container_id: str, start: int,
               horizon: int = 50) -> bool:
    """Will this container be touched in the next ``horizon`` frames?

    Lets a renderer fade out containers that stay idle.  Scans events
    of frames [start, start+horizon), clamped to the document end.
    """
    if not 0 <= start < len(doc.frames):
        raise RangeError("frame %d outside document of %d frames"
                         % (start, len(doc.frames)))
    if horizon < 0:
        raise RangeError("horizon must be non-negative")
    stop = min(len(doc.frames), start + horizon)
    for frame in doc.frames[start:stop]:
        for event in frame.events:
            if event.container == container_id:
                return True
    return False
