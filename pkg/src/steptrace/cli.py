"""Command-line interface.

Exit codes: 0 success, 2 source or document problems, 3 the traced
program hit a runtime error, 4 the trace was truncated at the frame
limit.  Codes 3 and 4 still write the trace; they only signal how the
run ended.
"""

from __future__ import annotations

import argparse
import json
import sys
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .interpreter import InterpreterOptions, run, stream_run
from .source import FrontendError
from .trace import (
    SchemaViolation, VersionMismatch, deserialize, serialize, serialize_stream,
    validate_document,
)
from .validate import compile_source

PACKAGED_UI = Path(__file__).parent / "web"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steptrace",
        description="Run teaching-subset C++ and record every step as a trace.")
    sub = parser.add_subparsers(dest="command", required=True)

    trace = sub.add_parser("trace", help="execute a program and write its trace")
    trace.add_argument("file", help="source file to trace")
    trace.add_argument("--out", help="trace destination (default: stdout)")
    trace.add_argument("--max-frames", type=int, default=10_000,
                       help="frame budget before truncation (default 10000)")
    trace.add_argument("--hash-buckets", type=int, default=6,
                       help="bucket count for unordered_map (default 6)")
    trace.add_argument("--no-substeps", action="store_true",
                       help="collapse map-internal steps into statement frames")
    trace.add_argument("--stream-chunk", type=int, default=None,
                       help="write the trace incrementally, this many frames at a time")
    trace.add_argument("--stdin-file",
                       help="file whose contents the program reads via cin")
    trace.set_defaults(handler=cmd_trace)

    check = sub.add_parser("check", help="parse and validate a program")
    check.add_argument("file", help="source file to check")
    check.set_defaults(handler=cmd_check)

    validate = sub.add_parser("validate", help="check a trace document")
    validate.add_argument("file", help="trace file to validate")
    validate.set_defaults(handler=cmd_validate)

    serve = sub.add_parser("serve", help="serve a trace plus the browser stepper")
    serve.add_argument("file", help="trace file to serve at /trace")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--ui-dir", default=None,
                       help="directory with the stepper bundle (default: packaged page)")
    serve.set_defaults(handler=cmd_serve)
    return parser


def _load_program(path: str):
    source = Path(path).read_text(encoding="utf-8")
    return compile_source(source)


def _print_diagnostics(error: FrontendError) -> None:
    for diagnostic in error.diagnostics:
        print(diagnostic.render(), file=sys.stderr)


def cmd_trace(args) -> int:
    try:
        program = _load_program(args.file)
        options = InterpreterOptions(
            max_frames=args.max_frames,
            substeps=not args.no_substeps,
            hash_buckets=args.hash_buckets,
            stdin_text=Path(args.stdin_file).read_text(encoding="utf-8")
            if args.stdin_file else "",
            stream_chunk=args.stream_chunk,
        )
    except FrontendError as error:
        _print_diagnostics(error)
        return 2
    except ValueError as error:
        print("error: %s" % error, file=sys.stderr)
        return 2

    last_termination = {}

    def chunks():
        for chunk in stream_run(program, options):
            last_termination.update(chunk[-1].termination or {})
            yield chunk

    payload = serialize_stream(program.source_text, options.to_wire(), chunks())
    if args.out:
        with open(args.out, "wb") as sink:
            for piece in payload:
                sink.write(piece)
    else:
        for piece in payload:
            sys.stdout.buffer.write(piece)
        sys.stdout.buffer.write(b"\n")
        sys.stdout.buffer.flush()
    status = last_termination.get("status")
    if status == "runtimeError":
        print("runtime error: %s" % last_termination.get("message"), file=sys.stderr)
        return 3
    if status == "truncated":
        print("trace truncated at %d frames" % options.max_frames, file=sys.stderr)
        return 4
    return 0


def cmd_check(args) -> int:
    try:
        program = _load_program(args.file)
    except FrontendError as error:
        _print_diagnostics(error)
        return 2
    print("OK: %d function(s)" % len(program.functions))
    return 0


def _load_document(path: str):
    data = Path(path).read_bytes()
    return data, deserialize(data)


def cmd_validate(args) -> int:
    try:
        _, doc = _load_document(args.file)
    except (SchemaViolation, VersionMismatch) as error:
        print("invalid trace: %s" % error, file=sys.stderr)
        return 2
    issues = validate_document(doc)
    for issue in issues:
        print("%s at %s: %s" % (issue.kind, issue.path, issue.message), file=sys.stderr)
    if issues:
        return 2
    print("OK: %d frame(s)" % len(doc.frames))
    return 0


def cmd_serve(args) -> int:
    try:
        data, doc = _load_document(args.file)
    except (SchemaViolation, VersionMismatch) as error:
        print("refusing to serve invalid trace: %s" % error, file=sys.stderr)
        return 2
    issues = validate_document(doc)
    if issues:
        for issue in issues:
            print("%s at %s: %s" % (issue.kind, issue.path, issue.message),
                  file=sys.stderr)
        return 2
    ui_dir = Path(args.ui_dir) if args.ui_dir else PACKAGED_UI
    if not ui_dir.is_dir():
        print("error: UI directory %s does not exist" % ui_dir, file=sys.stderr)
        return 2
    server = make_server(args.port, data, ui_dir)
    print("serving trace on http://127.0.0.1:%d/ (Ctrl+C to stop)"
          % server.server_address[1], file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def make_server(port: int, trace_bytes: bytes, ui_dir: Path) -> ThreadingHTTPServer:
    """HTTP server: /trace is the document, everything else is the UI."""

    class Handler(SimpleHTTPRequestHandler):
        def __init__(self, *handler_args, **handler_kwargs):
            super().__init__(*handler_args, directory=str(ui_dir), **handler_kwargs)

        def do_GET(self):
            if self.path.split("?")[0] == "/trace":
                self.send_response(200)
                self.send_header("Content-Type", "application/json; charset=utf-8")
                self.send_header("Content-Length", str(len(trace_bytes)))
                self.send_header("Access-Control-Allow-Origin", "*")
                self.end_headers()
                self.wfile.write(trace_bytes)
                return
            if self.path.split("?")[0] == "/healthz":
                body = b"ok"
                self.send_response(200)
                self.send_header("Content-Type", "text/plain")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
                return
            super().do_GET()

        def log_message(self, format, *log_args):
            pass

    return ThreadingHTTPServer(("127.0.0.1", port), Handler)


if __name__ == "__main__":
    sys.exit(main())
