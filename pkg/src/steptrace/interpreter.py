"""Tree-walking interpreter that narrates execution as trace frames.

Frame policy: one frame after each statement takes effect, plus one
frame per container-internal step of map operations when substeps are
enabled, one frame when a non-main call starts, one frame at program
start, and exactly one terminal frame.  The machine runs on a worker
thread with a large stack so subject recursion up to the call-depth
cap never exhausts the host stack.

Numeric semantics follow the source language: 64-bit signed ints with
overflow as a runtime error, truncating division, doubles printed via
the usual six-significant-digit default.
"""

from __future__ import annotations

import copy
import queue
import sys
import threading
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from . import ast
from .ast import (
    Assign, Binary, Block, Call, Endl, Expr, ExprStmt, For, FunctionDef, If,
    IndexAccess, Literal, MethodCall, PairLiteral, Print, Program, Read,
    Return, Stmt, TypeTag, Unary, VarDecl, VarRef, While,
)
from .containers import (
    AccessEvent, ContainerError, apply_events, call_method, default_value,
    make_container,
)
from .source import SourceSpan, slice_source
from .trace import FORMAT_VERSION, TraceDocument, TraceFrame

INT_MIN = -(2 ** 63)
INT_MAX = 2 ** 63 - 1
MAX_CALL_DEPTH = 500

_PY_RECURSION_LIMIT = 200_000
_WORKER_STACK_BYTES = 256 * 1024 * 1024


@dataclass
class InterpreterOptions:
    max_frames: int = 10_000
    substeps: bool = True
    hash_buckets: int = 6
    stdin_text: str = ""
    stream_chunk: Optional[int] = None

    def __post_init__(self):
        if self.max_frames < 2:
            raise ValueError("max_frames must be at least 2")
        if self.hash_buckets < 1:
            raise ValueError("hash_buckets must be at least 1")
        if self.stream_chunk is not None and self.stream_chunk < 1:
            raise ValueError("stream_chunk must be at least 1 when set")

    def to_wire(self) -> dict:
        return {
            "maxFrames": self.max_frames,
            "substeps": self.substeps,
            "hashBuckets": self.hash_buckets,
            "stdin": self.stdin_text,
            "streamChunk": self.stream_chunk,
        }


# Explanation templates; docs/templates.md describes each one.
TEMPLATES = {
    "start": "Starting program execution",
    "finish": "Program finished with exit code {code}",
    "truncated": "Frame limit reached, trace truncated",
    "runtime-error": "Runtime error: {message}",
    "declare": "Declaring {type} variable {name}",
    "declare-init": "Declaring {type} variable {name} and initializing it to {value}",
    "declare-container": "Creating empty {type} {name}",
    "assign": "Assigning {value} to {target}",
    "cond-true-branch": "Condition {cond} is true, taking the if branch",
    "cond-false-branch": "Condition {cond} is false, taking the else branch",
    "cond-false-skip": "Condition {cond} is false, skipping the if body",
    "loop-true": "Condition {cond} is true, entering the loop body",
    "loop-false": "Condition {cond} is false, leaving the loop",
    "return-value": "Returning {value} from {function}",
    "return-void": "Returning from {function}",
    "call": "Calling {function}({args})",
    "print": "Printing {text}",
    "read": "Reading {bindings} from input",
    "scope-enter": "Entering a new scope",
    "method-append": "Appending {value} to {name}",
    "method-prepend": "Prepending {value} to {name}",
    "method-push": "Pushing {value} onto {name}",
    "method-pop-back": "Removing the last element of {name}",
    "method-pop-front": "Removing the front element of {name}",
    "method-pop-top": "Removing the top of {name}",
    "method-insert": "Inserting key {key} with value {value} into {name}",
    "method-erase": "Erasing key {key} from {name}",
    "method-erase-miss": "Erasing key {key} from {name} (not present)",
    "method-generic": "Calling {name}.{method}({args})",
    "bst-compare": "Searching {name}: comparing key {key} with key {other}",
    "bst-attach": "Adding key {key} to {name} as a new node",
    "bst-update": "Updating the value stored for key {key} in {name}",
    "bst-relink": "Rewiring links of the node holding key {key} in {name}",
    "bst-remove": "Removing the node holding key {key} from {name}",
    "hash-compare": "Searching bucket {bucket} of {name}: comparing key {key} with key {other}",
    "hash-place": "Placing key {key} in bucket {bucket} of {name}",
    "hash-update": "Updating the value stored for key {key} in bucket {bucket} of {name}",
    "hash-remove": "Removing key {key} from bucket {bucket} of {name}",
}


def explain(template: str, **values: str) -> str:
    return TEMPLATES[template].format(**values)


class RuntimeFailure(Exception):
    """Subject-program runtime error; becomes the terminal frame."""

    def __init__(self, kind: str, message: str, span: SourceSpan):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.span = span


class Char(str):
    """Runtime char value.  A str subclass so JSON and comparisons just work."""


class _Ref:
    """Runtime value of a container variable: a handle into the registry."""

    __slots__ = ("cid",)

    def __init__(self, cid: str):
        self.cid = cid


class _ReturnSignal(Exception):
    def __init__(self, value):
        self.value = value


class _FrameLimit(Exception):
    """Internal: the next regular frame would exceed the budget."""


# === Value helpers ===


def display_value(value) -> str:
    """How values appear inside explanations and rendered stacks."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Char):
        return ast.render_literal(ast.Literal(str(value), "char", None))
    if isinstance(value, str):
        return ast.render_literal(ast.Literal(value, "string", None))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def stdout_format(value) -> str:
    """cout semantics: bools as 1/0, doubles with %g formatting."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "%g" % value
    return str(value)


def _wire_value(value):
    if isinstance(value, _Ref):
        return {"ref": value.cid}
    if isinstance(value, Char):
        return str(value)
    return value


# === Input scanning ===

_WS = " \t\r\n"


class _InputScanner:
    """cin-style extraction from the configured stdin text."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in _WS:
            self.pos += 1

    def _require_more(self, span: SourceSpan) -> None:
        self._skip_ws()
        if self.pos >= len(self.text):
            raise RuntimeFailure("InputExhausted", "no more input to read", span)

    def read(self, kind: str, span: SourceSpan):
        self._require_more(span)
        if kind == "int":
            return self._read_int(span)
        if kind == "double":
            return self._read_double(span)
        if kind == "char":
            return Char(self._take())
        return self._read_word()

    def _take(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        return ch

    def _read_word(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _WS:
            self.pos += 1
        return self.text[start:self.pos]

    def _read_int(self, span: SourceSpan) -> int:
        start = self.pos
        if self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            raise RuntimeFailure("InputMalformed",
                                 "expected an integer in the input", span)
        value = int(self.text[start:self.pos])
        if not INT_MIN <= value <= INT_MAX:
            raise RuntimeFailure("IntegerOverflow",
                                 "integer input does not fit in 64 bits", span)
        return value

    def _read_double(self, span: SourceSpan) -> float:
        start = self.pos
        if self.text[self.pos] in "+-":
            self.pos += 1
        digits = 0
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
            digits += 1
        if self.pos < len(self.text) and self.text[self.pos] == ".":
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
                digits += 1
        if digits == 0:
            self.pos = start
            raise RuntimeFailure("InputMalformed",
                                 "expected a number in the input", span)
        return float(self.text[start:self.pos])


# === Execution state ===


class _Scope:
    __slots__ = ("vars", "owned")

    def __init__(self):
        self.vars: dict[str, list] = {}  # name -> [TypeTag, value]
        self.owned: list[str] = []  # container ids to destroy on exit


class _FunctionFrame:
    __slots__ = ("function", "call_site", "scopes")

    def __init__(self, function: str, call_site: Optional[SourceSpan]):
        self.function = function
        self.call_site = call_site
        self.scopes: list[_Scope] = [_Scope()]  # parameter scope


class _Machine:
    def __init__(self, program: Program, options: InterpreterOptions,
                 sink: Callable[[TraceFrame], None]):
        self.program = program
        self.options = options
        self.sink = sink
        self.stacks: list[_FunctionFrame] = []
        self.containers: dict[str, object] = {}  # cid -> state, creation order
        self.next_cid = 0
        self.stdout_parts: list[str] = []
        self.stdin = _InputScanner(options.stdin_text)
        self.frame_count = 0
        self.pending_events: list[AccessEvent] = []
        self.last_span: Optional[SourceSpan] = None
        self._lowered: dict[int, Block] = {}  # cache of for-loop rewrites

    # --- frame emission ---

    def emit(self, span: SourceSpan, explanation: str,
             events: Optional[list[AccessEvent]] = None,
             termination: Optional[dict] = None,
             override: Optional[dict] = None) -> None:
        if termination is None and self.frame_count >= self.options.max_frames - 1:
            raise _FrameLimit()
        assert self.frame_count < self.options.max_frames
        frame = TraceFrame(
            index=self.frame_count,
            span=span,
            explanation=explanation,
            stacks=self._render_stacks(),
            containers=self._render_containers(override),
            events=list(events) if events else [],
            stdout="".join(self.stdout_parts),
            termination=termination,
        )
        self.frame_count += 1
        self.last_span = span
        self.sink(frame)

    def emit_statement(self, span: SourceSpan, explanation: str) -> None:
        """Statement frame, carrying whatever events the statement produced."""
        events, self.pending_events = self.pending_events, []
        self.emit(span, explanation, events=events)

    def _render_stacks(self) -> list[dict]:
        rendered = []
        for depth, frame in enumerate(self.stacks):
            scopes = []
            for scope in frame.scopes:
                scopes.append([
                    {"name": name, "type": slot[0].render(), "value": _wire_value(slot[1])}
                    for name, slot in scope.vars.items()
                ])
            rendered.append({
                "function": frame.function,
                "callSite": frame.call_site.to_wire() if frame.call_site else None,
                "active": depth == len(self.stacks) - 1,
                "scopes": scopes,
            })
        return rendered

    def _render_containers(self, override: Optional[dict]) -> list[dict]:
        out = []
        for cid, state in self.containers.items():
            if override and cid in override:
                out.append(copy.deepcopy(override[cid]))
            else:
                out.append(state.snapshot())
        return out

    # --- scope and value plumbing ---

    def current_frame(self) -> _FunctionFrame:
        return self.stacks[-1]

    def declare(self, name: str, type_tag: TypeTag, value) -> None:
        self.current_frame().scopes[-1].vars[name] = [type_tag, value]

    def slot(self, ref: VarRef) -> list:
        for scope in reversed(self.current_frame().scopes):
            if ref.name in scope.vars:
                return scope.vars[ref.name]
        raise AssertionError("validated program lost variable %r" % ref.name)

    def container(self, ref: VarRef):
        slot = self.slot(ref)
        return self.containers[slot[1].cid]

    def push_scope(self) -> None:
        self.current_frame().scopes.append(_Scope())

    def pop_scope(self) -> None:
        scope = self.current_frame().scopes.pop()
        for cid in scope.owned:
            del self.containers[cid]

    # --- program drive ---

    def run_main(self) -> None:
        main = self.program.function("main")
        self.emit(main.sig_span, explain("start"))
        try:
            exit_code = self._call_function(main, [], None, entry_frame=False)
            self.emit(main.sig_span,
                      explain("finish", code=str(exit_code)),
                      termination={"status": "finished", "exitCode": exit_code})
        except RuntimeFailure as failure:
            self.emit(failure.span,
                      explain("runtime-error", message=failure.message),
                      termination={"status": "runtimeError", "kind": failure.kind,
                                   "message": failure.message})
        except _FrameLimit:
            self.emit(self.last_span or main.sig_span,
                      explain("truncated"),
                      termination={"status": "truncated"})

    def _call_function(self, fn: FunctionDef, args: list,
                       call_site: Optional[SourceSpan], entry_frame: bool = True):
        if len(self.stacks) >= MAX_CALL_DEPTH:
            raise RuntimeFailure(
                "RecursionDepthExceeded",
                "call depth limit of %d reached" % MAX_CALL_DEPTH,
                call_site or fn.sig_span)
        frame = _FunctionFrame(fn.name, call_site)
        self.stacks.append(frame)
        for param, value in zip(fn.params, args):
            frame.scopes[0].vars[param.name] = [param.type, value]
        if entry_frame:
            rendered = ", ".join(self._render_arg(a) for a in args)
            events, self.pending_events = self.pending_events, []
            self.emit(fn.sig_span, explain("call", function=fn.name, args=rendered),
                      events=events)
        value = None
        returned = False
        try:
            self.exec_block(fn.body)
        except _ReturnSignal as signal:
            value = signal.value
            returned = True
        while len(frame.scopes) > 1:
            self.pop_scope()
        self.pop_scope()
        self.stacks.pop()
        if fn.name == "main" and not returned:
            return 0
        if fn.return_type.kind != "void" and not returned:
            raise RuntimeFailure("MissingReturnValue",
                                 "%s ended without returning a value" % fn.name,
                                 fn.sig_span)
        return value

    def _render_arg(self, value) -> str:
        if isinstance(value, _Ref):
            return self.containers[value.cid].name
        return display_value(value)

    # --- statements ---

    def exec_block(self, block: Block) -> None:
        # Scopes are balanced on normal exit and on return, but left in
        # place when a runtime error or the frame limit unwinds, so the
        # terminal frame still shows the state at the point of failure.
        self.push_scope()
        try:
            for stmt in block.statements:
                self.exec_stmt(stmt)
        except _ReturnSignal:
            self.pop_scope()
            raise
        else:
            self.pop_scope()

    def exec_stmt(self, stmt: Stmt) -> None:
        if isinstance(stmt, Block):
            self.push_scope()
            self.emit_statement(stmt.span, explain("scope-enter"))
            try:
                for inner in stmt.statements:
                    self.exec_stmt(inner)
            except _ReturnSignal:
                self.pop_scope()
                raise
            else:
                self.pop_scope()
        elif isinstance(stmt, VarDecl):
            self.exec_var_decl(stmt)
        elif isinstance(stmt, Assign):
            self.exec_assign(stmt)
        elif isinstance(stmt, If):
            self.exec_if(stmt)
        elif isinstance(stmt, While):
            self.exec_while(stmt)
        elif isinstance(stmt, For):
            lowered = self._lowered.get(id(stmt))
            if lowered is None:
                lowered = ast.lower_for(stmt)
                self._lowered[id(stmt)] = lowered
            self.exec_block(lowered)
        elif isinstance(stmt, Return):
            self.exec_return(stmt)
        elif isinstance(stmt, ExprStmt):
            self.exec_expr_stmt(stmt)
        elif isinstance(stmt, Print):
            self.exec_print(stmt)
        elif isinstance(stmt, Read):
            self.exec_read(stmt)
        else:
            raise AssertionError("unhandled statement %r" % stmt)

    def exec_var_decl(self, stmt: VarDecl) -> None:
        if stmt.decl_type.is_container():
            cid = "c%d" % self.next_cid
            self.next_cid += 1
            state = make_container(cid, stmt.name, stmt.decl_type,
                                   self.options.hash_buckets)
            self.containers[cid] = state
            scope = self.current_frame().scopes[-1]
            scope.owned.append(cid)
            self.declare(stmt.name, stmt.decl_type, _Ref(cid))
            self.emit_statement(stmt.span, explain(
                "declare-container", type=stmt.decl_type.render(), name=stmt.name))
            return
        if stmt.init is None:
            value = default_value(stmt.decl_type)
            if stmt.decl_type.kind == "char":
                value = Char(value)
            self.declare(stmt.name, stmt.decl_type, value)
            self.emit_statement(stmt.span, explain(
                "declare", type=stmt.decl_type.render(), name=stmt.name))
            return
        value = self._coerce(self.eval_expr(stmt.init), stmt.decl_type)
        self.declare(stmt.name, stmt.decl_type, value)
        self.emit_statement(stmt.span, explain(
            "declare-init", type=stmt.decl_type.render(), name=stmt.name,
            value=display_value(value)))

    def exec_assign(self, stmt: Assign) -> None:
        value = self.eval_expr(stmt.value)
        if isinstance(stmt.target, VarRef):
            slot = self.slot(stmt.target)
            slot[1] = self._coerce(value, slot[0])
            target_text = stmt.target.name
            shown = slot[1]
        else:
            state = self.container(stmt.target.receiver)
            index = self.eval_expr(stmt.target.index)
            shown = self._coerce(value, state.elem_type)
            if state.kind in ("map", "unordered_map"):
                index = self._coerce(index, state.key_type)
            self.run_container_op(state, "index_set", [index, shown],
                                  stmt.span, stmt.target.span)
            target_text = "%s[%s]" % (stmt.target.receiver.name, display_value(index))
        self.emit_statement(stmt.span, explain(
            "assign", value=display_value(shown), target=target_text))

    def exec_if(self, stmt: If) -> None:
        value = self.eval_expr(stmt.cond)
        cond_text = _cond_text(self.program.source_text, stmt.cond.span)
        if value:
            self.emit_statement(stmt.head_span, explain("cond-true-branch", cond=cond_text))
            self.exec_block(stmt.then_block)
        elif stmt.else_block is not None:
            self.emit_statement(stmt.head_span, explain("cond-false-branch", cond=cond_text))
            self.exec_block(stmt.else_block)
        else:
            self.emit_statement(stmt.head_span, explain("cond-false-skip", cond=cond_text))

    def exec_while(self, stmt: While) -> None:
        cond_text = _cond_text(self.program.source_text, stmt.cond.span)
        while True:
            value = self.eval_expr(stmt.cond)
            if not value:
                self.emit_statement(stmt.head_span, explain("loop-false", cond=cond_text))
                return
            self.emit_statement(stmt.head_span, explain("loop-true", cond=cond_text))
            self.exec_block(stmt.body)

    def exec_return(self, stmt: Return) -> None:
        fn_name = self.current_frame().function
        if stmt.value is None:
            self.emit_statement(stmt.span, explain("return-void", function=fn_name))
            raise _ReturnSignal(None)
        fn = self.program.function(fn_name)
        value = self._coerce(self.eval_expr(stmt.value), fn.return_type)
        self.emit_statement(stmt.span, explain(
            "return-value", value=display_value(value), function=fn_name))
        raise _ReturnSignal(value)

    def exec_expr_stmt(self, stmt: ExprStmt) -> None:
        if isinstance(stmt.expr, Call):
            # The call's own entry, body, and return frames tell the story.
            self.eval_expr(stmt.expr)
            return
        method: MethodCall = stmt.expr
        state = self.container(method.receiver)
        args = [self.eval_method_arg(a, state) for a in method.args]
        result = self.run_container_op(state, method.method, args, stmt.span, method.span)
        self.emit_statement(stmt.span,
                            self._describe_method(state, method.method, args, result))

    def _describe_method(self, state, method: str, args: list, result) -> str:
        name = state.name
        if method in ("push_back", "push"):
            template = "method-push" if state.kind == "stack" else "method-append"
            return explain(template, value=display_value(args[0]), name=name)
        if method == "push_front":
            return explain("method-prepend", value=display_value(args[0]), name=name)
        if method == "pop_back" or (method == "pop" and state.kind == "stack"):
            template = "method-pop-top" if state.kind == "stack" else "method-pop-back"
            return explain(template, name=name)
        if method in ("pop_front", "pop"):
            return explain("method-pop-front", name=name)
        if method == "insert":
            key, value = args[0]
            return explain("method-insert", key=display_value(key),
                           value=display_value(value), name=name)
        if method == "erase":
            template = "method-erase" if result else "method-erase-miss"
            return explain(template, key=display_value(args[0]), name=name)
        rendered = ", ".join(display_value(a) for a in args)
        return explain("method-generic", name=name, method=method, args=rendered)

    def exec_print(self, stmt: Print) -> None:
        text_parts = []
        for item in stmt.items:
            if isinstance(item, Endl):
                text_parts.append("\n")
            else:
                text_parts.append(stdout_format(self.eval_expr(item)))
        text = "".join(text_parts)
        self.stdout_parts.append(text)
        self.emit_statement(stmt.span, explain(
            "print", text=display_value(text)))

    def exec_read(self, stmt: Read) -> None:
        bindings = []
        for target in stmt.targets:
            if isinstance(target, VarRef):
                slot = self.slot(target)
                value = self.stdin.read(slot[0].kind, target.span)
                slot[1] = self._coerce(value, slot[0])
                bindings.append("%s = %s" % (target.name, display_value(slot[1])))
            else:
                state = self.container(target.receiver)
                index = self.eval_expr(target.index)
                if state.kind in ("map", "unordered_map"):
                    index = self._coerce(index, state.key_type)
                value = self.stdin.read(state.elem_type.kind, target.span)
                value = self._coerce(value, state.elem_type)
                self.run_container_op(state, "index_set", [index, value],
                                      stmt.span, target.span)
                bindings.append("%s[%s] = %s" % (
                    target.receiver.name, display_value(index), display_value(value)))
        self.emit_statement(stmt.span, explain("read", bindings=", ".join(bindings)))

    # --- expressions ---

    def eval_expr(self, expr: Expr):
        if isinstance(expr, Literal):
            if expr.lit_kind == "char":
                return Char(expr.value)
            return expr.value
        if isinstance(expr, VarRef):
            return self.slot(expr)[1]
        if isinstance(expr, Unary):
            return self.eval_unary(expr)
        if isinstance(expr, Binary):
            return self.eval_binary(expr)
        if isinstance(expr, IndexAccess):
            state = self.container(expr.receiver)
            index = self.eval_expr(expr.index)
            if state.kind in ("map", "unordered_map"):
                index = self._coerce(index, state.key_type)
            value = self.run_container_op(state, "index_get", [index],
                                          expr.span, expr.span)
            return self._from_container(state, value)
        if isinstance(expr, MethodCall):
            state = self.container(expr.receiver)
            args = [self.eval_method_arg(a, state) for a in expr.args]
            value = self.run_container_op(state, expr.method, args,
                                          expr.span, expr.span)
            return self._from_container(state, value)
        if isinstance(expr, Call):
            fn = self.program.function(expr.name)
            args = [self._coerce(self.eval_expr(a), p.type) if not p.by_ref
                    else self.eval_expr(a)
                    for a, p in zip(expr.args, fn.params)]
            return self._call_function(fn, args, expr.span)
        raise AssertionError("unhandled expression %r" % expr)

    def eval_method_arg(self, arg: Expr, state):
        if isinstance(arg, PairLiteral):
            key = self._coerce(self.eval_expr(arg.first), state.key_type)
            value = self._coerce(self.eval_expr(arg.second), state.elem_type)
            return (key, value)
        return self.eval_expr(arg)

    def eval_unary(self, expr: Unary):
        value = self.eval_expr(expr.operand)
        if expr.op == "!":
            return not value
        if isinstance(value, float):
            return -value
        result = -value
        self._check_int(result, expr.span)
        return result

    def eval_binary(self, expr: Binary):
        op = expr.op
        if op == "&&":
            return bool(self.eval_expr(expr.left)) and bool(self.eval_expr(expr.right))
        if op == "||":
            return bool(self.eval_expr(expr.left)) or bool(self.eval_expr(expr.right))
        left = self.eval_expr(expr.left)
        right = self.eval_expr(expr.right)
        if op == "==":
            return left == right
        if op == "!=":
            return left != right
        if op == "<":
            return left < right
        if op == "<=":
            return left <= right
        if op == ">":
            return left > right
        if op == ">=":
            return left >= right
        return self._arith(op, left, right, expr.span)

    def _arith(self, op: str, left, right, span: SourceSpan):
        if isinstance(left, str) or isinstance(right, str):
            return left + right  # validated: string concatenation
        if isinstance(left, float) or isinstance(right, float):
            return self._double_arith(op, float(left), float(right), span)
        if op == "+":
            result = left + right
        elif op == "-":
            result = left - right
        elif op == "*":
            result = left * right
        else:
            if right == 0:
                raise RuntimeFailure("DivisionByZero",
                                     "integer %s by zero" % ("division" if op == "/" else "modulo"),
                                     span)
            quotient = abs(left) // abs(right)
            if (left < 0) != (right < 0):
                quotient = -quotient
            result = quotient if op == "/" else left - right * quotient
        self._check_int(result, span)
        return result

    def _double_arith(self, op: str, left: float, right: float, span: SourceSpan) -> float:
        if op == "+":
            result = left + right
        elif op == "-":
            result = left - right
        elif op == "*":
            result = left * right
        else:
            if right == 0.0:
                raise RuntimeFailure("DivisionByZero", "division by zero", span)
            result = left / right
        if result != result or result in (float("inf"), float("-inf")):
            raise RuntimeFailure("NonFiniteResult",
                                 "result is too large to represent", span)
        return result

    def _check_int(self, value: int, span: SourceSpan) -> None:
        if not INT_MIN <= value <= INT_MAX:
            raise RuntimeFailure("IntegerOverflow",
                                 "result does not fit in a 64-bit int", span)

    def _coerce(self, value, target: TypeTag):
        if target.kind == "double" and isinstance(value, int) and not isinstance(value, bool):
            return float(value)
        return value

    def _from_container(self, state, value):
        if value is not None and getattr(state, "elem_type", None) is not None:
            if state.elem_type.kind == "char" and isinstance(value, str):
                return Char(value)
        return value

    # --- container operations with substep frames ---

    def run_container_op(self, state, op: str, args: list,
                         stmt_span: SourceSpan, op_span: SourceSpan):
        """Run one container operation, turning its events into either
        substep frames (map kinds, substeps on) or pending statement
        events."""
        is_map = state.kind in ("map", "unordered_map")
        show_substeps = is_map and self.options.substeps
        pre = state.snapshot() if show_substeps else None
        try:
            if op == "index_get":
                value, events = state.index_get(args[0])
            elif op == "index_set":
                value, events = state.index_set(args[0], args[1])
            else:
                value, events = call_method(state, op, args)
        except ContainerError as error:
            raise RuntimeFailure(error.kind, str(error), op_span) from None
        if not show_substeps:
            self.pending_events.extend(events)
            return value
        shown = pre
        search_key = args[0][0] if op == "insert" else (args[0] if args else None)
        for event in events:
            if event.kind == "write":
                description = self._describe_map_event(state, event, shown, search_key)
                shown = apply_events(shown, [event])
            else:
                description = self._describe_map_event(state, event, shown, search_key)
            self.emit(stmt_span, description, events=[event],
                      override={state.cid: shown})
            if event.kind == "delete":
                shown = apply_events(shown, [event])
        return value

    def _describe_map_event(self, state, event: AccessEvent, shown: dict,
                            search_key) -> str:
        key_text = display_value(search_key)
        if state.kind == "map":
            if event.kind == "read":
                node = _bst_node(shown, event.target["node"])
                return explain("bst-compare", name=state.name, key=key_text,
                               other=display_value(node["key"]))
            if event.kind == "delete":
                node = _bst_node(shown, event.target["node"])
                return explain("bst-remove", name=state.name,
                               key=display_value(node["key"]))
            record = event.edit["node"]
            existing = _bst_node(shown, record["id"])
            if existing is None:
                return explain("bst-attach", name=state.name,
                               key=display_value(record["key"]))
            if existing["value"] != record["value"]:
                return explain("bst-update", name=state.name,
                               key=display_value(record["key"]))
            return explain("bst-relink", name=state.name,
                           key=display_value(record["key"]))
        bucket = event.target["bucket"]
        if event.kind == "read":
            entry = shown["buckets"][bucket][event.target["pos"]]
            return explain("hash-compare", name=state.name, bucket=str(bucket),
                           key=key_text, other=display_value(entry[0]))
        if event.kind == "delete":
            entry = shown["buckets"][bucket][event.target["pos"]]
            return explain("hash-remove", name=state.name, bucket=str(bucket),
                           key=display_value(entry[0]))
        if event.edit["op"] == "append":
            return explain("hash-place", name=state.name, bucket=str(bucket),
                           key=display_value(event.edit["entry"][0]))
        return explain("hash-update", name=state.name, bucket=str(bucket),
                       key=display_value(event.edit["entry"][0]))


def _bst_node(snapshot: dict, node_id: int) -> Optional[dict]:
    for node in snapshot["nodes"]:
        if node["id"] == node_id:
            return node
    return None


def _cond_text(source: str, span: SourceSpan) -> str:
    return " ".join(slice_source(source, span).split())


# === Entry points ===


def _execute(program: Program, options: InterpreterOptions,
             sink: Callable[[TraceFrame], None]) -> None:
    machine = _Machine(program, options, sink)
    machine.run_main()


class _Abort(Exception):
    """Consumer stopped pulling a stream; unwind the worker quietly."""


def _run_worker(target: Callable[[], None]) -> threading.Thread:
    """Start ``target`` on a thread with room for deep subject recursion."""
    if sys.getrecursionlimit() < _PY_RECURSION_LIMIT:
        sys.setrecursionlimit(_PY_RECURSION_LIMIT)
    old_size = threading.stack_size()
    threading.stack_size(_WORKER_STACK_BYTES)
    try:
        thread = threading.Thread(target=target, daemon=True)
        thread.start()
    finally:
        threading.stack_size(old_size)
    return thread


def run(program: Program, options: Optional[InterpreterOptions] = None) -> TraceDocument:
    """Execute a validated program and return its full trace."""
    options = options or InterpreterOptions()
    frames: list[TraceFrame] = []
    box: list[BaseException] = []

    def job():
        try:
            _execute(program, options, frames.append)
        except BaseException as exc:  # re-raised on the caller's thread
            box.append(exc)

    _run_worker(job).join()
    if box:
        raise box[0]
    return TraceDocument(FORMAT_VERSION, program.source_text, options.to_wire(), frames)


def stream_run(program: Program,
               options: Optional[InterpreterOptions] = None) -> Iterator[list[TraceFrame]]:
    """Execute incrementally, yielding frames in chunks of
    options.stream_chunk (whole run as one chunk when unset).

    The frames, in order, are identical to what run() produces.
    """
    options = options or InterpreterOptions()
    if options.stream_chunk is None:
        doc = run(program, options)
        yield doc.frames
        return

    out: queue.Queue = queue.Queue(maxsize=64)
    stop = threading.Event()

    def push(item) -> None:
        while True:
            if stop.is_set():
                raise _Abort()
            try:
                out.put(item, timeout=0.1)
                return
            except queue.Full:
                continue

    def job():
        try:
            _execute(program, options, lambda frame: push(("frame", frame)))
            push(("done", None))
        except _Abort:
            pass
        except BaseException as exc:
            try:
                push(("error", exc))
            except _Abort:
                pass

    _run_worker(job)
    chunk: list[TraceFrame] = []
    try:
        while True:
            kind, payload = out.get()
            if kind == "frame":
                chunk.append(payload)
                if len(chunk) >= options.stream_chunk:
                    yield chunk
                    chunk = []
            elif kind == "error":
                raise payload
            else:
                if chunk:
                    yield chunk
                return
    finally:
        stop.set()
