"""Language-independent syntax tree for the teaching subset.

Nodes are plain dataclasses.  Every node carries the span of the text
it came from; ``head_span`` on control statements covers just the
keyword and condition so trace frames can point at the interesting
part of multi-line constructs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterator, Optional, Union

from .source import SourceSpan

SCALAR_KINDS = {"int", "bool", "char", "double", "string"}
SEQUENCE_KINDS = {"vector", "stack", "queue", "deque"}
MAP_KINDS = {"map", "unordered_map"}
CONTAINER_KINDS = SEQUENCE_KINDS | MAP_KINDS


@dataclass(frozen=True)
class TypeTag:
    """A type in the subset: a scalar, void, or a single-level container."""

    kind: str
    key: Optional["TypeTag"] = None  # map kinds only
    elem: Optional["TypeTag"] = None  # container kinds only

    def is_scalar(self) -> bool:
        return self.kind in SCALAR_KINDS

    def is_container(self) -> bool:
        return self.kind in CONTAINER_KINDS

    def is_numeric(self) -> bool:
        return self.kind in ("int", "double")

    def render(self) -> str:
        if self.kind in MAP_KINDS:
            return "%s<%s, %s>" % (self.kind, self.key.render(), self.elem.render())
        if self.kind in SEQUENCE_KINDS:
            return "%s<%s>" % (self.kind, self.elem.render())
        return self.kind

INT = TypeTag("int")
BOOL = TypeTag("bool")
CHAR = TypeTag("char")
DOUBLE = TypeTag("double")
STRING = TypeTag("string")
VOID = TypeTag("void")


# === Expressions ===


class Expr:
    span: SourceSpan


@dataclass
class Literal(Expr):
    value: object
    lit_kind: str  # int | double | char | string | bool
    span: SourceSpan


@dataclass
class VarRef(Expr):
    name: str
    span: SourceSpan


@dataclass
class Unary(Expr):
    op: str  # "-" or "!"
    operand: Expr
    span: SourceSpan


@dataclass
class Binary(Expr):
    op: str  # + - * / % < <= > >= == != && ||
    left: Expr
    right: Expr
    span: SourceSpan


@dataclass
class Call(Expr):
    name: str
    args: list[Expr]
    span: SourceSpan


@dataclass
class MethodCall(Expr):
    """Container method call; receivers are always named variables."""

    receiver: VarRef
    method: str
    args: list[Expr]
    span: SourceSpan


@dataclass
class IndexAccess(Expr):
    receiver: VarRef
    index: Expr
    span: SourceSpan


@dataclass
class PairLiteral(Expr):
    """Brace pair ``{key, value}``; only valid as the argument of insert."""

    first: Expr
    second: Expr
    span: SourceSpan


@dataclass
class Endl(Expr):
    """The ``endl`` stream manipulator; only valid inside a print statement."""

    span: SourceSpan


# === Statements ===


class Stmt:
    span: SourceSpan


@dataclass
class Block(Stmt):
    statements: list[Stmt]
    span: SourceSpan


@dataclass
class VarDecl(Stmt):
    decl_type: TypeTag
    name: str
    init: Optional[Expr]
    span: SourceSpan


LValue = Union[VarRef, IndexAccess]


@dataclass
class Assign(Stmt):
    target: LValue
    value: Expr
    span: SourceSpan


@dataclass
class If(Stmt):
    cond: Expr
    then_block: Block
    else_block: Optional[Block]
    span: SourceSpan
    head_span: SourceSpan


@dataclass
class While(Stmt):
    cond: Expr
    body: Block
    span: SourceSpan
    head_span: SourceSpan


@dataclass
class For(Stmt):
    init: Stmt  # VarDecl or Assign
    cond: Expr
    step: Stmt  # Assign or ExprStmt
    body: Block
    span: SourceSpan
    head_span: SourceSpan


@dataclass
class Return(Stmt):
    value: Optional[Expr]
    span: SourceSpan


@dataclass
class ExprStmt(Stmt):
    expr: Expr
    span: SourceSpan


@dataclass
class Print(Stmt):
    """A ``cout <<`` chain.  Items are expressions or Endl markers."""

    items: list[Expr]
    span: SourceSpan


@dataclass
class Read(Stmt):
    """A ``cin >>`` chain into one or more lvalues."""

    targets: list[LValue]
    span: SourceSpan


# === Top level ===


@dataclass
class Param:
    name: str
    type: TypeTag
    by_ref: bool
    span: SourceSpan


@dataclass
class FunctionDef:
    name: str
    params: list[Param]
    return_type: TypeTag
    body: Block
    span: SourceSpan
    sig_span: SourceSpan  # return type through closing paren


@dataclass
class Program:
    """A parsed program.  Execution always starts at ``main``."""

    functions: list[FunctionDef]
    source_text: str

    def function(self, name: str) -> Optional[FunctionDef]:
        for fn in self.functions:
            if fn.name == name:
                return fn
        return None


def span_of(node) -> SourceSpan:
    """Source span of any node."""
    return node.span


def lower_for(stmt: For) -> Block:
    """Rewrite a for loop into its while-loop form.

    The init lives in a wrapper block so the loop variable dies with
    the loop; the step is spliced onto the end of the body so no
    phantom scope appears in traces.  All spans survive the rewrite.
    """
    body = Block(stmt.body.statements + [stmt.step], stmt.body.span)
    loop = While(stmt.cond, body, stmt.span, stmt.head_span)
    return Block([stmt.init, loop], stmt.span)


def walk(node) -> Iterator[object]:
    """Yield ``node`` and every node beneath it, depth first."""
    yield node
    for f in fields(node):
        value = getattr(node, f.name)
        if isinstance(value, (Expr, Stmt, FunctionDef, Param)):
            yield from walk(value)
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, (Expr, Stmt, FunctionDef, Param)):
                    yield from walk(item)


def node_signature(node) -> object:
    """Span-free structural fingerprint, for equality up to layout."""
    if isinstance(node, TypeTag):
        return node.render()
    if isinstance(node, (Expr, Stmt, FunctionDef, Param, Program)):
        parts: list[object] = [type(node).__name__]
        for f in fields(node):
            if f.name in ("span", "head_span", "sig_span", "source_text"):
                continue
            parts.append(node_signature(getattr(node, f.name)))
        return tuple(parts)
    if isinstance(node, list):
        return tuple(node_signature(item) for item in node)
    return node


# === Pretty printing ===


def pretty(program: Program) -> str:
    """Re-emit a program as canonical subset source."""
    out: list[str] = []
    for fn in program.functions:
        params = ", ".join(
            "%s%s %s" % (p.type.render(), "&" if p.by_ref else "", p.name)
            for p in fn.params
        )
        out.append("%s %s(%s) %s" % (
            fn.return_type.render(), fn.name, params, _pretty_block(fn.body, 0)))
        out.append("")
    return "\n".join(out)


def _pretty_block(block: Block, depth: int) -> str:
    pad = "    " * (depth + 1)
    lines = ["{"]
    for stmt in block.statements:
        lines.append(pad + _pretty_stmt(stmt, depth + 1))
    lines.append("    " * depth + "}")
    return "\n".join(lines)


def _pretty_stmt(stmt: Stmt, depth: int) -> str:
    if isinstance(stmt, Block):
        return _pretty_block(stmt, depth)
    if isinstance(stmt, VarDecl):
        head = "%s %s" % (stmt.decl_type.render(), stmt.name)
        return head + (" = %s;" % pretty_expr(stmt.init) if stmt.init else ";")
    if isinstance(stmt, Assign):
        return "%s = %s;" % (pretty_expr(stmt.target), pretty_expr(stmt.value))
    if isinstance(stmt, If):
        text = "if (%s) %s" % (pretty_expr(stmt.cond), _pretty_block(stmt.then_block, depth))
        if stmt.else_block is not None:
            text += " else %s" % _pretty_block(stmt.else_block, depth)
        return text
    if isinstance(stmt, While):
        return "while (%s) %s" % (pretty_expr(stmt.cond), _pretty_block(stmt.body, depth))
    if isinstance(stmt, For):
        init = _pretty_stmt(stmt.init, depth).rstrip(";")
        step = _pretty_stmt(stmt.step, depth).rstrip(";")
        return "for (%s; %s; %s) %s" % (
            init, pretty_expr(stmt.cond), step, _pretty_block(stmt.body, depth))
    if isinstance(stmt, Return):
        return "return %s;" % pretty_expr(stmt.value) if stmt.value else "return;"
    if isinstance(stmt, ExprStmt):
        return pretty_expr(stmt.expr) + ";"
    if isinstance(stmt, Print):
        return "cout << %s;" % " << ".join(pretty_expr(item) for item in stmt.items)
    if isinstance(stmt, Read):
        return "cin >> %s;" % " >> ".join(pretty_expr(t) for t in stmt.targets)
    raise AssertionError("unhandled statement %r" % stmt)


def pretty_expr(expr: Expr) -> str:
    if isinstance(expr, Literal):
        return render_literal(expr)
    if isinstance(expr, VarRef):
        return expr.name
    if isinstance(expr, Endl):
        return "endl"
    if isinstance(expr, Unary):
        return "%s%s" % (expr.op, _wrap(expr.operand))
    if isinstance(expr, Binary):
        return "%s %s %s" % (_wrap(expr.left), expr.op, _wrap(expr.right))
    if isinstance(expr, Call):
        return "%s(%s)" % (expr.name, ", ".join(pretty_expr(a) for a in expr.args))
    if isinstance(expr, MethodCall):
        return "%s.%s(%s)" % (expr.receiver.name, expr.method,
                              ", ".join(pretty_expr(a) for a in expr.args))
    if isinstance(expr, IndexAccess):
        return "%s[%s]" % (expr.receiver.name, pretty_expr(expr.index))
    if isinstance(expr, PairLiteral):
        return "{%s, %s}" % (pretty_expr(expr.first), pretty_expr(expr.second))
    raise AssertionError("unhandled expression %r" % expr)


def _wrap(expr: Expr) -> str:
    """Parenthesize nested operators so precedence survives reparsing."""
    if isinstance(expr, (Binary, Unary)):
        return "(%s)" % pretty_expr(expr)
    return pretty_expr(expr)


_CHAR_ESCAPES = {"\n": "\\n", "\t": "\\t", "\\": "\\\\", "\0": "\\0"}


def render_literal(lit: Literal) -> str:
    if lit.lit_kind == "bool":
        return "true" if lit.value else "false"
    if lit.lit_kind == "char":
        ch = lit.value
        return "'%s'" % _CHAR_ESCAPES.get(ch, "\\'" if ch == "'" else ch)
    if lit.lit_kind == "string":
        chars = []
        for ch in lit.value:
            chars.append(_CHAR_ESCAPES.get(ch, '\\"' if ch == '"' else ch))
        return '"%s"' % "".join(chars)
    if lit.lit_kind == "double":
        return repr(lit.value)
    return str(lit.value)
