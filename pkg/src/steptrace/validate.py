"""Semantic validation for parsed programs.

Unlike the single-error lexer and parser, validation walks the whole
tree and collects every diagnostic it can.  compile_source is the
one-call frontend: parse, validate, and either return a runnable
program or raise with the full diagnostic list.
"""

from __future__ import annotations

from typing import Optional

from . import ast
from .ast import (
    Assign, Binary, Block, Call, Endl, Expr, ExprStmt, For, FunctionDef, If,
    IndexAccess, Literal, MethodCall, PairLiteral, Print, Program, Read,
    Return, Stmt, TypeTag, Unary, VarDecl, VarRef, While,
    BOOL, DOUBLE, INT, STRING,
)
from .containers import INDEX_GET, INDEX_SET, METHODS
from .parser import parse
from .source import Diagnostic, FrontendError, SourceSpan


def compile_source(source: str) -> Program:
    """Parse and validate; the result is safe to hand to the interpreter."""
    program = parse(source)
    diagnostics = validate_program(program)
    if diagnostics:
        raise FrontendError(diagnostics)
    return program


def validate_program(program: Program) -> list[Diagnostic]:
    checker = _Checker(program)
    checker.check_program()
    return checker.diagnostics


def _assignable(dst: TypeTag, src: TypeTag) -> bool:
    """src usable where dst is expected; int widens to double."""
    if dst == src:
        return True
    return dst.kind == "double" and src.kind == "int"


class _Checker:
    def __init__(self, program: Program):
        self.program = program
        self.diagnostics: list[Diagnostic] = []
        self.scopes: list[dict[str, TypeTag]] = []
        self.current_fn: Optional[FunctionDef] = None

    def error(self, kind: str, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(Diagnostic("error", kind, message, span))

    # --- scope helpers ---

    def declare(self, name: str, type_tag: TypeTag, span: SourceSpan) -> None:
        if name in self.scopes[-1]:
            self.error("DuplicateVariable",
                       "variable '%s' is already declared in this scope" % name, span)
        self.scopes[-1][name] = type_tag

    def lookup(self, name: str) -> Optional[TypeTag]:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    # --- program structure ---

    def check_program(self) -> None:
        seen: set[str] = set()
        for fn in self.program.functions:
            if fn.name in seen:
                self.error("DuplicateFunction",
                           "function '%s' is defined twice" % fn.name, fn.sig_span)
            seen.add(fn.name)
        main = self.program.function("main")
        if main is None:
            span = SourceSpan(1, 1, 1, 1)
            self.error("MissingMain", "program has no main function", span)
        elif main.params or main.return_type != INT:
            self.error("BadMainSignature", "main must be 'int main()'", main.sig_span)
        for fn in self.program.functions:
            self.check_function(fn)

    def check_function(self, fn: FunctionDef) -> None:
        self.current_fn = fn
        if fn.return_type.is_container():
            self.error("ContainerReturn",
                       "functions cannot return containers", fn.sig_span)
        self.scopes = [{}]
        for param in fn.params:
            if param.type.is_container() and not param.by_ref:
                self.error("ContainerByValue",
                           "container parameter '%s' must be passed by reference (&)"
                           % param.name, param.span)
            if not param.type.is_container() and param.by_ref:
                self.error("ScalarByRef",
                           "only container parameters may use &", param.span)
            self.declare(param.name, param.type, param.span)
        # the outermost block shares the parameter scope: redeclaring a
        # parameter there is an error, same as the native toolchain
        self.check_block(fn.body, new_scope=False)
        if (fn.return_type.kind != "void" and fn.name != "main"
                and not _always_returns(fn.body)):
            self.error("MissingReturn",
                       "function '%s' may reach the end without returning a value"
                       % fn.name, fn.sig_span)
        self.scopes = []
        self.current_fn = None

    # --- statements ---

    def check_block(self, block: Block, new_scope: bool = True) -> None:
        if new_scope:
            self.scopes.append({})
        for stmt in block.statements:
            self.check_stmt(stmt)
        if new_scope:
            self.scopes.pop()

    def check_stmt(self, stmt: Stmt) -> None:
        if isinstance(stmt, Block):
            self.check_block(stmt)
        elif isinstance(stmt, VarDecl):
            self.check_var_decl(stmt)
        elif isinstance(stmt, Assign):
            self.check_assign(stmt)
        elif isinstance(stmt, If):
            self.check_condition(stmt.cond)
            self.check_block(stmt.then_block)
            if stmt.else_block is not None:
                self.check_block(stmt.else_block)
        elif isinstance(stmt, While):
            self.check_condition(stmt.cond)
            self.check_block(stmt.body)
        elif isinstance(stmt, For):
            self.scopes.append({})
            self.check_stmt(stmt.init)
            self.check_condition(stmt.cond)
            self.check_block(stmt.body)
            self.check_stmt(stmt.step)
            self.scopes.pop()
        elif isinstance(stmt, Return):
            self.check_return(stmt)
        elif isinstance(stmt, ExprStmt):
            if not isinstance(stmt.expr, (Call, MethodCall)):
                self.error("UselessExpression",
                           "expression statement must be a call", stmt.span)
            self.infer(stmt.expr, allow_void=True)
        elif isinstance(stmt, Print):
            for item in stmt.items:
                if isinstance(item, Endl):
                    continue
                itype = self.infer(item)
                if itype is not None and not itype.is_scalar():
                    self.error("PrintContainer",
                               "cout can only print scalar values", item.span)
        elif isinstance(stmt, Read):
            for target in stmt.targets:
                ttype = self.check_lvalue(target, reading=True)
                if ttype is not None and ttype.kind not in ("int", "double", "char", "string"):
                    self.error("ReadBadType",
                               "cin can only read int, double, char, or string", target.span)
        else:
            raise AssertionError("unhandled statement %r" % stmt)

    def check_var_decl(self, stmt: VarDecl) -> None:
        if stmt.decl_type.is_container():
            if stmt.init is not None:
                self.error("ContainerInit",
                           "containers start empty and cannot be initialized", stmt.span)
        elif stmt.init is not None:
            itype = self.infer(stmt.init)
            if itype is not None and not _assignable(stmt.decl_type, itype):
                self.error("TypeMismatch",
                           "cannot initialize %s with %s"
                           % (stmt.decl_type.render(), itype.render()), stmt.span)
        self.declare(stmt.name, stmt.decl_type, stmt.span)

    def check_assign(self, stmt: Assign) -> None:
        ttype = self.check_lvalue(stmt.target, reading=False)
        vtype = self.infer(stmt.value)
        if ttype is None or vtype is None:
            return
        if ttype.is_container():
            self.error("ContainerAssign",
                       "containers cannot be assigned as a whole", stmt.span)
            return
        if not _assignable(ttype, vtype):
            self.error("TypeMismatch",
                       "cannot assign %s to %s" % (vtype.render(), ttype.render()),
                       stmt.span)

    def check_lvalue(self, target, reading: bool) -> Optional[TypeTag]:
        """Type of an assignment or cin target."""
        if isinstance(target, VarRef):
            vtype = self.lookup(target.name)
            if vtype is None:
                self.error("UndefinedVariable",
                           "variable '%s' is not declared" % target.name, target.span)
            return vtype
        assert isinstance(target, IndexAccess)
        rtype = self.lookup(target.receiver.name)
        if rtype is None:
            self.error("UndefinedVariable",
                       "variable '%s' is not declared" % target.receiver.name,
                       target.receiver.span)
            return None
        if not rtype.is_container() or rtype.kind not in INDEX_SET:
            self.error("NotIndexable",
                       "%s does not support indexed writes" % rtype.render(), target.span)
            return None
        self.check_index_expr(target, rtype)
        return rtype.elem

    def check_condition(self, cond: Expr) -> None:
        ctype = self.infer(cond)
        if ctype is not None and ctype.kind != "bool":
            self.error("ConditionNotBool",
                       "condition must be bool, got %s" % ctype.render(), cond.span)

    def check_return(self, stmt: Return) -> None:
        fn = self.current_fn
        expected = fn.return_type
        if expected.kind == "void":
            if stmt.value is not None:
                self.error("ReturnTypeMismatch",
                           "void function '%s' cannot return a value" % fn.name, stmt.span)
            return
        if stmt.value is None:
            self.error("MissingReturnValue",
                       "function '%s' must return %s" % (fn.name, expected.render()),
                       stmt.span)
            return
        vtype = self.infer(stmt.value)
        if vtype is not None and not _assignable(expected, vtype):
            self.error("ReturnTypeMismatch",
                       "function '%s' returns %s, got %s"
                       % (fn.name, expected.render(), vtype.render()), stmt.span)

    # --- expressions ---

    def infer(self, expr: Expr, allow_void: bool = False) -> Optional[TypeTag]:
        """Expression type, or None if a diagnostic was already recorded."""
        if isinstance(expr, Literal):
            return TypeTag(expr.lit_kind)
        if isinstance(expr, Endl):
            self.error("MisplacedEndl", "endl is only valid after <<", expr.span)
            return None
        if isinstance(expr, PairLiteral):
            self.error("MisplacedPair",
                       "{key, value} pairs are only valid as insert arguments", expr.span)
            return None
        if isinstance(expr, VarRef):
            vtype = self.lookup(expr.name)
            if vtype is None:
                self.error("UndefinedVariable",
                           "variable '%s' is not declared" % expr.name, expr.span)
            return vtype
        if isinstance(expr, Unary):
            return self.infer_unary(expr)
        if isinstance(expr, Binary):
            return self.infer_binary(expr)
        if isinstance(expr, IndexAccess):
            return self.infer_index(expr)
        if isinstance(expr, MethodCall):
            return self.infer_method(expr, allow_void)
        if isinstance(expr, Call):
            return self.infer_call(expr, allow_void)
        raise AssertionError("unhandled expression %r" % expr)

    def infer_unary(self, expr: Unary) -> Optional[TypeTag]:
        otype = self.infer(expr.operand)
        if otype is None:
            return None
        if expr.op == "-":
            if not otype.is_numeric():
                self.error("TypeMismatch", "unary - needs a number", expr.span)
                return None
            return otype
        if otype.kind != "bool":
            self.error("TypeMismatch", "! needs a bool", expr.span)
            return None
        return BOOL

    def infer_binary(self, expr: Binary) -> Optional[TypeTag]:
        left = self.infer(expr.left)
        right = self.infer(expr.right)
        if left is None or right is None:
            return None
        op = expr.op
        if op in ("&&", "||"):
            if left.kind == "bool" and right.kind == "bool":
                return BOOL
        elif op == "%":
            if left.kind == "int" and right.kind == "int":
                return INT
        elif op == "+" and left.kind == "string" and right.kind == "string":
            return STRING
        elif op in ("+", "-", "*", "/"):
            if left.is_numeric() and right.is_numeric():
                return DOUBLE if "double" in (left.kind, right.kind) else INT
        elif op in ("==", "!="):
            if left == right and left.is_scalar():
                return BOOL
            if left.is_numeric() and right.is_numeric():
                return BOOL
        elif op in ("<", "<=", ">", ">="):
            if left.is_numeric() and right.is_numeric():
                return BOOL
            if left == right and left.kind in ("char", "string"):
                return BOOL
        self.error("TypeMismatch",
                   "operator %s cannot combine %s and %s"
                   % (op, left.render(), right.render()), expr.span)
        return None

    def infer_index(self, expr: IndexAccess) -> Optional[TypeTag]:
        rtype = self.infer(expr.receiver)
        if rtype is None:
            return None
        if not rtype.is_container() or rtype.kind not in INDEX_GET:
            self.error("NotIndexable", "%s cannot be indexed" % rtype.render(), expr.span)
            return None
        self.check_index_expr(expr, rtype)
        return rtype.elem

    def check_index_expr(self, expr: IndexAccess, rtype: TypeTag) -> None:
        itype = self.infer(expr.index)
        if itype is None:
            return
        if rtype.kind in ("vector", "deque"):
            if itype.kind != "int":
                self.error("TypeMismatch", "index must be int", expr.index.span)
        elif not _assignable(rtype.key, itype):
            self.error("TypeMismatch",
                       "key must be %s, got %s" % (rtype.key.render(), itype.render()),
                       expr.index.span)

    def infer_method(self, expr: MethodCall, allow_void: bool = False) -> Optional[TypeTag]:
        rtype = self.infer(expr.receiver)
        if rtype is None:
            return None
        if not rtype.is_container():
            self.error("NotAContainer",
                       "%s has no methods" % rtype.render(), expr.span)
            return None
        table = METHODS[rtype.kind]
        if expr.method not in table:
            self.error("UnknownMethod",
                       "%s has no method '%s'" % (rtype.render(), expr.method), expr.span)
            return None
        arg_kinds, result = table[expr.method]
        if result == "void" and not allow_void:
            self.error("VoidInExpression",
                       "%s.%s does not produce a value" % (expr.receiver.name, expr.method),
                       expr.span)
        if len(expr.args) != len(arg_kinds):
            self.error("ArityMismatch",
                       "%s.%s expects %d argument(s), got %d"
                       % (expr.receiver.name, expr.method, len(arg_kinds), len(expr.args)),
                       expr.span)
            return _method_result(result, rtype)
        for arg, kind in zip(expr.args, arg_kinds):
            self.check_method_arg(arg, kind, rtype)
        return _method_result(result, rtype)

    def check_method_arg(self, arg: Expr, kind: str, rtype: TypeTag) -> None:
        if kind == "pair":
            if not isinstance(arg, PairLiteral):
                self.error("InsertNeedsPair",
                           "insert takes a {key, value} pair", arg.span)
                return
            ktype = self.infer(arg.first)
            vtype = self.infer(arg.second)
            if ktype is not None and not _assignable(rtype.key, ktype):
                self.error("TypeMismatch",
                           "key must be %s, got %s" % (rtype.key.render(), ktype.render()),
                           arg.first.span)
            if vtype is not None and not _assignable(rtype.elem, vtype):
                self.error("TypeMismatch",
                           "value must be %s, got %s" % (rtype.elem.render(), vtype.render()),
                           arg.second.span)
            return
        expected = rtype.key if kind == "key" else rtype.elem
        atype = self.infer(arg)
        if atype is not None and not _assignable(expected, atype):
            self.error("TypeMismatch",
                       "argument must be %s, got %s" % (expected.render(), atype.render()),
                       arg.span)

    def infer_call(self, expr: Call, allow_void: bool) -> Optional[TypeTag]:
        if expr.name == "main":
            self.error("CallToMain", "main cannot be called", expr.span)
            return None
        fn = self.program.function(expr.name)
        if fn is None:
            self.error("UndefinedFunction",
                       "function '%s' is not defined" % expr.name, expr.span)
            return None
        if len(expr.args) != len(fn.params):
            self.error("ArityMismatch",
                       "%s expects %d argument(s), got %d"
                       % (expr.name, len(fn.params), len(expr.args)), expr.span)
        else:
            for arg, param in zip(expr.args, fn.params):
                self.check_call_arg(arg, param)
        if fn.return_type.kind == "void" and not allow_void:
            self.error("VoidInExpression",
                       "void function '%s' cannot be used in an expression" % expr.name,
                       expr.span)
            return None
        return fn.return_type if fn.return_type.kind != "void" else None

    def check_call_arg(self, arg: Expr, param) -> None:
        if param.by_ref:
            if not isinstance(arg, VarRef):
                self.error("RefArgNotVariable",
                           "argument for '%s' must be a container variable" % param.name,
                           arg.span)
                return
            atype = self.infer(arg)
            if atype is not None and atype != param.type:
                self.error("TypeMismatch",
                           "argument for '%s' must be %s, got %s"
                           % (param.name, param.type.render(), atype.render()), arg.span)
            return
        atype = self.infer(arg)
        if atype is not None and not _assignable(param.type, atype):
            self.error("TypeMismatch",
                       "argument for '%s' must be %s, got %s"
                       % (param.name, param.type.render(), atype.render()), arg.span)


def _method_result(result: str, rtype: TypeTag) -> Optional[TypeTag]:
    if result == "void":
        return None
    if result == "elem":
        return rtype.elem
    return TypeTag(result)


def _always_returns(stmt: Stmt) -> bool:
    """Conservative: does every path through ``stmt`` hit a return?"""
    if isinstance(stmt, Return):
        return True
    if isinstance(stmt, Block):
        return any(_always_returns(s) for s in stmt.statements)
    if isinstance(stmt, If):
        return (stmt.else_block is not None
                and _always_returns(stmt.then_block)
                and _always_returns(stmt.else_block))
    return False
