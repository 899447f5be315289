"""Recursive-descent parser producing the language-independent tree.

Single-error model: the first syntax problem aborts the parse with a
FrontendError.  Grammar notes live in docs/grammar.ebnf; the parser
follows it production by production.
"""

from __future__ import annotations

import sys

from .ast import (
    Assign, Binary, Block, Call, Endl, Expr, ExprStmt, For, FunctionDef, If,
    IndexAccess, Literal, LValue, MethodCall, PairLiteral, Param, Print,
    Program, Read, Return, Stmt, TypeTag, Unary, VarDecl, VarRef, While,
    MAP_KINDS, SEQUENCE_KINDS,
)
from .lexer import Token, tokenize
from .source import Diagnostic, FrontendError, SourceSpan

SCALAR_TYPE_KEYWORDS = {"int", "bool", "char", "double", "string"}
TYPE_KEYWORDS = SCALAR_TYPE_KEYWORDS | SEQUENCE_KINDS | MAP_KINDS | {"void"}

# Binary operators by precedence level, loosest first.
_BINARY_LEVELS = [
    ["||"],
    ["&&"],
    ["==", "!="],
    ["<", "<=", ">", ">="],
    ["+", "-"],
    ["*", "/", "%"],
]

_COMPOUND_OPS = {"+=": "+", "-=": "-", "*=": "*", "/=": "/", "%=": "%"}

# Nesting cap for blocks and parenthesized expressions.  Each level costs
# roughly ten Python frames, so the cap must trip before the process
# recursion limit does; parse() adds headroom to make that certain.
_MAX_DEPTH = 100


def parse(source: str) -> Program:
    """Parse source text into a Program.  Raises FrontendError."""
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4000))
    try:
        return _Parser(tokenize(source), source).parse_program()
    finally:
        sys.setrecursionlimit(limit)


class _Parser:
    def __init__(self, tokens: list[Token], source: str):
        self.tokens = tokens
        self.source = source
        self.pos = 0
        self.depth = 0

    # --- token plumbing ---

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, lexeme: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.lexeme == lexeme

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, lexeme: str) -> Token:
        tok = self.peek()
        if tok is None or tok.lexeme != lexeme:
            self.fail("expected '%s'" % lexeme)
        return self.advance()

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != "ident":
            self.fail("expected a name")
        return self.advance()

    def fail(self, message: str) -> None:
        tok = self.peek()
        if tok is not None:
            span = tok.span
            message += ", found '%s'" % tok.lexeme
        elif self.tokens:
            span = self.tokens[-1].span
            message += ", found end of input"
        else:
            span = SourceSpan(1, 1, 1, 1)
            message += ", found empty input"
        raise FrontendError([Diagnostic("error", "SyntaxError", message, span)])

    def last_span(self) -> SourceSpan:
        return self.tokens[self.pos - 1].span

    # --- productions ---

    def parse_program(self) -> Program:
        functions: list[FunctionDef] = []
        while self.peek() is not None:
            if self.at("using"):
                self.advance()
                self.expect("namespace")
                self.expect_ident()
                self.expect(";")
                continue
            functions.append(self.parse_function())
        return Program(functions, self.source)

    def parse_function(self) -> FunctionDef:
        ret_type, type_span = self.parse_type(allow_void=True)
        name = self.expect_ident()
        self.expect("(")
        params: list[Param] = []
        if not self.at(")"):
            while True:
                params.append(self.parse_param())
                if not self.at(","):
                    break
                self.advance()
        rparen = self.expect(")")
        sig_span = type_span.merge(rparen.span)
        body = self.parse_block()
        return FunctionDef(name.lexeme, params, ret_type, body,
                           type_span.merge(body.span), sig_span)

    def parse_param(self) -> Param:
        ptype, type_span = self.parse_type(allow_void=False)
        by_ref = False
        if self.at("&"):
            self.advance()
            by_ref = True
        name = self.expect_ident()
        return Param(name.lexeme, ptype, by_ref, type_span.merge(name.span))

    def parse_type(self, allow_void: bool) -> tuple[TypeTag, SourceSpan]:
        tok = self.peek()
        if tok is None or tok.lexeme not in TYPE_KEYWORDS:
            self.fail("expected a type")
        self.advance()
        kind = tok.lexeme
        if kind == "void":
            if not allow_void:
                raise FrontendError([Diagnostic(
                    "error", "SyntaxError", "void is only valid as a return type", tok.span)])
            return TypeTag("void"), tok.span
        if kind in SEQUENCE_KINDS:
            self.expect("<")
            elem, _ = self.parse_scalar_type()
            close = self.expect(">")
            return TypeTag(kind, elem=elem), tok.span.merge(close.span)
        if kind in MAP_KINDS:
            self.expect("<")
            key, _ = self.parse_scalar_type()
            self.expect(",")
            elem, _ = self.parse_scalar_type()
            close = self.expect(">")
            return TypeTag(kind, key=key, elem=elem), tok.span.merge(close.span)
        return TypeTag(kind), tok.span

    def parse_scalar_type(self) -> tuple[TypeTag, SourceSpan]:
        tok = self.peek()
        if tok is None or tok.lexeme not in SCALAR_TYPE_KEYWORDS:
            self.fail("expected a scalar element type")
        self.advance()
        return TypeTag(tok.lexeme), tok.span

    def parse_block(self) -> Block:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            self.fail("nesting too deep")
        open_tok = self.expect("{")
        statements: list[Stmt] = []
        while not self.at("}"):
            if self.peek() is None:
                self.fail("expected '}'")
            statements.append(self.parse_statement())
        close_tok = self.advance()
        self.depth -= 1
        return Block(statements, open_tok.span.merge(close_tok.span))

    def parse_statement(self) -> Stmt:
        tok = self.peek()
        if tok is None:
            self.fail("expected a statement")
        if tok.lexeme == "{":
            return self.parse_block()
        if tok.lexeme in TYPE_KEYWORDS:
            return self.parse_var_decl()
        if tok.lexeme == "if":
            return self.parse_if()
        if tok.lexeme == "while":
            return self.parse_while()
        if tok.lexeme == "for":
            return self.parse_for()
        if tok.lexeme == "return":
            self.advance()
            value = None if self.at(";") else self.parse_expression()
            semi = self.expect(";")
            return Return(value, tok.span.merge(semi.span))
        if tok.lexeme == "cout":
            return self.parse_print()
        if tok.lexeme == "cin":
            return self.parse_read()
        stmt = self.parse_simple_statement()
        semi = self.expect(";")
        stmt.span = stmt.span.merge(semi.span)
        return stmt

    def parse_var_decl(self, end_at_semi: bool = True) -> VarDecl:
        decl_type, type_span = self.parse_type(allow_void=False)
        name = self.expect_ident()
        init = None
        span = type_span.merge(name.span)
        if self.at("="):
            self.advance()
            init = self.parse_expression()
            span = span.merge(init.span)
        if end_at_semi:
            semi = self.expect(";")
            span = span.merge(semi.span)
        return VarDecl(decl_type, name.lexeme, init, span)

    def parse_if(self) -> If:
        kw = self.expect("if")
        self.expect("(")
        cond = self.parse_expression()
        rparen = self.expect(")")
        head_span = kw.span.merge(rparen.span)
        then_block = self.parse_block()
        else_block = None
        span = kw.span.merge(then_block.span)
        if self.at("else"):
            self.advance()
            if self.at("if"):
                nested = self.parse_if()
                else_block = Block([nested], nested.span)
            else:
                else_block = self.parse_block()
            span = span.merge(else_block.span)
        return If(cond, then_block, else_block, span, head_span)

    def parse_while(self) -> While:
        kw = self.expect("while")
        self.expect("(")
        cond = self.parse_expression()
        rparen = self.expect(")")
        body = self.parse_block()
        return While(cond, body, kw.span.merge(body.span), kw.span.merge(rparen.span))

    def parse_for(self) -> For:
        kw = self.expect("for")
        self.expect("(")
        if self.at_type():
            init: Stmt = self.parse_var_decl(end_at_semi=False)
            self.expect(";")
        else:
            init = self.parse_simple_statement()
            self.expect(";")
        cond = self.parse_expression()
        self.expect(";")
        step = self.parse_simple_statement()
        rparen = self.expect(")")
        body = self.parse_block()
        return For(init, cond, step, body,
                   kw.span.merge(body.span), kw.span.merge(rparen.span))

    def at_type(self) -> bool:
        tok = self.peek()
        return tok is not None and tok.lexeme in TYPE_KEYWORDS

    def parse_print(self) -> Print:
        kw = self.expect("cout")
        items: list[Expr] = []
        while self.at("<<"):
            self.advance()
            if self.at("endl"):
                tok = self.advance()
                items.append(Endl(tok.span))
            else:
                items.append(self.parse_expression())
        if not items:
            self.fail("expected '<<' after cout")
        semi = self.expect(";")
        return Print(items, kw.span.merge(semi.span))

    def parse_read(self) -> Read:
        kw = self.expect("cin")
        targets: list[LValue] = []
        while self.at(">>"):
            self.advance()
            expr = self.parse_postfix()
            if not isinstance(expr, (VarRef, IndexAccess)):
                raise FrontendError([Diagnostic(
                    "error", "SyntaxError", "cin target must be a variable or element",
                    expr.span)])
            targets.append(expr)
        if not targets:
            self.fail("expected '>>' after cin")
        semi = self.expect(";")
        return Read(targets, kw.span.merge(semi.span))

    def parse_simple_statement(self) -> Stmt:
        """Assignment, compound assignment, ++/--, or a bare call."""
        expr = self.parse_expression()
        tok = self.peek()
        if tok is not None and tok.lexeme == "=":
            self.require_lvalue(expr)
            self.advance()
            value = self.parse_expression()
            return Assign(expr, value, expr.span.merge(value.span))
        if tok is not None and tok.lexeme in _COMPOUND_OPS:
            self.require_lvalue(expr)
            self.advance()
            rhs = self.parse_expression()
            combined = Binary(_COMPOUND_OPS[tok.lexeme], expr, rhs, expr.span.merge(rhs.span))
            return Assign(expr, combined, combined.span)
        if tok is not None and tok.lexeme in ("++", "--"):
            self.require_lvalue(expr)
            op_tok = self.advance()
            one = Literal(1, "int", op_tok.span)
            op = "+" if op_tok.lexeme == "++" else "-"
            span = expr.span.merge(op_tok.span)
            return Assign(expr, Binary(op, expr, one, span), span)
        return ExprStmt(expr, expr.span)

    def require_lvalue(self, expr: Expr) -> None:
        if not isinstance(expr, (VarRef, IndexAccess)):
            raise FrontendError([Diagnostic(
                "error", "SyntaxError",
                "left side of assignment must be a variable or element", expr.span)])

    # --- expressions ---

    def parse_expression(self) -> Expr:
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            self.fail("nesting too deep")
        expr = self.parse_binary(0)
        self.depth -= 1
        return expr

    def parse_binary(self, level: int) -> Expr:
        if level >= len(_BINARY_LEVELS):
            return self.parse_unary()
        expr = self.parse_binary(level + 1)
        while True:
            tok = self.peek()
            if tok is None or tok.lexeme not in _BINARY_LEVELS[level]:
                return expr
            self.advance()
            right = self.parse_binary(level + 1)
            expr = Binary(tok.lexeme, expr, right, expr.span.merge(right.span))

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.lexeme in ("-", "!"):
            self.advance()
            operand = self.parse_unary()
            return Unary(tok.lexeme, operand, tok.span.merge(operand.span))
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        expr = self.parse_primary()
        while True:
            if self.at("."):
                if not isinstance(expr, VarRef):
                    self.fail("methods can only be called on variables")
                self.advance()
                method = self.expect_ident()
                self.expect("(")
                args = self.parse_args()
                rparen = self.last_span()
                expr = MethodCall(expr, method.lexeme, args, expr.span.merge(rparen))
            elif self.at("["):
                if not isinstance(expr, VarRef):
                    self.fail("only variables can be indexed")
                self.advance()
                index = self.parse_expression()
                close = self.expect("]")
                expr = IndexAccess(expr, index, expr.span.merge(close.span))
            else:
                return expr

    def parse_args(self) -> list[Expr]:
        """Arguments up to and including the closing paren."""
        args: list[Expr] = []
        if not self.at(")"):
            while True:
                args.append(self.parse_expression())
                if not self.at(","):
                    break
                self.advance()
        self.expect(")")
        return args

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok is None:
            self.fail("expected an expression")
        if tok.kind == "int_lit":
            self.advance()
            return Literal(tok.value, "int", tok.span)
        if tok.kind == "double_lit":
            self.advance()
            return Literal(tok.value, "double", tok.span)
        if tok.kind == "char_lit":
            self.advance()
            return Literal(tok.value, "char", tok.span)
        if tok.kind == "string_lit":
            self.advance()
            return Literal(tok.value, "string", tok.span)
        if tok.lexeme in ("true", "false"):
            self.advance()
            return Literal(tok.lexeme == "true", "bool", tok.span)
        if tok.lexeme == "endl":
            # accepted here so the validator can explain the mistake
            self.advance()
            return Endl(tok.span)
        if tok.kind == "ident":
            self.advance()
            if self.at("("):
                self.advance()
                args = self.parse_args()
                return Call(tok.lexeme, args, tok.span.merge(self.last_span()))
            return VarRef(tok.lexeme, tok.span)
        if tok.lexeme == "(":
            self.advance()
            expr = self.parse_expression()
            self.expect(")")
            return expr
        if tok.lexeme == "{":
            self.advance()
            first = self.parse_expression()
            self.expect(",")
            second = self.parse_expression()
            close = self.expect("}")
            return PairLiteral(first, second, tok.span.merge(close.span))
        self.fail("expected an expression")
