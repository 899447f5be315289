"""Tokenizer for the C++ teaching subset.

Maximal-munch scanning with full span tracking.  `#` lines (includes)
and comments are skipped; everything else becomes a token.  The first
malformed construct aborts with a FrontendError.
"""

from __future__ import annotations

from dataclasses import dataclass

from .source import Diagnostic, FrontendError, SourceSpan

KEYWORDS = {
    "int", "bool", "char", "double", "string", "void",
    "vector", "stack", "queue", "deque", "map", "unordered_map",
    "if", "else", "while", "for", "return",
    "true", "false", "cout", "cin", "endl",
    "using", "namespace",
}

# Longest first so that maximal munch falls out of a linear scan.
OPERATORS = [
    "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=",
    "=", "<", ">", "+", "-", "*", "/", "%", "!", "&", ".",
]

PUNCT = "(){}[],;"

ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"', "0": "\0"}


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | ident | int_lit | double_lit | char_lit | string_lit | op | punct
    lexeme: str
    span: SourceSpan
    value: object = None  # decoded payload for literals


class _Scanner:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def at_end(self) -> bool:
        return self.pos >= len(self.source)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.source[i] if i < len(self.source) else ""

    def advance(self) -> str:
        ch = self.source[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def here(self) -> tuple[int, int]:
        return self.line, self.col

    def fail(self, kind: str, message: str, start: tuple[int, int] | None = None) -> None:
        sl, sc = start if start else self.here()
        el, ec = self.here()
        if (el, ec) > (sl, sc):
            # Point at the last consumed character, not one past it.
            ec = max(1, ec - 1) if el == self.line else ec
        span = SourceSpan(sl, sc, max(sl, el), max(sc if sl == el else 1, ec))
        raise FrontendError([Diagnostic("error", kind, message, span)])


def tokenize(source: str) -> list[Token]:
    """Scan the whole source into tokens.

    Invariant: for every token, slicing the source by its span yields
    exactly its lexeme.
    """
    sc = _Scanner(source)
    tokens: list[Token] = []
    while not sc.at_end():
        ch = sc.peek()
        if ch in " \t\r\n":
            sc.advance()
            continue
        if ch == "#":
            # Preprocessor lines carry no meaning for the subset.
            while not sc.at_end() and sc.peek() != "\n":
                sc.advance()
            continue
        if ch == "/" and sc.peek(1) == "/":
            while not sc.at_end() and sc.peek() != "\n":
                sc.advance()
            continue
        if ch == "/" and sc.peek(1) == "*":
            start = sc.here()
            sc.advance()
            sc.advance()
            while not (sc.peek() == "*" and sc.peek(1) == "/"):
                if sc.at_end():
                    sc.fail("UnterminatedComment", "block comment is never closed", start)
                sc.advance()
            sc.advance()
            sc.advance()
            continue
        tokens.append(_scan_token(sc))
    return tokens


def _scan_token(sc: _Scanner) -> Token:
    start_line, start_col = sc.here()
    start_pos = sc.pos
    ch = sc.peek()

    def make(kind: str, value: object = None) -> Token:
        lexeme = sc.source[start_pos : sc.pos]
        span = SourceSpan(start_line, start_col, sc.line, max(1, sc.col - 1))
        return Token(kind, lexeme, span, value)

    if ch.isalpha() or ch == "_":
        while sc.peek().isalnum() or sc.peek() == "_":
            sc.advance()
        lexeme = sc.source[start_pos : sc.pos]
        return make("keyword" if lexeme in KEYWORDS else "ident")

    if ch.isdigit():
        while sc.peek().isdigit():
            sc.advance()
        is_double = False
        if sc.peek() == "." and sc.peek(1).isdigit():
            is_double = True
            sc.advance()
            while sc.peek().isdigit():
                sc.advance()
        # exponent: e/E, optional sign, at least one digit, else untouched
        if sc.peek() in ("e", "E"):
            offset = 2 if sc.peek(1) in ("+", "-") else 1
            if sc.peek(offset).isdigit():
                is_double = True
                for _ in range(offset + 1):
                    sc.advance()
                while sc.peek().isdigit():
                    sc.advance()
        text = sc.source[start_pos : sc.pos]
        if is_double:
            return make("double_lit", float(text))
        return make("int_lit", int(text))

    if ch == "'":
        sc.advance()
        value = _scan_char_payload(sc, (start_line, start_col), "'", "UnterminatedChar")
        if sc.peek() != "'":
            sc.fail("UnterminatedChar", "char literal must hold exactly one character",
                    (start_line, start_col))
        sc.advance()
        return make("char_lit", value)

    if ch == '"':
        sc.advance()
        chars: list[str] = []
        while sc.peek() != '"':
            if sc.at_end() or sc.peek() == "\n":
                sc.fail("UnterminatedString", "string literal is never closed",
                        (start_line, start_col))
            chars.append(_scan_char_payload(sc, (start_line, start_col), '"', "UnterminatedString"))
        sc.advance()
        return make("string_lit", "".join(chars))

    for op in OPERATORS:
        if sc.source.startswith(op, sc.pos):
            for _ in op:
                sc.advance()
            return make("op")

    if ch in PUNCT:
        sc.advance()
        return make("punct")

    sc.advance()
    tok = make("unknown")
    raise FrontendError([
        Diagnostic("error", "UnknownCharacter", "unexpected character %r" % ch, tok.span)
    ])


def _scan_char_payload(sc: _Scanner, start: tuple[int, int], quote: str, kind: str) -> str:
    """One character inside a quoted literal, decoding backslash escapes."""
    if sc.at_end() or sc.peek() == "\n":
        sc.fail(kind, "literal is never closed", start)
    ch = sc.advance()
    if ch != "\\":
        return ch
    if sc.at_end():
        sc.fail(kind, "literal is never closed", start)
    esc = sc.advance()
    if esc not in ESCAPES:
        sc.fail("BadEscape", "unknown escape sequence '\\%s'" % esc, start)
    return ESCAPES[esc]
