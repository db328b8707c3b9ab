"""Indentation-aware tokenizer for the teaching subset of Python.

Spaces only for indentation; a tab in leading whitespace is a lex error.
Newlines inside brackets are joined implicitly.  Comments produce no
tokens, but ``# expect: FPNNN`` annotations are collected on the side so
the corpus runner can compare them against diagnostics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .tokens import KEYWORDS, LexError, SourceSpan, Token, TokenKind

_OPERATORS = sorted(
    """**= //= >>= <<= := -> == != <= >= ** // << >> += -= *= /= %= &= |= ^= @=
    + - * / % @ & | ^ ~ < > ( ) [ ] { } , : . ; =""".split(),
    key=len,
    reverse=True,
)
_OPENERS = "([{"
_CLOSERS = ")]}"
_STRING_PREFIXES = frozenset({"r", "u", "f", "b", "rb", "br", "fr", "rf"})
_ESCAPES = {"\\": "\\", '"': '"', "'": "'", "n": "\n", "t": "\t"}
_EXPECT_RE = re.compile(r"#\s*expect:\s*([A-Za-z]+\d+(?:\s*,\s*[A-Za-z]+\d+)*)\s*$")


@dataclass(frozen=True)
class Expectation:
    """A ``# expect: RULE`` annotation attached to a physical line."""

    line: int
    rule: str


@dataclass
class LexResult:
    tokens: list[Token]
    expectations: list[Expectation] = field(default_factory=list)


class _Lexer:
    def __init__(self, source: str, file: str):
        self.src = source.replace("\r\n", "\n").replace("\r", "\n")
        self.file = file
        self.pos = 0
        self.line = 1
        self.line_start = 0
        self.depth = 0
        self.indents = [0]
        self.tokens: list[Token] = []
        self.expectations: list[Expectation] = []

    # -- positions -----------------------------------------------------

    @property
    def col(self) -> int:
        return self.pos - self.line_start + 1

    def span_from(self, line: int, col: int) -> SourceSpan:
        return SourceSpan(self.file, line, col, self.line, self.col)

    def point(self) -> SourceSpan:
        return SourceSpan(self.file, self.line, self.col, self.line, self.col)

    def error(self, message: str, line: int | None = None, col: int | None = None) -> LexError:
        line = self.line if line is None else line
        col = self.col if col is None else col
        return LexError(message, SourceSpan(self.file, line, col, line, col + 1))

    def emit(self, kind: TokenKind, lexeme: str, span: SourceSpan) -> None:
        self.tokens.append(Token(kind, lexeme, span))

    def newline(self) -> None:
        self.pos += 1
        self.line += 1
        self.line_start = self.pos

    # -- driver --------------------------------------------------------

    def run(self) -> LexResult:
        src = self.src
        at_line_start = True
        while self.pos < len(src):
            if at_line_start and self.depth == 0:
                if self.indentation():
                    # blank or comment-only line: no tokens, no NEWLINE
                    if self.pos < len(src) and src[self.pos] == "#":
                        self.comment()
                    if self.pos < len(src):
                        self.newline()
                    continue
                at_line_start = False
            ch = src[self.pos]
            if ch == "\n":
                if self.depth == 0:
                    self.emit(TokenKind.NEWLINE, "\n", SourceSpan(
                        self.file, self.line, self.col, self.line, self.col + 1))
                    at_line_start = True
                self.newline()
            elif ch in " \t\f":
                self.pos += 1
            elif ch == "#":
                self.comment()
            elif ch.isalpha() or ch == "_":
                self.name()
            elif ch.isdigit() or (ch == "." and src[self.pos + 1:self.pos + 2].isdigit()):
                self.number()
            elif ch in "\"'":
                self.string(self.pos, self.line, self.col)
            else:
                self.operator()
        if self.tokens and self.tokens[-1].kind is not TokenKind.NEWLINE:
            self.emit(TokenKind.NEWLINE, "", self.point())
        while len(self.indents) > 1:
            self.indents.pop()
            self.emit(TokenKind.DEDENT, "", self.point())
        self.emit(TokenKind.EOF, "", self.point())
        return LexResult(self.tokens, self.expectations)

    def indentation(self) -> bool:
        """Measure leading whitespace; return True if the line was blank."""
        src = self.src
        start = self.pos
        while self.pos < len(src) and src[self.pos] in " \t\f":
            if src[self.pos] == "\t":
                raise self.error("tab character used for indentation")
            self.pos += 1
        if self.pos >= len(src) or src[self.pos] in "\n#":
            return True
        width = self.pos - start
        if width > self.indents[-1]:
            self.indents.append(width)
            self.emit(TokenKind.INDENT, src[start:self.pos],
                      SourceSpan(self.file, self.line, 1, self.line, width + 1))
        elif width < self.indents[-1]:
            while width < self.indents[-1]:
                self.indents.pop()
                self.emit(TokenKind.DEDENT, "", self.point())
            if width != self.indents[-1]:
                raise self.error("unindent does not match any outer indentation level")
        return False

    # -- token scanners ------------------------------------------------

    def comment(self) -> None:
        end = self.src.find("\n", self.pos)
        end = len(self.src) if end < 0 else end
        text = self.src[self.pos:end]
        m = _EXPECT_RE.match(text)
        if m:
            for rule in m.group(1).split(","):
                self.expectations.append(Expectation(self.line, rule.strip().upper()))
        self.pos = end

    def name(self) -> None:
        src = self.src
        line, col, start = self.line, self.col, self.pos
        while self.pos < len(src) and (src[self.pos].isalnum() or src[self.pos] == "_"):
            self.pos += 1
        text = src[start:self.pos]
        if self.pos < len(src) and src[self.pos] in "\"'" and text.lower() in _STRING_PREFIXES:
            self.string(start, line, col)
            return
        kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.NAME
        self.emit(kind, text, self.span_from(line, col))

    def number(self) -> None:
        src = self.src
        line, col, start = self.line, self.col, self.pos

        def digits() -> None:
            while self.pos < len(src) and src[self.pos].isdigit():
                self.pos += 1

        digits()
        if src[self.pos:self.pos + 1] == ".":
            self.pos += 1
            digits()
        if src[self.pos:self.pos + 1] in ("e", "E"):
            mark = self.pos
            self.pos += 1
            if src[self.pos:self.pos + 1] in ("+", "-"):
                self.pos += 1
            if src[self.pos:self.pos + 1].isdigit():
                digits()
            else:
                self.pos = mark
        if self.pos < len(src) and (src[self.pos].isalnum() or src[self.pos] == "_"):
            raise self.error("invalid number literal", line, col)
        self.emit(TokenKind.NUMBER, src[start:self.pos], self.span_from(line, col))

    def string(self, start: int, line: int, col: int) -> None:
        src = self.src
        prefix = src[start:self.pos].lower()
        raw = "r" in prefix
        quote = src[self.pos]
        triple = src[self.pos:self.pos + 3] == quote * 3
        closer = quote * 3 if triple else quote
        self.pos += len(closer)
        while True:
            if self.pos >= len(src):
                raise self.error("unterminated string literal", line, col)
            ch = src[self.pos]
            if src.startswith(closer, self.pos):
                self.pos += len(closer)
                break
            if ch == "\n":
                if not triple:
                    raise self.error("unterminated string literal", line, col)
                self.newline()
                continue
            if ch == "\\":
                nxt = src[self.pos + 1:self.pos + 2]
                if nxt == "":
                    raise self.error("unterminated string literal", line, col)
                if not raw and nxt not in _ESCAPES:
                    raise self.error(f"unsupported escape sequence '\\{nxt}'")
                if nxt == "\n":
                    self.pos += 1
                    self.newline()
                    continue
                self.pos += 2
                continue
            self.pos += 1
        self.emit(TokenKind.STRING, src[start:self.pos], self.span_from(line, col))

    def operator(self) -> None:
        line, col = self.line, self.col
        for op in _OPERATORS:
            if self.src.startswith(op, self.pos):
                self.pos += len(op)
                if op in _OPENERS:
                    self.depth += 1
                elif op in _CLOSERS:
                    self.depth = max(0, self.depth - 1)
                self.emit(TokenKind.OP, op, self.span_from(line, col))
                return
        raise self.error(f"unsupported character {self.src[self.pos]!r}")


def lex(source: str, file: str = "<string>") -> LexResult:
    """Tokenize ``source`` and collect ``# expect:`` annotations."""
    return _Lexer(source, file).run()


def tokenize(source: str, file: str = "<string>") -> list[Token]:
    """Return the token sequence for ``source``, ending with EOF.

    Raises :class:`LexError` on tab indentation, unterminated strings,
    unsupported escapes and characters outside the subset.
    """
    return lex(source, file).tokens


def string_value(lexeme: str) -> str:
    """Decode a STRING token lexeme (prefix and quotes included)."""
    i = 0
    while lexeme[i] not in "\"'":
        i += 1
    prefix, body = lexeme[:i].lower(), lexeme[i:]
    q = 3 if body[:3] in ('"""', "'''") else 1
    body = body[q:-q]
    if "r" in prefix:
        return body
    out = []
    j = 0
    while j < len(body):
        ch = body[j]
        if ch == "\\":
            out.append(_ESCAPES[body[j + 1]])
            j += 2
        else:
            out.append(ch)
            j += 1
    return "".join(out)
