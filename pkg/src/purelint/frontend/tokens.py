"""Token and source-span types shared by the lexer, parser and rule engine."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TokenKind(str, Enum):
    NAME = "NAME"
    KEYWORD = "KEYWORD"
    NUMBER = "NUMBER"
    STRING = "STRING"
    OP = "OP"
    NEWLINE = "NEWLINE"
    INDENT = "INDENT"
    DEDENT = "DEDENT"
    EOF = "EOF"


#: Tokens that carry layout rather than program text.
LAYOUT_KINDS = frozenset(
    {TokenKind.NEWLINE, TokenKind.INDENT, TokenKind.DEDENT, TokenKind.EOF}
)

KEYWORDS = frozenset(
    """False None True and as assert async await break class continue def del
    elif else except finally for from global if import in is lambda nonlocal
    not or pass raise return try while with yield""".split()
)


@dataclass(frozen=True, order=True)
class SourceSpan:
    """A region of a source file.

    Lines and columns are 1-based.  ``end_col`` is exclusive, so a one
    character token at column 5 has ``col=5, end_col=6``.
    """

    file: str
    line: int
    col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if (self.line, self.col) > (self.end_line, self.end_col):
            raise ValueError(f"span start after end: {self}")

    @property
    def start(self) -> tuple[int, int]:
        return (self.line, self.col)

    @property
    def end(self) -> tuple[int, int]:
        return (self.end_line, self.end_col)

    def cover(self, other: SourceSpan) -> SourceSpan:
        """Smallest span containing both ``self`` and ``other``."""
        start = min(self.start, other.start)
        end = max(self.end, other.end)
        return SourceSpan(self.file, start[0], start[1], end[0], end[1])

    def contains(self, other: SourceSpan) -> bool:
        return self.start <= other.start and other.end <= self.end

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: SourceSpan

    def is_op(self, *lexemes: str) -> bool:
        return self.kind is TokenKind.OP and self.lexeme in lexemes

    def is_keyword(self, *lexemes: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.lexeme in lexemes

    def __repr__(self) -> str:
        return f"Token({self.kind.value} {self.lexeme!r} @{self.span.line}:{self.span.col})"


class LexError(Exception):
    """Raised for input the lexer cannot turn into tokens."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


class ParseError(Exception):
    """A syntax diagnostic: the parser met a token outside the teaching grammar."""

    def __init__(self, message: str, token: Token):
        super().__init__(f"{token.span}: {message}")
        self.message = message
        self.token = token

    @property
    def span(self) -> SourceSpan:
        return self.token.span
