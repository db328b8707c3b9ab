"""Lexer, syntax tree and parser for the teaching subset of Python."""

from . import nodes
from .lexer import Expectation, LexResult, lex, tokenize
from .parser import parse, parse_module
from .tokens import LexError, ParseError, SourceSpan, Token, TokenKind

__all__ = [
    "Expectation",
    "LexError",
    "LexResult",
    "ParseError",
    "SourceSpan",
    "Token",
    "TokenKind",
    "lex",
    "nodes",
    "parse",
    "parse_module",
    "tokenize",
]
