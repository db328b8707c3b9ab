"""Recursive-descent parser for the teaching subset of Python.

The grammar covers function definitions, name assignments, returns,
expression statements and imports, plus the statements the subset
forbids (``for``, ``while``, ``if``, ``with``, ``try``, ``class``,
``del``, ``global``, ``nonlocal``, augmented assignment and walrus).
Those parse into ordinary nodes so the rule engine can report them.
Decorators, ``async``, ``match``, f-strings, bytes literals,
star-arguments and the other statements (``pass``, ``raise``, ...) raise
:class:`ParseError`.
"""

from __future__ import annotations

from typing import Callable, Optional

from . import nodes as n
from .lexer import string_value, tokenize
from .tokens import LAYOUT_KINDS, ParseError, SourceSpan, Token, TokenKind

_AUGOPS = frozenset("+= -= *= /= //= %= **= &= |= ^= >>= <<= @=".split())
_COMPOPS = frozenset("< > == >= <= !=".split())
_EXPR_START_KEYWORDS = frozenset({"lambda", "not", "True", "False", "None"})
_EXPR_START_OPS = frozenset({"(", "[", "{", "-", "+", "~"})
_UNSUPPORTED_KEYWORDS = {
    "async": "'async' is not supported",
    "await": "'await' is not supported",
    "yield": "'yield' is not supported",
    "pass": "'pass' statement is not part of the subset",
    "break": "'break' statement is not part of the subset",
    "continue": "'continue' statement is not part of the subset",
    "raise": "'raise' statement is not part of the subset",
    "assert": "'assert' statement is not part of the subset",
}


class Parser:
    def __init__(self, tokens: list[Token], source: str = ""):
        if not tokens or tokens[-1].kind is not TokenKind.EOF:
            raise ValueError("token sequence must end with EOF")
        self.tokens = tokens
        self.source = source
        self.i = 0
        self.last: Optional[Token] = None
        self.function_depth = 0

    # -- token helpers -------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind is not TokenKind.EOF:
            self.i += 1
        if tok.kind not in LAYOUT_KINDS:
            self.last = tok
        return tok

    def at_op(self, *ops: str) -> bool:
        return self.peek().is_op(*ops)

    def at_kw(self, *kws: str) -> bool:
        return self.peek().is_keyword(*kws)

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        if tok.kind is TokenKind.EOF and "end of input" not in message:
            message = f"unexpected end of input ({message})"
        return ParseError(message, tok)

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            raise self.error(f"expected '{op}', found {self.describe(self.peek())}")
        return self.advance()

    def expect_kw(self, kw: str) -> Token:
        if not self.at_kw(kw):
            raise self.error(f"expected '{kw}', found {self.describe(self.peek())}")
        return self.advance()

    def expect_name(self) -> Token:
        if self.peek().kind is not TokenKind.NAME:
            raise self.error(f"expected a name, found {self.describe(self.peek())}")
        return self.advance()

    def expect_kind(self, kind: TokenKind) -> Token:
        if self.peek().kind is not kind:
            raise self.error(f"expected {kind.value}, found {self.describe(self.peek())}")
        return self.advance()

    @staticmethod
    def describe(tok: Token) -> str:
        # the lexer adds an empty NEWLINE when the file lacks a final one
        if tok.kind is TokenKind.EOF or (tok.kind is TokenKind.NEWLINE and not tok.lexeme):
            return "end of input"
        if tok.kind in LAYOUT_KINDS:
            return tok.kind.value
        return repr(tok.lexeme)

    def span_from(self, start: Token | SourceSpan) -> SourceSpan:
        first = start.span if isinstance(start, Token) else start
        assert self.last is not None
        return first.cover(self.last.span)

    def token_at(self, span: SourceSpan) -> Token:
        for tok in self.tokens:
            if tok.span.start == span.start and tok.kind not in LAYOUT_KINDS:
                return tok
        return self.peek()

    def starts_expression(self) -> bool:
        tok = self.peek()
        if tok.kind in (TokenKind.NAME, TokenKind.NUMBER, TokenKind.STRING):
            return True
        if tok.kind is TokenKind.KEYWORD:
            return tok.lexeme in _EXPR_START_KEYWORDS
        return tok.kind is TokenKind.OP and tok.lexeme in _EXPR_START_OPS

    # -- module and statements -----------------------------------------

    def parse_module(self) -> n.Module:
        first = self.peek()
        body = []
        while self.peek().kind is not TokenKind.EOF:
            if self.peek().kind is TokenKind.INDENT:
                raise self.error("unexpected indent")
            body.append(self.statement())
        end = self.peek().span
        span = SourceSpan(first.span.file, 1, 1, end.end_line, end.end_col)
        return n.Module(span, tuple(body), source=self.source)

    def statement(self) -> n.Node:
        tok = self.peek()
        if tok.kind is TokenKind.KEYWORD:
            kw = tok.lexeme
            compound: dict[str, Callable[[], n.Node]] = {
                "def": self.funcdef,
                "if": lambda: self.if_stmt(False),
                "while": self.while_stmt,
                "for": self.for_stmt,
                "with": self.with_stmt,
                "try": self.try_stmt,
                "class": self.classdef,
            }
            if kw in compound:
                return compound[kw]()
            if kw in _UNSUPPORTED_KEYWORDS:
                raise self.error(_UNSUPPORTED_KEYWORDS[kw])
            if kw in ("elif", "else", "except", "finally"):
                raise self.error(f"'{kw}' without a matching statement")
        elif tok.is_op("@"):
            raise self.error("decorators are not supported")
        elif tok.kind is TokenKind.NAME and tok.lexeme == "match" and self.line_ends_with_colon():
            raise self.error("'match' statements are not supported")
        return self.simple_line()

    def line_ends_with_colon(self) -> bool:
        j = self.i
        while self.tokens[j].kind not in (TokenKind.NEWLINE, TokenKind.EOF):
            j += 1
        return j > self.i and self.tokens[j - 1].is_op(":")

    def simple_line(self) -> n.Node:
        stmt = self.simple_stmt()
        if self.at_op(";"):
            raise self.error("multiple statements on one line are not supported")
        self.expect_kind(TokenKind.NEWLINE)
        return stmt

    def simple_stmt(self) -> n.Node:
        tok = self.peek()
        if tok.is_keyword("return"):
            return self.return_stmt()
        if tok.is_keyword("import"):
            return self.import_stmt()
        if tok.is_keyword("from"):
            return self.from_stmt()
        if tok.is_keyword("global", "nonlocal"):
            return self.scope_decl()
        if tok.is_keyword("del"):
            self.advance()
            targets = self.target_list()
            elts = targets.elts if isinstance(targets, n.TupleLit) else (targets,)
            for t in elts:
                self.check_target(t)
            return n.Del(self.span_from(tok), elts)
        if tok.kind is TokenKind.KEYWORD and tok.lexeme in _UNSUPPORTED_KEYWORDS:
            raise self.error(_UNSUPPORTED_KEYWORDS[tok.lexeme])
        return self.expr_stmt()

    def suite(self) -> tuple[n.Node, ...]:
        self.expect_op(":")
        if self.peek().kind is not TokenKind.NEWLINE:
            return (self.simple_line(),)
        self.advance()
        if self.peek().kind is not TokenKind.INDENT:
            raise self.error("expected an indented block")
        self.advance()
        body = []
        while self.peek().kind is not TokenKind.DEDENT:
            if self.peek().kind is TokenKind.INDENT:
                raise self.error("unexpected indent")
            body.append(self.statement())
        self.advance()
        return tuple(body)

    def funcdef(self) -> n.FunctionDef:
        start = self.expect_kw("def")
        name = self.expect_name()
        self.expect_op("(")
        params = self.params(")", annotations=True)
        self.expect_op(")")
        if self.at_op("->"):
            self.advance()
            self.test()
        self.function_depth += 1
        try:
            body = self.suite()
        finally:
            self.function_depth -= 1
        return n.FunctionDef(self.span_from(start), name.lexeme, params, body, name_span=name.span)

    def params(self, closer: str, annotations: bool) -> tuple[n.Param, ...]:
        params: list[n.Param] = []
        while not self.at_op(closer):
            if self.at_op("*", "**", "/"):
                raise self.error("star-arguments are not supported")
            name = self.expect_name()
            if annotations and self.at_op(":"):
                self.advance()
                self.test()
            default = None
            if self.at_op("="):
                self.advance()
                default = self.test()
            params.append(n.Param(self.span_from(name), name.lexeme, default))
            if not self.at_op(","):
                break
            self.advance()
        seen = set()
        for p in params:
            if p.name in seen:
                raise self.error(f"duplicate parameter '{p.name}'", self.token_at(p.span))
            seen.add(p.name)
        return tuple(params)

    def if_stmt(self, is_elif: bool) -> n.If:
        start = self.advance()
        test = self.namedexpr()
        body = self.suite()
        orelse: tuple[n.Node, ...] = ()
        if self.at_kw("elif"):
            orelse = (self.if_stmt(True),)
        elif self.at_kw("else"):
            self.advance()
            orelse = self.suite()
        return n.If(self.span_from(start), test, body, orelse, is_elif)

    def while_stmt(self) -> n.While:
        start = self.expect_kw("while")
        test = self.namedexpr()
        body = self.suite()
        orelse = self.else_suite()
        return n.While(self.span_from(start), test, body, orelse)

    def for_stmt(self) -> n.For:
        start = self.expect_kw("for")
        target = self.target_list()
        self.check_target(target)
        self.expect_kw("in")
        iterable = self.exprlist()
        body = self.suite()
        orelse = self.else_suite()
        return n.For(self.span_from(start), target, iterable, body, orelse)

    def else_suite(self) -> tuple[n.Node, ...]:
        if self.at_kw("else"):
            self.advance()
            return self.suite()
        return ()

    def with_stmt(self) -> n.With:
        start = self.expect_kw("with")
        items = []
        while True:
            first = self.peek()
            context = self.test()
            target = None
            if self.at_kw("as"):
                self.advance()
                target = self.bitor()
                self.check_target(target)
            items.append(n.WithItem(self.span_from(first), context, target))
            if not self.at_op(","):
                break
            self.advance()
        body = self.suite()
        return n.With(self.span_from(start), tuple(items), body)

    def try_stmt(self) -> n.Try:
        start = self.expect_kw("try")
        body = self.suite()
        handlers = []
        while self.at_kw("except"):
            h_start = self.advance()
            exc_type = None
            name = None
            if not self.at_op(":"):
                exc_type = self.test()
                if self.at_kw("as"):
                    self.advance()
                    name = self.expect_name().lexeme
            h_body = self.suite()
            handlers.append(n.ExceptHandler(self.span_from(h_start), exc_type, name, h_body))
        orelse = self.else_suite() if handlers else ()
        finalbody: tuple[n.Node, ...] = ()
        if self.at_kw("finally"):
            self.advance()
            finalbody = self.suite()
        if not handlers and not finalbody:
            raise self.error("expected 'except' or 'finally' block")
        return n.Try(self.span_from(start), body, tuple(handlers), orelse, finalbody)

    def classdef(self) -> n.ClassDef:
        start = self.expect_kw("class")
        name = self.expect_name()
        bases: tuple[n.Node, ...] = ()
        if self.at_op("("):
            self.advance()
            args, keywords = self.call_args()
            bases = args + keywords
        body = self.suite()
        return n.ClassDef(self.span_from(start), name.lexeme, bases, body)

    def return_stmt(self) -> n.Return:
        start = self.expect_kw("return")
        if self.function_depth == 0:
            raise self.error("'return' outside function", start)
        value = None
        if self.peek().kind is not TokenKind.NEWLINE:
            value = self.exprlist()
        return n.Return(self.span_from(start), value)

    def dotted_name(self) -> str:
        parts = [self.expect_name().lexeme]
        while self.at_op("."):
            self.advance()
            parts.append(self.expect_name().lexeme)
        return ".".join(parts)

    def alias(self, dotted: bool) -> n.Alias:
        first = self.peek()
        name = self.dotted_name() if dotted else self.expect_name().lexeme
        asname = None
        if self.at_kw("as"):
            self.advance()
            asname = self.expect_name().lexeme
        return n.Alias(self.span_from(first), name, asname)

    def import_stmt(self) -> n.Import:
        start = self.expect_kw("import")
        names = [self.alias(dotted=True)]
        while self.at_op(","):
            self.advance()
            names.append(self.alias(dotted=True))
        return n.Import(self.span_from(start), None, tuple(names))

    def from_stmt(self) -> n.Import:
        start = self.expect_kw("from")
        if self.at_op("."):
            raise self.error("relative imports are not supported")
        module = self.dotted_name()
        self.expect_kw("import")
        if self.at_op("*"):
            star = self.advance()
            return n.Import(self.span_from(start), module, (n.Alias(star.span, "*"),))
        parens = self.at_op("(")
        if parens:
            self.advance()
        names = [self.alias(dotted=False)]
        while self.at_op(","):
            self.advance()
            if parens and self.at_op(")"):
                break
            names.append(self.alias(dotted=False))
        if parens:
            self.expect_op(")")
        return n.Import(self.span_from(start), module, tuple(names))

    def scope_decl(self) -> n.Node:
        start = self.advance()
        names = [self.expect_name().lexeme]
        while self.at_op(","):
            self.advance()
            names.append(self.expect_name().lexeme)
        cls = n.Global if start.lexeme == "global" else n.Nonlocal
        return cls(self.span_from(start), tuple(names))

    def expr_stmt(self) -> n.Node:
        start = self.peek()
        first = self.exprlist(walrus=True)
        if self.at_op("="):
            chain = [first]
            while self.at_op("="):
                self.advance()
                chain.append(self.exprlist(walrus=True))
            targets, value = chain[:-1], chain[-1]
            for t in targets:
                self.check_target(t)
            return n.Assign(self.span_from(start), tuple(targets), value)
        if self.peek().kind is TokenKind.OP and self.peek().lexeme in _AUGOPS:
            op = self.advance().lexeme
            if not isinstance(first, (n.Name, n.AttributeRead, n.SubscriptRead)):
                raise self.error("illegal target for augmented assignment", self.token_at(first.span))
            value = self.exprlist()
            return n.AugAssign(self.span_from(start), first, op, value)
        if self.at_op(":"):
            raise self.error("annotated assignments are not supported")
        return n.ExprStmt(self.span_from(start), first)

    def check_target(self, node: n.Node) -> None:
        if isinstance(node, (n.Name, n.AttributeRead, n.SubscriptRead)):
            return
        if isinstance(node, (n.TupleLit, n.ListLit)) and node.elts:
            for elt in node.elts:
                self.check_target(elt)
            return
        raise self.error(f"cannot assign to {type(node).__name__}", self.token_at(node.span))

    # -- expressions ---------------------------------------------------

    def exprlist(self, walrus: bool = False) -> n.Node:
        """Comma-separated expressions; more than one (or a trailing comma)
        makes a tuple."""
        start = self.peek()
        item = self.namedexpr if walrus else self.test
        first = item()
        if not self.at_op(","):
            return first
        elts = [first]
        while self.at_op(","):
            self.advance()
            if not self.starts_expression():
                break
            elts.append(item())
        return n.TupleLit(self.span_from(start), tuple(elts))

    def target_list(self) -> n.Node:
        start = self.peek()
        first = self.bitor()
        if not self.at_op(","):
            return first
        elts = [first]
        while self.at_op(","):
            self.advance()
            if not self.starts_expression():
                break
            elts.append(self.bitor())
        return n.TupleLit(self.span_from(start), tuple(elts))

    def namedexpr(self) -> n.Node:
        if self.peek().kind is TokenKind.NAME and self.peek(1).is_op(":="):
            name_tok = self.advance()
            self.advance()
            value = self.test()
            target = n.Name(name_tok.span, name_tok.lexeme)
            return n.WalrusAssign(self.span_from(name_tok), target, value)
        return self.test()

    def test(self) -> n.Node:
        if self.at_kw("lambda"):
            return self.lambdef()
        start = self.peek()
        body = self.or_test()
        if self.at_kw("if"):
            self.advance()
            cond = self.or_test()
            self.expect_kw("else")
            otherwise = self.test()
            return n.Conditional(self.span_from(start), body, cond, otherwise)
        return body

    def lambdef(self) -> n.Lambda:
        start = self.expect_kw("lambda")
        params = self.params(":", annotations=False)
        self.expect_op(":")
        body = self.test()
        return n.Lambda(self.span_from(start), params, body)

    def or_test(self) -> n.Node:
        return self.boolop("or", self.and_test)

    def and_test(self) -> n.Node:
        return self.boolop("and", self.not_test)

    def boolop(self, op: str, operand: Callable[[], n.Node]) -> n.Node:
        start = self.peek()
        first = operand()
        if not self.at_kw(op):
            return first
        values = [first]
        while self.at_kw(op):
            self.advance()
            values.append(operand())
        return n.BoolOp(self.span_from(start), op, tuple(values))

    def not_test(self) -> n.Node:
        if self.at_kw("not"):
            start = self.advance()
            operand = self.not_test()
            return n.UnaryOp(self.span_from(start), "not", operand)
        return self.comparison()

    def comp_op(self) -> Optional[str]:
        tok = self.peek()
        if tok.kind is TokenKind.OP and tok.lexeme in _COMPOPS:
            self.advance()
            return tok.lexeme
        if tok.is_keyword("in"):
            self.advance()
            return "in"
        if tok.is_keyword("not") and self.peek(1).is_keyword("in"):
            self.advance()
            self.advance()
            return "not in"
        if tok.is_keyword("is"):
            self.advance()
            if self.at_kw("not"):
                self.advance()
                return "is not"
            return "is"
        return None

    def comparison(self) -> n.Node:
        start = self.peek()
        left = self.bitor()
        ops, comparators = [], []
        while (op := self.comp_op()) is not None:
            ops.append(op)
            comparators.append(self.bitor())
        if not ops:
            return left
        return n.Compare(self.span_from(start), left, tuple(ops), tuple(comparators))

    def binary(self, ops: tuple[str, ...], operand: Callable[[], n.Node]) -> n.Node:
        start = self.peek()
        left = operand()
        while self.at_op(*ops):
            op = self.advance().lexeme
            right = operand()
            left = n.BinOp(self.span_from(start), left, op, right)
        return left

    def bitor(self) -> n.Node:
        return self.binary(("|",), self.bitxor)

    def bitxor(self) -> n.Node:
        return self.binary(("^",), self.bitand)

    def bitand(self) -> n.Node:
        return self.binary(("&",), self.shift)

    def shift(self) -> n.Node:
        return self.binary(("<<", ">>"), self.arith)

    def arith(self) -> n.Node:
        return self.binary(("+", "-"), self.term)

    def term(self) -> n.Node:
        return self.binary(("*", "/", "//", "%", "@"), self.factor)

    def factor(self) -> n.Node:
        if self.at_op("+", "-", "~"):
            start = self.advance()
            operand = self.factor()
            return n.UnaryOp(self.span_from(start), start.lexeme, operand)
        return self.power()

    def power(self) -> n.Node:
        start = self.peek()
        base = self.atom_trailers()
        if self.at_op("**"):
            self.advance()
            exponent = self.factor()
            return n.BinOp(self.span_from(start), base, "**", exponent)
        return base

    def atom_trailers(self) -> n.Node:
        start = self.peek()
        node = self.atom()
        while True:
            if self.at_op("("):
                self.advance()
                args, keywords = self.call_args()
                node = n.Call(self.span_from(start), node, args, keywords)
            elif self.at_op("["):
                self.advance()
                index = self.subscript()
                self.expect_op("]")
                node = n.SubscriptRead(self.span_from(start), node, index)
            elif self.at_op("."):
                dot = self.advance()
                attr = self.expect_name()
                if self.at_op("("):
                    method_span = self.span_from(dot)
                    self.advance()
                    args, keywords = self.call_args()
                    node = n.MethodCall(self.span_from(start), node, attr.lexeme, args,
                                        keywords, method_span=method_span)
                else:
                    node = n.AttributeRead(self.span_from(start), node, attr.lexeme)
            else:
                return node

    def call_args(self) -> tuple[tuple[n.Node, ...], tuple[n.Keyword, ...]]:
        """Arguments after an opening parenthesis, through the closing one."""
        args: list[n.Node] = []
        keywords: list[n.Keyword] = []
        while not self.at_op(")"):
            if self.at_op("*", "**"):
                raise self.error("star-arguments are not supported")
            if self.peek().kind is TokenKind.NAME and self.peek(1).is_op("="):
                name = self.advance()
                self.advance()
                value = self.test()
                keywords.append(n.Keyword(self.span_from(name), name.lexeme, value))
            else:
                if keywords:
                    raise self.error("positional argument follows keyword argument")
                start = self.peek()
                arg = self.namedexpr()
                if self.at_kw("for"):
                    generators = self.comp_for()
                    arg = n.GeneratorExp(self.span_from(start), arg, generators)
                args.append(arg)
            if not self.at_op(","):
                break
            self.advance()
        self.expect_op(")")
        return tuple(args), tuple(keywords)

    def subscript(self) -> n.Node:
        start = self.peek()
        first = self.subscript_item()
        if not self.at_op(","):
            return first
        elts = [first]
        while self.at_op(","):
            self.advance()
            if self.at_op("]"):
                break
            elts.append(self.subscript_item())
        return n.TupleLit(self.span_from(start), tuple(elts))

    def subscript_item(self) -> n.Node:
        start = self.peek()
        lower = None if self.at_op(":") else self.test()
        if not self.at_op(":"):
            assert lower is not None
            return lower
        self.advance()
        upper = None if self.at_op(":", "]", ",") else self.test()
        step = None
        if self.at_op(":"):
            self.advance()
            step = None if self.at_op("]", ",") else self.test()
        return n.Slice(self.span_from(start), lower, upper, step)

    def comp_for(self) -> tuple[n.Generator, ...]:
        generators = []
        while self.at_kw("for"):
            start = self.advance()
            target = self.target_list()
            self.check_target(target)
            self.expect_kw("in")
            iterable = self.or_test()
            conditions = []
            while self.at_kw("if"):
                self.advance()
                conditions.append(self.or_test())
            generators.append(n.Generator(self.span_from(start), target, iterable, tuple(conditions)))
        if self.at_kw("async"):
            raise self.error("'async' is not supported")
        return tuple(generators)

    def atom(self) -> n.Node:
        tok = self.peek()
        if tok.kind is TokenKind.NAME:
            self.advance()
            return n.Name(tok.span, tok.lexeme)
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            text = tok.lexeme
            value: int | float = int(text) if text.isdigit() else float(text)
            return n.NumberLit(tok.span, value)
        if tok.kind is TokenKind.STRING:
            return self.strings()
        if tok.kind is TokenKind.KEYWORD:
            if tok.lexeme in ("True", "False"):
                self.advance()
                return n.BoolLit(tok.span, tok.lexeme == "True")
            if tok.lexeme == "None":
                self.advance()
                return n.NoneLit(tok.span)
            if tok.lexeme == "lambda":
                return self.lambdef()
            if tok.lexeme in _UNSUPPORTED_KEYWORDS:
                raise self.error(_UNSUPPORTED_KEYWORDS[tok.lexeme])
        if tok.is_op("("):
            return self.paren()
        if tok.is_op("["):
            return self.bracket()
        if tok.is_op("{"):
            return self.brace()
        raise self.error(f"unexpected {self.describe(tok)}")

    def strings(self) -> n.StringLit:
        start = self.peek()
        parts = []
        while self.peek().kind is TokenKind.STRING:
            tok = self.advance()
            prefix = tok.lexeme[: len(tok.lexeme) - len(tok.lexeme.lstrip("rRuUfFbB"))].lower()
            if "f" in prefix:
                raise self.error("f-strings are not supported", tok)
            if "b" in prefix:
                raise self.error("bytes literals are not supported", tok)
            parts.append(string_value(tok.lexeme))
        return n.StringLit(self.span_from(start), "".join(parts))

    def paren(self) -> n.Node:
        start = self.advance()
        if self.at_op(")"):
            self.advance()
            return n.TupleLit(self.span_from(start), ())
        first = self.namedexpr()
        if self.at_kw("for"):
            generators = self.comp_for()
            self.expect_op(")")
            return n.GeneratorExp(self.span_from(start), first, generators)
        if not self.at_op(","):
            self.expect_op(")")
            return first
        elts = [first]
        while self.at_op(","):
            self.advance()
            if self.at_op(")"):
                break
            elts.append(self.namedexpr())
        self.expect_op(")")
        return n.TupleLit(self.span_from(start), tuple(elts))

    def bracket(self) -> n.Node:
        start = self.advance()
        if self.at_op("]"):
            self.advance()
            return n.ListLit(self.span_from(start), ())
        first = self.namedexpr()
        if self.at_kw("for"):
            generators = self.comp_for()
            self.expect_op("]")
            return n.ListComp(self.span_from(start), first, generators)
        elts = [first]
        while self.at_op(","):
            self.advance()
            if self.at_op("]"):
                break
            elts.append(self.namedexpr())
        self.expect_op("]")
        return n.ListLit(self.span_from(start), tuple(elts))

    def brace(self) -> n.Node:
        start = self.advance()
        if self.at_op("}"):
            self.advance()
            return n.DictLit(self.span_from(start), (), ())
        if self.at_op("**"):
            raise self.error("dictionary unpacking is not supported")
        first = self.test()
        if self.at_op(":"):
            self.advance()
            value = self.test()
            if self.at_kw("for"):
                generators = self.comp_for()
                self.expect_op("}")
                return n.DictComp(self.span_from(start), first, value, generators)
            keys, values = [first], [value]
            while self.at_op(","):
                self.advance()
                if self.at_op("}"):
                    break
                if self.at_op("**"):
                    raise self.error("dictionary unpacking is not supported")
                keys.append(self.test())
                self.expect_op(":")
                values.append(self.test())
            self.expect_op("}")
            return n.DictLit(self.span_from(start), tuple(keys), tuple(values))
        if self.at_kw("for"):
            generators = self.comp_for()
            self.expect_op("}")
            return n.SetComp(self.span_from(start), first, generators)
        elts = [first]
        while self.at_op(","):
            self.advance()
            if self.at_op("}"):
                break
            elts.append(self.test())
        self.expect_op("}")
        return n.SetLit(self.span_from(start), tuple(elts))


def parse_module(tokens: list[Token], source: str = "") -> n.Module:
    """Build a :class:`Module` from a token sequence produced by ``tokenize``.

    ``source`` is optional and only used to extract diagnostic snippets.
    Raises :class:`ParseError` for constructs outside the teaching grammar.
    """
    return Parser(tokens, source).parse_module()


def parse(source: str, file: str = "<string>") -> n.Module:
    """Tokenize and parse ``source`` in one step."""
    return parse_module(tokenize(source, file), source=source)
