"""Datalog atom to relational algebra translation.

An atom such as ``p(x,20,x,y,"john",x,y)`` becomes

    rename[x,y](project[x_0,x_3](select[x_1=20 and x_4="john" and x_0=x_2
        and x_2=x_5 and x_3=x_6](rename[x_0,...,x_6](p))))

built inside out: positional renaming, selection on constants and
repeated variables, projection onto the first occurrence of each
variable, and renaming back to the variable names.  The output is a
single line; the wrapping above is only for reading.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Union


class AtomKind(str, Enum):
    NAME = "NAME"
    LPAREN = "LPAREN"
    RPAREN = "RPAREN"
    COMMA = "COMMA"
    NUMBER = "NUMBER"
    STRING = "STRING"
    EOF = "EOF"


@dataclass(frozen=True)
class AtomToken:
    kind: AtomKind
    lexeme: str
    position: int


class DatalogError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"at offset {position}: {message}")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Num:
    value: int

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("numeric constants are positive integers")


@dataclass(frozen=True)
class Str:
    text: str

    def __post_init__(self) -> None:
        if '"' in self.text:
            raise ValueError("string constants cannot contain a double quote")


Arg = Union[Var, Num, Str]


@dataclass(frozen=True)
class DatalogAtom:
    predicate: str
    args: tuple[Arg, ...]

    def __post_init__(self) -> None:
        if not self.args:
            raise ValueError("an atom has at least one argument")

    def as_pair(self) -> tuple[str, list[tuple[str, Union[str, int]]]]:
        """The ``(predicate, [('var','x'), ('num',20), ...])`` form."""
        tagged = []
        for a in self.args:
            if isinstance(a, Var):
                tagged.append(("var", a.name))
            elif isinstance(a, Num):
                tagged.append(("num", a.value))
            else:
                tagged.append(("str", a.text))
        return self.predicate, tagged


_PUNCT = {"(": AtomKind.LPAREN, ")": AtomKind.RPAREN, ",": AtomKind.COMMA}


def tokenize_atom(text: str) -> list[AtomToken]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _PUNCT:
            tokens.append(AtomToken(_PUNCT[ch], ch, i))
            i += 1
        elif ch.isalpha():
            j = i + 1
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(AtomToken(AtomKind.NAME, text[i:j], i))
            i = j
        elif ch.isdigit():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(AtomToken(AtomKind.NUMBER, text[i:j], i))
            i = j
        elif ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise DatalogError("unterminated string", i)
            tokens.append(AtomToken(AtomKind.STRING, text[i + 1:j], i))
            i = j + 1
        else:
            raise DatalogError(f"unexpected character {ch!r}", i)
    tokens.append(AtomToken(AtomKind.EOF, "", len(text)))
    return tokens


class _AtomParser:
    def __init__(self, text: str):
        self.tokens = tokenize_atom(text)
        self.i = 0

    def peek(self) -> AtomToken:
        return self.tokens[self.i]

    def take(self, kind: AtomKind, what: str) -> AtomToken:
        tok = self.peek()
        if tok.kind is not kind:
            if tok.kind is AtomKind.EOF:
                raise DatalogError(f"unexpected end of input, expected {what}", tok.position)
            raise DatalogError(f"expected {what}, found {tok.lexeme!r}", tok.position)
        self.i += 1
        return tok

    def atom(self) -> DatalogAtom:
        name = self.take(AtomKind.NAME, "a predicate name")
        self.take(AtomKind.LPAREN, "'('")
        if self.peek().kind is AtomKind.RPAREN:
            raise DatalogError("an atom needs at least one argument", self.peek().position)
        args = [self.arg()]
        while self.peek().kind is AtomKind.COMMA:
            self.i += 1
            args.append(self.arg())
        self.take(AtomKind.RPAREN, "',' or ')'")
        tail = self.peek()
        if tail.kind is not AtomKind.EOF:
            raise DatalogError(f"trailing input {tail.lexeme!r} after ')'", tail.position)
        return DatalogAtom(name.lexeme, tuple(args))

    def arg(self) -> Arg:
        tok = self.peek()
        if tok.kind is AtomKind.NAME:
            self.i += 1
            return Var(tok.lexeme)
        if tok.kind is AtomKind.NUMBER:
            self.i += 1
            value = int(tok.lexeme)
            if value < 1:
                raise DatalogError("numeric constants must be positive integers", tok.position)
            return Num(value)
        if tok.kind is AtomKind.STRING:
            self.i += 1
            return Str(tok.lexeme)
        if tok.kind is AtomKind.EOF:
            raise DatalogError("unexpected end of input, expected an argument", tok.position)
        raise DatalogError(f"expected an argument, found {tok.lexeme!r}", tok.position)


def parse_atom(text: str) -> DatalogAtom:
    """Parse one atomic formula; raises :class:`DatalogError` on bad input."""
    return _AtomParser(text).atom()


def render_atom(atom: DatalogAtom) -> str:
    return f"{atom.predicate}({','.join(_render_arg(a) for a in atom.args)})"


def _render_arg(a: Arg) -> str:
    if isinstance(a, Var):
        return a.name
    if isinstance(a, Num):
        return str(a.value)
    return f'"{a.text}"'


@dataclass(frozen=True)
class Condition:
    left: str
    right: str

    def __str__(self) -> str:
        return f"{self.left}={self.right}"


@dataclass(frozen=True)
class RAQuery:
    relation: str
    inner_rename: tuple[str, ...]
    select_conditions: tuple[Condition, ...]
    project_positions: tuple[str, ...]
    outer_rename: tuple[str, ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)


_FRESH = re.compile(r"x_\d+\Z")


def build_ra(atom: DatalogAtom) -> RAQuery:
    fresh = tuple(f"x_{i}" for i in range(len(atom.args)))
    conditions = [
        Condition(fresh[i], _render_arg(a))
        for i, a in enumerate(atom.args)
        if not isinstance(a, Var)
    ]
    positions: dict[str, list[int]] = {}
    for i, a in enumerate(atom.args):
        if isinstance(a, Var):
            positions.setdefault(a.name, []).append(i)
    for occ in positions.values():
        conditions.extend(Condition(fresh[p], fresh[q]) for p, q in zip(occ, occ[1:]))
    warnings = tuple(
        f"variable '{v}' looks like a generated column name"
        for v in positions if _FRESH.match(v)
    )
    return RAQuery(
        relation=atom.predicate,
        inner_rename=fresh,
        select_conditions=tuple(conditions),
        project_positions=tuple(fresh[occ[0]] for occ in positions.values()),
        outer_rename=tuple(positions),
        warnings=warnings,
    )


def ra_steps(q: RAQuery) -> list[tuple[str, str]]:
    """The cumulative expression after each layer, labelled ``step1``..``step4``.

    Layers that are omitted (no conditions, no variables) have no entry.
    """
    text = f"rename[{','.join(q.inner_rename)}]({q.relation})"
    steps = [("step1", text)]
    if q.select_conditions:
        text = f"select[{' and '.join(map(str, q.select_conditions))}]({text})"
        steps.append(("step2", text))
    if q.project_positions:
        text = f"project[{','.join(q.project_positions)}]({text})"
        steps.append(("step3", text))
        text = f"rename[{','.join(q.outer_rename)}]({text})"
        steps.append(("step4", text))
    return steps


def render_ra(q: RAQuery) -> str:
    return ra_steps(q)[-1][1]


def datalog_to_ra(text: str) -> str:
    """Parse ``text`` and return its relational algebra expression."""
    return render_ra(build_ra(parse_atom(text)))
