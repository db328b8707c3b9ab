"""Syntax tree for the teaching subset.

Every node is a frozen dataclass whose first field is its
:class:`SourceSpan`.  Sequences are tuples so trees compare structurally
and can be hashed.  The forbidden statements (``For``, ``While``, ``If``
and friends) are ordinary nodes here; rejecting them is the rule
engine's job.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterator, Optional, Union

from .tokens import SourceSpan


@dataclass(frozen=True)
class Node:
    span: SourceSpan

    def children(self) -> Iterator[Node]:
        for f in fields(self):
            if f.name == "span":
                continue
            value = getattr(self, f.name)
            if isinstance(value, Node):
                yield value
            elif isinstance(value, tuple):
                for item in value:
                    if isinstance(item, Node):
                        yield item

    def walk(self) -> Iterator[Node]:
        """Pre-order traversal, ``self`` first."""
        yield self
        for child in self.children():
            yield from child.walk()


# -- expressions -------------------------------------------------------


@dataclass(frozen=True)
class Name(Node):
    id: str


@dataclass(frozen=True)
class NumberLit(Node):
    value: Union[int, float]


@dataclass(frozen=True)
class StringLit(Node):
    value: str


@dataclass(frozen=True)
class BoolLit(Node):
    value: bool


@dataclass(frozen=True)
class NoneLit(Node):
    pass


@dataclass(frozen=True)
class TupleLit(Node):
    elts: tuple[Node, ...]


@dataclass(frozen=True)
class ListLit(Node):
    elts: tuple[Node, ...]


@dataclass(frozen=True)
class SetLit(Node):
    elts: tuple[Node, ...]


@dataclass(frozen=True)
class DictLit(Node):
    keys: tuple[Node, ...]
    values: tuple[Node, ...]


@dataclass(frozen=True)
class Param(Node):
    """A function or lambda parameter; annotations are dropped."""

    name: str
    default: Optional[Node] = None


@dataclass(frozen=True)
class Lambda(Node):
    params: tuple[Param, ...]
    body: Node


@dataclass(frozen=True)
class Conditional(Node):
    """``then if cond else otherwise``."""

    then: Node
    cond: Node
    otherwise: Node


@dataclass(frozen=True)
class Generator(Node):
    """One ``for target in iter if cond ...`` clause of a comprehension."""

    target: Node
    iter: Node
    conditions: tuple[Node, ...]


@dataclass(frozen=True)
class ListComp(Node):
    element: Node
    generators: tuple[Generator, ...]

    @property
    def conditions(self) -> tuple[Node, ...]:
        return tuple(c for g in self.generators for c in g.conditions)


@dataclass(frozen=True)
class SetComp(Node):
    element: Node
    generators: tuple[Generator, ...]

    @property
    def conditions(self) -> tuple[Node, ...]:
        return tuple(c for g in self.generators for c in g.conditions)


@dataclass(frozen=True)
class DictComp(Node):
    key: Node
    value: Node
    generators: tuple[Generator, ...]

    @property
    def conditions(self) -> tuple[Node, ...]:
        return tuple(c for g in self.generators for c in g.conditions)


@dataclass(frozen=True)
class GeneratorExp(Node):
    element: Node
    generators: tuple[Generator, ...]

    @property
    def conditions(self) -> tuple[Node, ...]:
        return tuple(c for g in self.generators for c in g.conditions)


COMPREHENSIONS = (ListComp, SetComp, DictComp, GeneratorExp)


@dataclass(frozen=True)
class Keyword(Node):
    name: str
    value: Node


@dataclass(frozen=True)
class Call(Node):
    callee: Node
    args: tuple[Node, ...]
    keywords: tuple[Keyword, ...] = ()


@dataclass(frozen=True)
class MethodCall(Node):
    """``receiver.method(args)``; ``method_span`` covers ``.method``."""

    receiver: Node
    method: str
    args: tuple[Node, ...]
    keywords: tuple[Keyword, ...] = ()
    method_span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class AttributeRead(Node):
    receiver: Node
    attr: str


@dataclass(frozen=True)
class Slice(Node):
    lower: Optional[Node]
    upper: Optional[Node]
    step: Optional[Node]


@dataclass(frozen=True)
class SubscriptRead(Node):
    receiver: Node
    index: Node


@dataclass(frozen=True)
class BinOp(Node):
    left: Node
    op: str
    right: Node


@dataclass(frozen=True)
class UnaryOp(Node):
    op: str
    operand: Node


@dataclass(frozen=True)
class BoolOp(Node):
    op: str
    values: tuple[Node, ...]


@dataclass(frozen=True)
class Compare(Node):
    left: Node
    ops: tuple[str, ...]
    comparators: tuple[Node, ...]


@dataclass(frozen=True)
class WalrusAssign(Node):
    """``target := value``; allowed by the parser, flagged by the rules."""

    target: Name
    value: Node


# -- statements --------------------------------------------------------


@dataclass(frozen=True)
class FunctionDef(Node):
    name: str
    params: tuple[Param, ...]
    body: tuple[Node, ...]
    name_span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class Assign(Node):
    targets: tuple[Node, ...]
    value: Node


@dataclass(frozen=True)
class Return(Node):
    value: Optional[Node]


@dataclass(frozen=True)
class ExprStmt(Node):
    value: Node


@dataclass(frozen=True)
class Alias(Node):
    name: str
    asname: Optional[str] = None

    @property
    def bound(self) -> str:
        """The local name this alias introduces."""
        return self.asname or self.name.split(".")[0]


@dataclass(frozen=True)
class Import(Node):
    """``import a.b as c`` (``module`` is None) or ``from m import x as y``."""

    module: Optional[str]
    names: tuple[Alias, ...]


@dataclass(frozen=True)
class For(Node):
    target: Node
    iter: Node
    body: tuple[Node, ...]
    orelse: tuple[Node, ...] = ()


@dataclass(frozen=True)
class While(Node):
    test: Node
    body: tuple[Node, ...]
    orelse: tuple[Node, ...] = ()


@dataclass(frozen=True)
class If(Node):
    """``if``/``elif`` statement; an ``elif`` is an ``If`` with ``is_elif`` set
    sitting alone in its parent's ``orelse``."""

    test: Node
    body: tuple[Node, ...]
    orelse: tuple[Node, ...] = ()
    is_elif: bool = False


@dataclass(frozen=True)
class AugAssign(Node):
    target: Node
    op: str
    value: Node


@dataclass(frozen=True)
class Global(Node):
    names: tuple[str, ...]


@dataclass(frozen=True)
class Nonlocal(Node):
    names: tuple[str, ...]


@dataclass(frozen=True)
class Del(Node):
    targets: tuple[Node, ...]


@dataclass(frozen=True)
class WithItem(Node):
    context: Node
    target: Optional[Node] = None


@dataclass(frozen=True)
class With(Node):
    items: tuple[WithItem, ...]
    body: tuple[Node, ...]


@dataclass(frozen=True)
class ExceptHandler(Node):
    type: Optional[Node]
    name: Optional[str]
    body: tuple[Node, ...]


@dataclass(frozen=True)
class Try(Node):
    body: tuple[Node, ...]
    handlers: tuple[ExceptHandler, ...] = ()
    orelse: tuple[Node, ...] = ()
    finalbody: tuple[Node, ...] = ()


@dataclass(frozen=True)
class ClassDef(Node):
    name: str
    bases: tuple[Node, ...]
    body: tuple[Node, ...]


@dataclass(frozen=True)
class Module(Node):
    body: tuple[Node, ...]
    source: str = field(default="", compare=False, repr=False)

    @property
    def file(self) -> str:
        return self.span.file

    def functions(self) -> tuple[FunctionDef, ...]:
        return tuple(s for s in self.body if isinstance(s, FunctionDef))

    def snippet(self, span: SourceSpan) -> str:
        """Source text of ``span``, truncated to its first line."""
        lines = self.source.split("\n")
        if not 1 <= span.line <= len(lines):
            return ""
        text = lines[span.line - 1]
        end = span.end_col - 1 if span.end_line == span.line else len(text)
        return text[span.col - 1:end]


#: Statement kinds the subset forbids outright.
FORBIDDEN_STATEMENTS = (For, While, If, AugAssign, Global, Nonlocal, Del, With, Try, ClassDef)
