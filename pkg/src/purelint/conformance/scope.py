"""Name binding for modules and function bodies.

Resolution follows Python's rule that any assignment in a function body
makes the name local to that body.  Nested functions, lambdas and
comprehensions open new scopes and are handled by the walkers that use
these helpers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Union

from ..frontend import nodes as n
from .config import RuleConfig


class NameKind(str, Enum):
    LOCAL = "local"
    FUNCTION = "function"
    BUILTIN = "builtin"
    ALLOWED_IMPORT = "allowed-import"
    IMPURE = "impure"
    MODULE_VAR = "module-var"
    EXTERNAL = "external"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class ImportBinding:
    module: str
    name: Optional[str]  # None for ``import module``

    @property
    def qualified(self) -> str:
        return self.module if self.name is None else f"{self.module}.{self.name}"


FunctionLike = Union[n.FunctionDef, n.Lambda]


@dataclass
class ModuleContext:
    """What a module binds at its top level."""

    functions: dict[str, list[FunctionLike]] = field(default_factory=dict)
    variables: set[str] = field(default_factory=set)
    imports: dict[str, ImportBinding] = field(default_factory=dict)
    # Span used when reporting on a lambda-bound function.
    lambda_sites: dict[str, n.Node] = field(default_factory=dict)

    @classmethod
    def build(cls, module: n.Module) -> ModuleContext:
        ctx = cls()
        defs: dict[str, list[FunctionLike]] = {}
        lambdas: dict[str, list[FunctionLike]] = {}
        non_lambda: set[str] = set()
        for stmt in _module_statements(module.body):
            if isinstance(stmt, n.FunctionDef):
                defs.setdefault(stmt.name, []).append(stmt)
            elif isinstance(stmt, n.Import):
                ctx.imports.update(import_bindings(stmt))
            elif isinstance(stmt, n.Assign):
                for target in stmt.targets:
                    if isinstance(target, n.Name) and isinstance(stmt.value, n.Lambda):
                        lambdas.setdefault(target.id, []).append(stmt.value)
                        ctx.lambda_sites.setdefault(target.id, target)
                    else:
                        non_lambda.update(target_names(target))
            else:
                non_lambda.update(statement_bindings(stmt))
        for name, fns in lambdas.items():
            if name not in non_lambda and name not in ctx.imports:
                defs.setdefault(name, []).extend(fns)
            else:
                non_lambda.add(name)
        ctx.functions = defs
        ctx.variables = non_lambda - set(defs)
        for node in _module_expressions(module.body):
            if isinstance(node, n.WalrusAssign):
                ctx.variables.add(node.target.id)
        return ctx


def _module_statements(body: Iterable[n.Node]) -> Iterator[n.Node]:
    """Statements executing in module scope, including those nested in
    module-level compound statements (but not in defs or classes)."""
    for stmt in body:
        yield stmt
        if isinstance(stmt, (n.FunctionDef, n.ClassDef)):
            continue
        for block in _blocks(stmt):
            yield from _module_statements(block)


def _module_expressions(body: Iterable[n.Node]) -> Iterator[n.Node]:
    for stmt in _module_statements(body):
        if isinstance(stmt, (n.FunctionDef, n.ClassDef)):
            continue
        for child in stmt.children():
            if _is_statement_child(stmt, child):
                continue
            yield from child.walk()


def _blocks(stmt: n.Node) -> list[tuple[n.Node, ...]]:
    if isinstance(stmt, (n.For, n.While, n.If)):
        return [stmt.body, stmt.orelse]
    if isinstance(stmt, n.With):
        return [stmt.body]
    if isinstance(stmt, n.Try):
        return [stmt.body, *(h.body for h in stmt.handlers), stmt.orelse, stmt.finalbody]
    if isinstance(stmt, (n.FunctionDef, n.ClassDef)):
        return [stmt.body]
    return []


def _is_statement_child(stmt: n.Node, child: n.Node) -> bool:
    if isinstance(child, n.ExceptHandler):
        return True
    return any(child is s for block in _blocks(stmt) for s in block)


def target_names(target: n.Node) -> set[str]:
    if isinstance(target, n.Name):
        return {target.id}
    if isinstance(target, (n.TupleLit, n.ListLit)):
        return set().union(*(target_names(e) for e in target.elts)) if target.elts else set()
    return set()


def import_bindings(stmt: n.Import) -> dict[str, ImportBinding]:
    out = {}
    for alias in stmt.names:
        if alias.name == "*":
            continue
        if stmt.module is None:
            # ``import a.b`` binds ``a``; ``import a.b as c`` binds the full module
            module = alias.name if alias.asname else alias.name.split(".")[0]
            out[alias.bound] = ImportBinding(module, None)
        else:
            out[alias.bound] = ImportBinding(stmt.module, alias.name)
    return out


def statement_bindings(stmt: n.Node) -> set[str]:
    """Names a single statement binds in its own scope (not its blocks)."""
    if isinstance(stmt, n.Assign):
        return set().union(*(target_names(t) for t in stmt.targets))
    if isinstance(stmt, (n.AugAssign,)):
        return target_names(stmt.target)
    if isinstance(stmt, n.For):
        return target_names(stmt.target)
    if isinstance(stmt, n.With):
        names: set[str] = set()
        for item in stmt.items:
            if item.target is not None:
                names |= target_names(item.target)
        return names
    if isinstance(stmt, n.Try):
        return {h.name for h in stmt.handlers if h.name}
    if isinstance(stmt, (n.FunctionDef, n.ClassDef)):
        return {stmt.name}
    if isinstance(stmt, n.Del):
        return set().union(*(target_names(t) for t in stmt.targets))
    return set()


@dataclass(frozen=True)
class FunctionScope:
    """Local bindings of a function body."""

    locals: frozenset[str]
    imports: dict[str, ImportBinding]
    declared_outer: frozenset[str]


def function_scope(params: Iterable[n.Param], body: Iterable[n.Node]) -> FunctionScope:
    local: set[str] = {p.name for p in params}
    imports: dict[str, ImportBinding] = {}
    outer: set[str] = set()
    body = tuple(body)
    for stmt in _module_statements(body):
        if isinstance(stmt, n.Import):
            imports.update(import_bindings(stmt))
        elif isinstance(stmt, (n.Global, n.Nonlocal)):
            outer.update(stmt.names)
        else:
            local |= statement_bindings(stmt)
    for node in _module_expressions(body):
        if isinstance(node, n.WalrusAssign):
            local.add(node.target.id)
    local -= outer
    local -= set(imports)
    return FunctionScope(frozenset(local), imports, frozenset(outer))


@dataclass(frozen=True)
class Resolver:
    """Resolves a name read at some point in the program."""

    config: RuleConfig
    module: ModuleContext
    local: frozenset[str] = frozenset()
    imports: Optional[dict[str, ImportBinding]] = None
    at_module_level: bool = False

    def with_locals(self, names: Iterable[str]) -> Resolver:
        return Resolver(self.config, self.module, self.local | frozenset(names),
                        self.imports, self.at_module_level)

    def import_for(self, name: str) -> Optional[ImportBinding]:
        if name in self.local:
            return None
        if self.imports and name in self.imports:
            return self.imports[name]
        return self.module.imports.get(name)

    def import_kind(self, binding: ImportBinding) -> NameKind:
        cfg = self.config
        if binding.module.split(".")[0] in cfg.impure_modules or binding.qualified in cfg.impure_calls:
            return NameKind.IMPURE
        if binding.name is not None and (binding.module, binding.name) in cfg.import_allowlist:
            return NameKind.ALLOWED_IMPORT
        return NameKind.EXTERNAL

    def resolve(self, name: str) -> NameKind:
        if name in self.local:
            return NameKind.LOCAL
        binding = self.import_for(name)
        if binding is not None:
            return self.import_kind(binding)
        if name in self.module.functions:
            return NameKind.FUNCTION
        if name in self.module.variables:
            return NameKind.LOCAL if self.at_module_level else NameKind.MODULE_VAR
        if name in self.config.impure_calls:
            return NameKind.IMPURE
        if name in self.config.builtin_allowlist:
            return NameKind.BUILTIN
        return NameKind.UNRESOLVED
