"""Purity analysis for module-level functions.

Each function body is first scanned for direct evidence: impure calls,
reads of module state, mutation, ``global``/``nonlocal``, and calls that
cannot be resolved.  Verdicts then propagate along the call graph by a
monotone fixpoint (Pure < Unknown < Impure) until nothing changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Mapping, Optional

from ..frontend import nodes as n
from ..frontend.tokens import SourceSpan
from .calls import CallClass, callee_name, classify_call
from .config import RuleConfig
from .scope import (
    FunctionLike,
    ImportBinding,
    ModuleContext,
    NameKind,
    Resolver,
    function_scope,
    target_names,
)


class Purity(IntEnum):
    PURE = 0
    UNKNOWN = 1
    IMPURE = 2

    def __str__(self) -> str:
        return self.name.capitalize()


@dataclass(frozen=True)
class Reason:
    message: str
    span: SourceSpan
    callee: Optional[str] = None


@dataclass(frozen=True)
class FunctionVerdict:
    name: str
    status: Purity
    reasons: tuple[Reason, ...]
    externals: tuple[str, ...]
    span: SourceSpan

    @property
    def is_pure(self) -> bool:
        return self.status is Purity.PURE


@dataclass(frozen=True)
class PurityVerdict:
    functions: Mapping[str, FunctionVerdict]
    # Sweeps in which at least one verdict changed.
    iterations: int
    # Status of every function before the first sweep and after each changing one.
    history: tuple[Mapping[str, Purity], ...] = ()

    def __getitem__(self, name: str) -> FunctionVerdict:
        return self.functions[name]

    def __contains__(self, name: str) -> bool:
        return name in self.functions

    def status(self, name: str) -> Purity:
        return self.functions[name].status


@dataclass
class _Facts:
    impure: list[Reason] = field(default_factory=list)
    unknown: list[Reason] = field(default_factory=list)
    externals: set[str] = field(default_factory=set)
    edges: list[tuple[str, SourceSpan]] = field(default_factory=list)

    @property
    def level(self) -> Purity:
        if self.impure:
            return Purity.IMPURE
        if self.unknown:
            return Purity.UNKNOWN
        return Purity.PURE


class _BodyScanner:
    def __init__(self, config: RuleConfig, module: ModuleContext):
        self.config = config
        self.module = module
        self.facts = _Facts()

    # -- evidence ------------------------------------------------------

    def impure(self, message: str, span: SourceSpan, callee: Optional[str] = None) -> None:
        self.facts.impure.append(Reason(message, span, callee))

    def unresolved(self, name: str, message: str, span: SourceSpan) -> None:
        if self.config.strict:
            self.impure(message, span, name)
        else:
            self.facts.unknown.append(Reason(message, span, name))
            self.facts.externals.add(name)

    def name_use(self, name: str, span: SourceSpan, r: Resolver, called: bool) -> None:
        kind = r.resolve(name)
        verb = "calls" if called else "refers to"
        if kind is NameKind.FUNCTION:
            self.facts.edges.append((name, span))
        elif kind is NameKind.IMPURE:
            self.impure(f"{verb} impure '{name}'", span, name)
        elif kind is NameKind.MODULE_VAR:
            self.impure(f"reads module-level variable '{name}'", span, name)
        elif kind is NameKind.EXTERNAL:
            binding = r.import_for(name)
            assert binding is not None
            self.unresolved(binding.qualified, f"{verb} external '{binding.qualified}'", span)
        elif kind is NameKind.UNRESOLVED:
            self.unresolved(name, f"{verb} unresolved name '{name}'", span)

    # -- walkers -------------------------------------------------------

    def function(self, fn: FunctionLike) -> None:
        if isinstance(fn, n.Lambda):
            r = Resolver(self.config, self.module, frozenset(p.name for p in fn.params))
            self.expr(fn.body, r)
            return
        scope = function_scope(fn.params, fn.body)
        r = Resolver(self.config, self.module, scope.locals, scope.imports)
        self.block(fn.body, r)

    def block(self, body: tuple[n.Node, ...], r: Resolver) -> None:
        for stmt in body:
            self.stmt(stmt, r)

    def stmt(self, s: n.Node, r: Resolver) -> None:
        if isinstance(s, n.FunctionDef):
            for p in s.params:
                if p.default is not None:
                    self.expr(p.default, r)
            scope = function_scope(s.params, s.body)
            imports = {k: v for k, v in (r.imports or {}).items() if k not in scope.locals}
            imports.update(scope.imports)
            inner = Resolver(self.config, self.module, r.local | scope.locals, imports)
            self.block(s.body, inner)
        elif isinstance(s, n.Assign):
            self.expr(s.value, r)
            for t in s.targets:
                self.target(t, r)
        elif isinstance(s, n.AugAssign):
            if isinstance(s.target, n.Name):
                self.expr(s.target, r)
            else:
                self.target(s.target, r)
            self.expr(s.value, r)
        elif isinstance(s, n.Del):
            for t in s.targets:
                if isinstance(t, (n.AttributeRead, n.SubscriptRead)):
                    self.impure("deletes through an attribute or subscript", t.span)
                    self.expr(t, r)
        elif isinstance(s, (n.Global, n.Nonlocal)):
            kw = "global" if isinstance(s, n.Global) else "nonlocal"
            self.impure(f"declares {kw} {', '.join(s.names)}", s.span)
        elif isinstance(s, (n.Return, n.ExprStmt)):
            if s.value is not None:
                self.expr(s.value, r)
        elif isinstance(s, n.For):
            self.expr(s.iter, r)
            self.target(s.target, r)
            self.block(s.body, r)
            self.block(s.orelse, r)
        elif isinstance(s, (n.While, n.If)):
            self.expr(s.test, r)
            self.block(s.body, r)
            self.block(s.orelse, r)
        elif isinstance(s, n.With):
            for item in s.items:
                self.expr(item.context, r)
                if item.target is not None:
                    self.target(item.target, r)
            self.block(s.body, r)
        elif isinstance(s, n.Try):
            self.block(s.body, r)
            for h in s.handlers:
                if h.type is not None:
                    self.expr(h.type, r)
                self.block(h.body, r)
            self.block(s.orelse, r)
            self.block(s.finalbody, r)
        elif isinstance(s, n.ClassDef):
            for b in s.bases:
                self.expr(b, r)
            self.block(s.body, r)

    def target(self, t: n.Node, r: Resolver) -> None:
        if isinstance(t, (n.TupleLit, n.ListLit)):
            for e in t.elts:
                self.target(e, r)
        elif isinstance(t, n.AttributeRead):
            self.impure(f"assigns to attribute '{t.attr}'", t.span)
            self.expr(t.receiver, r)
        elif isinstance(t, n.SubscriptRead):
            self.impure("assigns through a subscript", t.span)
            self.expr(t.receiver, r)
            self.expr(t.index, r)

    def module_receiver(self, node: n.Node, r: Resolver) -> Optional[ImportBinding]:
        if isinstance(node, n.Name):
            binding = r.import_for(node.id)
            if binding is not None and binding.name is None:
                return binding
        return None

    def expr(self, e: n.Node, r: Resolver) -> None:
        if isinstance(e, n.Name):
            self.name_use(e.id, e.span, r, called=False)
        elif isinstance(e, n.Call):
            if isinstance(e.callee, n.Name):
                self.name_use(e.callee.id, e.callee.span, r, called=True)
            else:
                self.expr(e.callee, r)
            self.children(e.args + e.keywords, r)
        elif isinstance(e, n.MethodCall):
            kind = classify_call(e, self.config, r)
            where = e.method_span or e.span
            if kind is CallClass.MUTATING:
                self.impure(f"calls mutating method '.{e.method}'", where, e.method)
            elif kind is CallClass.IMPURE:
                name = callee_name(e)
                self.impure(f"calls impure '{name}'", where, name)
            elif kind is CallClass.UNKNOWN:
                name = callee_name(e)
                self.unresolved(name, f"calls unknown method '{name}'", where)
            if self.module_receiver(e.receiver, r) is None:
                self.expr(e.receiver, r)
            self.children(e.args + e.keywords, r)
        elif isinstance(e, n.AttributeRead):
            binding = self.module_receiver(e.receiver, r)
            if binding is None:
                self.expr(e.receiver, r)
                return
            attr = ImportBinding(binding.module, e.attr)
            if r.import_kind(attr) is NameKind.IMPURE:
                self.impure(f"refers to impure '{attr.qualified}'", e.span, attr.qualified)
            elif r.import_kind(attr) is not NameKind.ALLOWED_IMPORT:
                self.unresolved(attr.qualified, f"refers to external '{attr.qualified}'", e.span)
        elif isinstance(e, n.Lambda):
            for p in e.params:
                if p.default is not None:
                    self.expr(p.default, r)
            self.expr(e.body, r.with_locals(p.name for p in e.params))
        elif isinstance(e, n.COMPREHENSIONS):
            inner = r
            for g in e.generators:
                self.expr(g.iter, inner)
                inner = inner.with_locals(target_names(g.target))
                for c in g.conditions:
                    self.expr(c, inner)
            if isinstance(e, n.DictComp):
                self.expr(e.key, inner)
                self.expr(e.value, inner)
            else:
                self.expr(e.element, inner)
        elif isinstance(e, n.WalrusAssign):
            self.expr(e.value, r)
        else:
            self.children(tuple(e.children()), r)

    def children(self, nodes: tuple[n.Node, ...], r: Resolver) -> None:
        for c in nodes:
            self.expr(c, r)


def _report_span(name: str, fns: list[FunctionLike], ctx: ModuleContext) -> SourceSpan:
    first = fns[0]
    if isinstance(first, n.FunctionDef):
        return first.name_span or first.span
    site = ctx.lambda_sites.get(name)
    return site.span if site is not None else first.span


def analyze_purity(
    tree: n.Module,
    config: Optional[RuleConfig] = None,
    context: Optional[ModuleContext] = None,
) -> PurityVerdict:
    """Compute a purity verdict for every module-level function.

    Module-level names bound only to lambdas count as functions.  Unknown
    callees make a function Impure in strict mode and Unknown in lenient
    mode.
    """
    config = config or RuleConfig()
    ctx = context or ModuleContext.build(tree)
    facts: dict[str, _Facts] = {}
    for name, fns in ctx.functions.items():
        scanner = _BodyScanner(config, ctx)
        for fn in fns:
            scanner.function(fn)
        facts[name] = scanner.facts

    status = {name: Purity.PURE for name in facts}
    history = [dict(status)]
    iterations = 0
    # Each changing sweep extends propagation by one call edge, so there
    # are at most len(facts) of them.
    for _ in range(len(facts) + 1):
        new = {
            name: max([f.level] + [status[g] for g, _ in f.edges], default=Purity.PURE)
            for name, f in facts.items()
        }
        if new == status:
            break
        status = new
        iterations += 1
        history.append(dict(status))
    else:  # pragma: no cover
        raise AssertionError("purity fixpoint failed to converge")

    verdicts = {}
    for name, f in facts.items():
        level = status[name]
        reasons: list[Reason] = []
        if level is Purity.IMPURE:
            reasons = list(f.impure)
            word = "impure"
        elif level is Purity.UNKNOWN:
            reasons = list(f.unknown)
            word = "unverified"
        seen = set()
        if level is not Purity.PURE:
            for g, span in f.edges:
                if g != name and status[g] is level and (g, span) not in seen:
                    seen.add((g, span))
                    reasons.append(Reason(f"calls {word} function '{g}'", span, g))
        externals = tuple(sorted(f.externals)) if level is Purity.UNKNOWN else ()
        verdicts[name] = FunctionVerdict(
            name, level, tuple(reasons), externals, _report_span(name, ctx.functions[name], ctx)
        )
    return PurityVerdict(verdicts, iterations, tuple(history))
