"""The rule engine: one pass over the tree plus the purity verdicts."""

from __future__ import annotations

from typing import Iterator, Optional

from ..frontend import nodes as n
from ..frontend.tokens import SourceSpan
from .calls import CallClass, callee_name, classify_call
from .config import RuleConfig
from .diagnostics import Diagnostic, Severity
from .purity import Purity, PurityVerdict, analyze_purity
from .scope import ModuleContext, Resolver

_STATEMENT_KEYWORDS: dict[type, str] = {
    n.For: "for",
    n.While: "while",
    n.If: "if",
    n.With: "with",
    n.Try: "try",
    n.Del: "del",
    n.ClassDef: "class",
    n.Global: "global",
    n.Nonlocal: "nonlocal",
}

#: Each construct the subset forbids, and the one rule that reports it.
CONSTRUCT_RULES: dict[type, str] = {
    n.For: "FP003",
    n.While: "FP003",
    n.If: "FP003",
    n.With: "FP003",
    n.Try: "FP003",
    n.Del: "FP003",
    n.ClassDef: "FP003",
    n.AugAssign: "FP002",
    n.Global: "FP008",
    n.Nonlocal: "FP008",
    n.WalrusAssign: "FP007",
}


def keyword_span(stmt: n.Node) -> SourceSpan:
    kw = _STATEMENT_KEYWORDS[type(stmt)]
    s = stmt.span
    return SourceSpan(s.file, s.line, s.col, s.line, s.col + len(kw))


class _Checker:
    def __init__(self, tree: n.Module, config: RuleConfig):
        self.tree = tree
        self.config = config
        self.context = ModuleContext.build(tree)
        self.out: list[Diagnostic] = []

    def report(self, rule: str, span: SourceSpan, message: str,
               severity: Severity = Severity.ERROR) -> None:
        self.out.append(Diagnostic(rule, severity, span, message, self.tree.snippet(span)))

    def run(self, verdict: Optional[PurityVerdict]) -> list[Diagnostic]:
        for node in self.tree.walk():
            self.syntactic(node)
        self.module_level_calls()
        verdict = verdict or analyze_purity(self.tree, self.config, self.context)
        self.purity(verdict)
        enabled = self.config.enabled_rules
        unique = {(d.sort_key, d.severity): d for d in self.out if d.rule_id in enabled}
        return sorted(unique.values(), key=lambda d: d.sort_key)

    def syntactic(self, node: n.Node) -> None:
        rule = CONSTRUCT_RULES.get(type(node))
        if rule == "FP003":
            if isinstance(node, n.If) and node.is_elif:
                return
            kw = _STATEMENT_KEYWORDS[type(node)]
            self.report(rule, keyword_span(node), f"'{kw}' statement is not allowed")
        elif rule == "FP002":
            assert isinstance(node, n.AugAssign)
            self.report(rule, node.span, f"augmented assignment '{node.op}' is not allowed; "
                        "bind a new name instead")
        elif rule == "FP008":
            kw = _STATEMENT_KEYWORDS[type(node)]
            self.report(rule, keyword_span(node), f"'{kw}' declarations are not allowed")
        elif rule == "FP007":
            assert isinstance(node, n.WalrusAssign)
            self.report(rule, node.span, f"walrus assignment to '{node.target.id}' is not allowed")
        elif isinstance(node, n.MethodCall):
            if classify_call(node, self.config) is CallClass.MUTATING:
                self.report("FP005", node.method_span or node.span,
                            f"'.{node.method}()' mutates its receiver")
        elif isinstance(node, n.Assign):
            for target in node.targets:
                self.assign_target(target, top=True)
        elif isinstance(node, n.Import):
            self.imports(node)

    def assign_target(self, target: n.Node, top: bool) -> None:
        if isinstance(target, (n.TupleLit, n.ListLit)):
            names_only = all(isinstance(e, n.Name) for e in target.elts)
            if top and not (self.config.allow_unpacking and names_only):
                self.report("FP001", target.span,
                            "unpacking assignment is not allowed; assign one expression to one name")
            for e in target.elts:
                self.assign_target(e, top=False)
        elif isinstance(target, n.AttributeRead):
            self.report("FP006", target.span, f"assignment to attribute '{target.attr}' mutates an object")
        elif isinstance(target, n.SubscriptRead):
            self.report("FP006", target.span, "subscript assignment mutates a collection")

    def imports(self, node: n.Import) -> None:
        allowed = self.config.import_allowlist
        for alias in node.names:
            if node.module is not None and (node.module, alias.name) in allowed:
                continue
            text = f"from {node.module} import {alias.name}" if node.module else f"import {alias.name}"
            self.report("FP010", alias.span, f"'{text}' is not an allowed import")

    def module_level_nodes(self) -> Iterator[n.Node]:
        function_lambdas = {
            id(fn) for fns in self.context.functions.values() for fn in fns
            if isinstance(fn, n.Lambda)
        }

        def visit(node: n.Node) -> Iterator[n.Node]:
            yield node
            for child in node.children():
                if isinstance(child, n.FunctionDef) or id(child) in function_lambdas:
                    continue
                yield from visit(child)

        for stmt in self.tree.body:
            if not isinstance(stmt, n.FunctionDef):
                yield from visit(stmt)

    def module_level_calls(self) -> None:
        resolver = Resolver(self.config, self.context, at_module_level=True)
        for node in self.module_level_nodes():
            if isinstance(node, (n.Call, n.MethodCall)):
                if classify_call(node, self.config, resolver) is CallClass.IMPURE:
                    self.report("FP009", node.span,
                                f"call to impure '{callee_name(node)}' at module level")

    def purity(self, verdict: PurityVerdict) -> None:
        for fv in verdict.functions.values():
            if fv.status is Purity.PURE:
                continue
            why = "; ".join(r.message for r in fv.reasons[:3])
            if len(fv.reasons) > 3:
                why += f"; and {len(fv.reasons) - 3} more"
            if fv.status is Purity.IMPURE:
                self.report("FP004", fv.span, f"function '{fv.name}' is not pure: {why}")
            else:
                self.report("FP004", fv.span,
                            f"purity of '{fv.name}' cannot be verified: {why}", Severity.WARNING)


def check_module(tree: n.Module, config: Optional[RuleConfig] = None) -> list[Diagnostic]:
    """Return every violation of an enabled rule, ordered by (line, col, rule).

    An empty list means the module stays inside the functional subset.
    Rebinding a name is not a violation.
    """
    return _Checker(tree, config or RuleConfig()).run(None)
