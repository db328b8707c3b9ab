from __future__ import annotations

from enum import Enum
from typing import Optional, Union

from ..frontend import nodes as n
from .config import RuleConfig
from .scope import ModuleContext, NameKind, Resolver


class CallClass(str, Enum):
    ALLOWED = "allowed"
    IMPURE = "impure-denylisted"
    MUTATING = "mutating-method"
    UNKNOWN = "unknown"


_ALLOWED_KINDS = frozenset(
    {NameKind.LOCAL, NameKind.FUNCTION, NameKind.BUILTIN, NameKind.ALLOWED_IMPORT}
)


def classify_call(
    node: Union[n.Call, n.MethodCall],
    config: RuleConfig,
    resolver: Optional[Resolver] = None,
) -> CallClass:
    """Classify a call site by name.

    Without a ``resolver`` only the config lists are consulted; with one,
    local bindings, module-level functions and imports are taken into
    account as well.  Mutation detection is by method name only: no types
    or aliases are tracked.
    """
    if resolver is None:
        resolver = Resolver(config, ModuleContext(), at_module_level=True)
    if isinstance(node, n.MethodCall):
        if node.method in config.mutating_methods:
            return CallClass.MUTATING
        if isinstance(node.receiver, n.Name):
            binding = resolver.import_for(node.receiver.id)
            if binding is not None and binding.name is None:
                return _classify_module_attr(binding.module, node.method, config)
        if node.method in config.pure_methods:
            return CallClass.ALLOWED
        return CallClass.UNKNOWN
    callee = node.callee
    if isinstance(callee, n.Name):
        kind = resolver.resolve(callee.id)
        if kind is NameKind.IMPURE:
            return CallClass.IMPURE
        if kind in _ALLOWED_KINDS:
            return CallClass.ALLOWED
        return CallClass.UNKNOWN
    # Calling a computed value (a lambda, a call result, an element of a
    # collection): whatever function it is was checked where it was written.
    return CallClass.ALLOWED


def _classify_module_attr(module: str, attr: str, config: RuleConfig) -> CallClass:
    if module.split(".")[0] in config.impure_modules or f"{module}.{attr}" in config.impure_calls:
        return CallClass.IMPURE
    if (module, attr) in config.import_allowlist:
        return CallClass.ALLOWED
    return CallClass.UNKNOWN


def callee_name(node: Union[n.Call, n.MethodCall]) -> str:
    if isinstance(node, n.MethodCall):
        if isinstance(node.receiver, n.Name):
            return f"{node.receiver.id}.{node.method}"
        return f".{node.method}"
    if isinstance(node.callee, n.Name):
        return node.callee.id
    return "<expression>"
