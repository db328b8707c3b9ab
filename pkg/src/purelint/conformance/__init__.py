"""Conformance rules for the functional subset and the purity analysis."""

from .calls import CallClass, classify_call
from .config import RULES, ConfigError, Mode, RuleConfig
from .diagnostics import Diagnostic, Severity
from .purity import FunctionVerdict, Purity, PurityVerdict, Reason, analyze_purity
from .rules import CONSTRUCT_RULES, check_module

__all__ = [
    "CONSTRUCT_RULES",
    "RULES",
    "CallClass",
    "ConfigError",
    "Diagnostic",
    "FunctionVerdict",
    "Mode",
    "Purity",
    "PurityVerdict",
    "Reason",
    "RuleConfig",
    "Severity",
    "analyze_purity",
    "check_module",
    "classify_call",
]
