from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..frontend.tokens import SourceSpan


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    rule_id: str
    severity: Severity
    span: SourceSpan
    message: str
    snippet: str = ""

    @property
    def sort_key(self) -> tuple[int, int, str, int, int, str]:
        s = self.span
        return (s.line, s.col, self.rule_id, s.end_line, s.end_col, self.message)

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def to_json(self) -> dict:
        s = self.span
        return {
            "rule": self.rule_id,
            "severity": self.severity.value,
            "file": s.file,
            "line": s.line,
            "col": s.col,
            "end_line": s.end_line,
            "end_col": s.end_col,
            "message": self.message,
        }

    def format(self) -> str:
        return f"{self.span}: {self.rule_id} [{self.severity.value}] {self.message}"
