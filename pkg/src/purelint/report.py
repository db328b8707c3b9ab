"""Checking files and rendering the results as text or JSON."""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from .conformance import Diagnostic, RuleConfig, check_module
from .frontend import LexError, ParseError, parse


@dataclass(frozen=True)
class SyntaxProblem:
    """A lex or parse failure that kept a file from being checked."""

    kind: str  # "lex" or "syntax"
    message: str
    line: int
    col: int

    @classmethod
    def from_exc(cls, exc: Union[LexError, ParseError]) -> SyntaxProblem:
        kind = "lex" if isinstance(exc, LexError) else "syntax"
        return cls(kind, exc.message, exc.span.line, exc.span.col)


@dataclass(frozen=True)
class FileResult:
    path: str
    diagnostics: tuple[Diagnostic, ...] = ()
    problem: Optional[SyntaxProblem] = None


@dataclass
class RunReport:
    files: list[FileResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def errors(self) -> int:
        return sum(d.is_error for f in self.files for d in f.diagnostics)

    @property
    def warnings(self) -> int:
        return sum(not d.is_error for f in self.files for d in f.diagnostics)

    @property
    def has_problems(self) -> bool:
        return any(f.problem is not None for f in self.files)

    @property
    def verdict(self) -> str:
        return "pass" if self.errors == 0 and not self.has_problems else "fail"

    @property
    def counts(self) -> dict[str, int]:
        c = Counter(d.rule_id for f in self.files for d in f.diagnostics)
        return dict(sorted(c.items()))

    @property
    def exit_code(self) -> int:
        if self.has_problems:
            return 2
        return 1 if self.errors else 0

    def to_json(self) -> dict:
        files = []
        for f in self.files:
            entry: dict = {"path": f.path, "diagnostics": [d.to_json() for d in f.diagnostics]}
            if f.problem is not None:
                p = f.problem
                entry["error"] = {"kind": p.kind, "message": p.message, "line": p.line, "col": p.col}
            files.append(entry)
        return {"files": files, "verdict": self.verdict}

    def render_json(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def render_human(self) -> str:
        lines = []
        for f in self.files:
            if f.problem is not None:
                p = f.problem
                lines.append(f"{f.path}:{p.line}:{p.col}: {p.kind} error: {p.message}")
            lines.extend(d.format() for d in f.diagnostics)
        summary = f"{len(self.files)} file(s) checked: {self.errors} error(s), {self.warnings} warning(s)"
        if self.counts:
            summary += " [" + ", ".join(f"{k}: {v}" for k, v in self.counts.items()) + "]"
        lines.append(f"{summary}; {self.verdict}")
        return "\n".join(lines) + "\n"


def check_source(source: str, path: str, config: Optional[RuleConfig] = None) -> list[Diagnostic]:
    """Parse and check one file's text; lex and parse errors propagate."""
    return check_module(parse(source, path), config or RuleConfig())


def check_file(path: Path, config: RuleConfig) -> FileResult:
    source = path.read_text(encoding="utf-8")
    name = path.as_posix()
    try:
        diags = check_source(source, name, config)
    except (LexError, ParseError) as exc:
        return FileResult(name, (), SyntaxProblem.from_exc(exc))
    return FileResult(name, tuple(diags))


def expand_paths(paths: Iterable[Union[str, Path]]) -> list[Path]:
    """Files as given, directories expanded to their ``*.py`` files; sorted."""
    out: set[Path] = set()
    for p in map(Path, paths):
        if p.is_dir():
            out.update(q for q in p.rglob("*.py") if q.is_file())
        elif p.exists():
            out.add(p)
        else:
            raise FileNotFoundError(f"no such file or directory: {p}")
    return sorted(out, key=lambda q: q.as_posix())


def check_paths(paths: Iterable[Union[str, Path]], config: RuleConfig) -> RunReport:
    start = time.perf_counter()
    report = RunReport([check_file(p, config) for p in expand_paths(paths)])
    report.elapsed = time.perf_counter() - start
    return report
