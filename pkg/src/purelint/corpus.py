"""Run a fixture corpus: ``pass/`` files must be clean, ``fail/`` files must
trigger exactly the rules their ``# expect: FPNNN`` comments name, on the
annotated lines."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .conformance import RuleConfig, check_module
from .frontend import LexError, ParseError, lex, parse_module


class CorpusError(Exception):
    pass


@dataclass
class CorpusResult:
    passed: int = 0
    failed: int = 0
    mismatches: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        if self.ok:
            return f"{self.passed} pass / {self.failed} fail fixtures OK"
        return f"{len(self.mismatches)} mismatch(es) in {self.passed} pass / {self.failed} fail fixtures"


def _analyze(path: Path, config: RuleConfig):
    source = path.read_text(encoding="utf-8")
    result = lex(source, path.as_posix())
    tree = parse_module(result.tokens, source=source)
    return result.expectations, check_module(tree, config)


def run_corpus(root: Path | str, config: Optional[RuleConfig] = None) -> CorpusResult:
    config = config or RuleConfig()
    root = Path(root)
    pass_dir, fail_dir = root / "pass", root / "fail"
    for d in (pass_dir, fail_dir):
        if not d.is_dir():
            raise CorpusError(f"missing corpus directory: {d}")
    out = CorpusResult()

    for path in sorted(pass_dir.glob("*.py")):
        out.passed += 1
        try:
            _, diags = _analyze(path, config)
        except (LexError, ParseError) as exc:
            out.mismatches.append(f"{path.as_posix()}: does not parse: {exc}")
            continue
        for d in diags:
            out.mismatches.append(f"{path.as_posix()}: unexpected {d.rule_id} at line {d.span.line}: {d.message}")

    fail_files = sorted(fail_dir.glob("*.py"))
    if not fail_files:
        out.warnings.append(f"{fail_dir.as_posix()} contains no fixtures")
    for path in fail_files:
        out.failed += 1
        name = path.as_posix()
        try:
            expectations, diags = _analyze(path, config)
        except (LexError, ParseError) as exc:
            out.mismatches.append(f"{name}: does not parse: {exc}")
            continue
        if not expectations:
            out.mismatches.append(f"{name}: no '# expect:' annotation")
            continue
        expected = {(e.line, e.rule) for e in expectations}
        found = {(d.span.line, d.rule_id) for d in diags}
        for line, rule in sorted(expected - found):
            got = sorted(r for ln, r in found if ln == line)
            extra = f" (found {', '.join(got)})" if got else ""
            out.mismatches.append(f"{name}: expected {rule} at line {line}{extra}")
        for line, rule in sorted(found - expected):
            out.mismatches.append(f"{name}: unexpected {rule} at line {line}")
    return out
