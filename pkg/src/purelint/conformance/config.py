"""Rule configuration and its JSON file form."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Mapping

RULES = {
    "FP001": "non-name assignment target",
    "FP002": "augmented assignment",
    "FP003": "forbidden statement",
    "FP004": "impure function definition",
    "FP005": "mutating method call",
    "FP006": "attribute or subscript assignment",
    "FP007": "walrus assignment",
    "FP008": "global/nonlocal declaration",
    "FP009": "impure call at module level",
    "FP010": "disallowed import",
}

DEFAULT_BUILTINS = frozenset(
    """map filter len range zip sorted list tuple set dict str chr ord abs min
    max sum enumerate reversed all any""".split()
)
DEFAULT_IMPURE_CALLS = frozenset({"print", "input", "open", "eval", "exec"})
DEFAULT_IMPURE_MODULES = frozenset({"random", "time"})
DEFAULT_MUTATING_METHODS = frozenset(
    """append extend insert remove pop clear sort reverse update add discard
    setdefault popitem""".split()
)
# Methods on str/tuple (and read-only methods on the other builtin
# containers) that return new values.
DEFAULT_PURE_METHODS = frozenset(
    """capitalize casefold center count endswith find format index isalnum
    isalpha isascii isdecimal isdigit isidentifier islower isnumeric
    isprintable isspace istitle isupper join ljust lower lstrip partition
    removeprefix removesuffix replace rfind rindex rjust rpartition rsplit
    rstrip split splitlines startswith strip swapcase title upper zfill
    copy get keys values items union intersection difference
    symmetric_difference issubset issuperset isdisjoint""".split()
)
DEFAULT_IMPORTS = frozenset({("functools", "reduce")})


class ConfigError(ValueError):
    pass


class Mode(str, Enum):
    STRICT = "strict"
    LENIENT = "lenient"


@dataclass(frozen=True)
class RuleConfig:
    enabled_rules: frozenset[str] = frozenset(RULES)
    builtin_allowlist: frozenset[str] = DEFAULT_BUILTINS
    impure_calls: frozenset[str] = DEFAULT_IMPURE_CALLS
    impure_modules: frozenset[str] = DEFAULT_IMPURE_MODULES
    mutating_methods: frozenset[str] = DEFAULT_MUTATING_METHODS
    pure_methods: frozenset[str] = DEFAULT_PURE_METHODS
    import_allowlist: frozenset[tuple[str, str]] = DEFAULT_IMPORTS
    mode: Mode = Mode.STRICT
    # Permit ``a, b = pair`` when every target is a plain name.
    allow_unpacking: bool = False

    def __post_init__(self) -> None:
        unknown = self.enabled_rules - set(RULES)
        if unknown:
            raise ConfigError(f"unknown rule ids: {', '.join(sorted(unknown))}")
        overlap = self.builtin_allowlist & self.impure_calls
        if overlap:
            raise ConfigError(f"names both allowed and impure: {', '.join(sorted(overlap))}")
        overlap = self.pure_methods & self.mutating_methods
        if overlap:
            raise ConfigError(f"methods both pure and mutating: {', '.join(sorted(overlap))}")
        overlap = {m for m, _ in self.import_allowlist} & self.impure_modules
        if overlap:
            raise ConfigError(f"modules both allowed and impure: {', '.join(sorted(overlap))}")

    @property
    def strict(self) -> bool:
        return self.mode is Mode.STRICT

    def with_mode(self, mode: Mode | str) -> RuleConfig:
        return replace(self, mode=Mode(mode))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> RuleConfig:
        """Build a config from the JSON document form; absent keys keep defaults."""
        if not isinstance(data, Mapping):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        kwargs: dict[str, Any] = {}
        for key, value in data.items():
            if key == "mode":
                try:
                    kwargs[key] = Mode(value)
                except ValueError:
                    raise ConfigError(f"mode must be 'strict' or 'lenient', not {value!r}") from None
            elif key == "allow_unpacking":
                if not isinstance(value, bool):
                    raise ConfigError("allow_unpacking must be a boolean")
                kwargs[key] = value
            elif key == "import_allowlist":
                kwargs[key] = frozenset(_split_import(item) for item in _strings(key, value))
            else:
                kwargs[key] = frozenset(_strings(key, value))
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | Path) -> RuleConfig:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        return {
            "enabled_rules": sorted(self.enabled_rules),
            "builtin_allowlist": sorted(self.builtin_allowlist),
            "impure_calls": sorted(self.impure_calls),
            "impure_modules": sorted(self.impure_modules),
            "mutating_methods": sorted(self.mutating_methods),
            "pure_methods": sorted(self.pure_methods),
            "import_allowlist": sorted(f"{m}.{n}" for m, n in self.import_allowlist),
            "mode": self.mode.value,
            "allow_unpacking": self.allow_unpacking,
        }


def _strings(key: str, value: Any) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ConfigError(f"{key} must be a list of strings")
    return value


def _split_import(item: str) -> tuple[str, str]:
    module, dot, name = item.rpartition(".")
    if not dot or not module or not name:
        raise ConfigError(f"import_allowlist entries look like 'module.name', not {item!r}")
    return (module, name)
