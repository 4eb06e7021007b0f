"""Application configuration: a flat JSON document with dotted keys.

Precedence is command-line flags over file values over the defaults below.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields, replace
from datetime import date
from pathlib import Path
from typing import Any

from .errors import ConfigError
from .evaluation import JudgeConfig
from .scoring import ScorerConfig
from .segmenter import SegmenterConfig
from .snippets import SnippetConfig
from .text import Tokenizer, load_stopwords

ENV_VAR = "SNIPFORGE_CONFIG"


@dataclass(frozen=True)
class AppConfig:
    mu: int = 10
    budget_chars: int = 100
    top_segments: int = 3
    match_window_chars: int = 40
    min_split_chars: int = 200
    merge_below_chars: int = 40
    w_f: float = 1.0
    w_e: float = 1.0
    w_l: float = 1.0
    w_v: float = 1.0
    w_r: float = 1.0
    w_m: float = 1.0
    reference_date: date | None = None
    profile_terms: tuple[str, ...] = ()
    stopwords_path: str | None = None
    stemming: bool = False
    judge_term_coverage: float = 1.0
    judge_provenance_share: float = 0.6
    judge_min_link: float = 0.5

    def __post_init__(self):
        for name in ("mu", "top_segments", "match_window_chars", "min_split_chars", "merge_below_chars"):
            if getattr(self, name) < 1:
                raise ConfigError(name, f"must be >= 1, got {getattr(self, name)}")
        if self.budget_chars < 20:
            raise ConfigError("budget_chars", f"must be >= 20, got {self.budget_chars}")
        for name in ("judge_term_coverage", "judge_provenance_share", "judge_min_link"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigError(name, f"must lie in [0, 1], got {getattr(self, name)}")
        self.scorer()  # multiplier bounds

    def with_overrides(self, **changes) -> "AppConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def segmenter(self) -> SegmenterConfig:
        return SegmenterConfig(self.min_split_chars, self.merge_below_chars)

    def scorer(self, tokenizer: Tokenizer | None = None) -> ScorerConfig:
        tokenizer = tokenizer or Tokenizer()
        terms = frozenset(t for term in self.profile_terms for t in tokenizer(term))
        return ScorerConfig(self.w_f, self.w_e, self.w_l, self.w_v, self.w_r, self.w_m,
                            self.reference_date, terms)

    def snippets(self) -> SnippetConfig:
        return SnippetConfig(self.budget_chars, self.top_segments, self.match_window_chars)

    def judge(self) -> JudgeConfig:
        return JudgeConfig(self.judge_term_coverage, self.judge_provenance_share, self.judge_min_link)

    def tokenizer(self) -> Tokenizer:
        return Tokenizer(load_stopwords(self.stopwords_path), self.stemming)


# file key -> AppConfig field
KEYS = {
    "mu": "mu",
    "budget_chars": "budget_chars",
    "top_segments": "top_segments",
    "match_window_chars": "match_window_chars",
    "segmenter.min_split_chars": "min_split_chars",
    "segmenter.merge_below_chars": "merge_below_chars",
    "scorer.wF": "w_f",
    "scorer.wE": "w_e",
    "scorer.wL": "w_l",
    "scorer.wV": "w_v",
    "scorer.wR": "w_r",
    "scorer.wM": "w_m",
    "scorer.reference_date": "reference_date",
    "scorer.profile_terms": "profile_terms",
    "stopwords_path": "stopwords_path",
    "stemming": "stemming",
    "judge.term_coverage": "judge_term_coverage",
    "judge.provenance_share": "judge_provenance_share",
    "judge.min_link_informativeness": "judge_min_link",
}
_FIELD_TYPES = {f.name: f.type for f in fields(AppConfig)}


def _coerce(key: str, name: str, value: Any) -> Any:
    kind = _FIELD_TYPES[name]
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(key, f"expected an integer, got {value!r}")
        return value
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(key, f"expected a number, got {value!r}")
        return float(value)
    if kind == "bool":
        if not isinstance(value, bool):
            raise ConfigError(key, f"expected true/false, got {value!r}")
        return value
    if name == "reference_date":
        if value is None:
            return None
        try:
            return date.fromisoformat(value)
        except (TypeError, ValueError):
            raise ConfigError(key, f"expected a YYYY-MM-DD date, got {value!r}") from None
    if name == "profile_terms":
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise ConfigError(key, "expected a list of strings")
        return tuple(sorted(set(value)))
    if name == "stopwords_path":
        if value is not None and not isinstance(value, str):
            raise ConfigError(key, f"expected a path string, got {value!r}")
        return value
    raise AssertionError(name)  # pragma: no cover


def from_mapping(data: dict) -> AppConfig:
    if not isinstance(data, dict):
        raise ConfigError("<file>", "config must be a JSON object")
    values = {}
    for key, value in data.items():
        if key not in KEYS:
            raise ConfigError(key, "unknown configuration key")
        values[KEYS[key]] = _coerce(key, KEYS[key], value)
    try:
        return AppConfig(**values)
    except ConfigError as exc:
        # report the file key rather than the attribute name
        file_key = next((k for k, n in KEYS.items() if n == exc.field), exc.field)
        raise ConfigError(file_key, str(exc).split(": ", 1)[-1]) from None


def resolve_path(path: str | Path | None) -> Path | None:
    if path is not None:
        return Path(path)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def load_config(path: str | Path | None = None) -> AppConfig:
    """Load a config file; no path (and no ``SNIPFORGE_CONFIG``) means defaults."""
    path = resolve_path(path)
    if path is None:
        return AppConfig()
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError("<file>", f"config file {str(path)!r} not found") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"{path} is not valid JSON: {exc.msg}") from None
    return from_mapping(data)


def dump_config(cfg: AppConfig) -> dict:
    values = asdict(cfg)
    out = {}
    for key, name in KEYS.items():
        value = values[name]
        if name == "reference_date":
            value = value.isoformat() if value else None
        elif name == "profile_terms":
            value = list(value)
        out[key] = value
    return out
