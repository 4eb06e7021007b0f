"""Tokenization shared by indexing, query parsing, scoring and snippet matching."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

# Runs of Unicode letters and digits; everything else separates.
_TOKEN_RE = re.compile(r"[^\W_]+")
_WS_RE = re.compile(r"\s+")


def normalize_ws(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def s_stem(word: str) -> str:
    """Harman's S-stemmer: strip common English plural endings."""
    if word.endswith("ies") and not word.endswith(("eies", "aies")):
        return word[:-3] + "y"
    if word.endswith("es") and not word.endswith(("aes", "ees", "oes")):
        return word[:-1]
    if word.endswith("s") and not word.endswith(("us", "ss")) and len(word) > 1:
        return word[:-1]
    return word


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a stopword file (one word per line, '#' comments). ``None`` loads the bundled list."""
    if path is None:
        raw = resources.files("snipforge").joinpath("data/stopwords.txt").read_text("utf-8")
    else:
        raw = Path(path).read_text("utf-8")
    words = set()
    for line in raw.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def iter_token_spans(text: str, stopwords: Iterable[str] = (), stem: bool = False) -> Iterator[tuple[str, int, int]]:
    """Yield ``(token, start, end)`` with character offsets into ``text``."""
    stop = stopwords if isinstance(stopwords, (set, frozenset)) else frozenset(stopwords)
    for m in _TOKEN_RE.finditer(text):
        tok = m.group().lower()
        if tok in stop:
            continue
        if stem:
            tok = s_stem(tok)
        yield tok, m.start(), m.end()


def tokenize(text: str, stopwords: Iterable[str] = (), stem: bool = False) -> list[str]:
    """Lowercased letter/digit runs of ``text`` in order, stopwords removed.

    >>> tokenize("The Quick, quick fox!", {"the"})
    ['quick', 'quick', 'fox']
    """
    return [tok for tok, _, _ in iter_token_spans(text, stopwords, stem)]


@dataclass(frozen=True)
class Tokenizer:
    """Bundles the stopword list and stemming flag so every stage tokenizes alike."""

    stopwords: frozenset[str] = field(default_factory=frozenset)
    stem: bool = False

    def __call__(self, text: str) -> list[str]:
        return tokenize(text, self.stopwords, self.stem)

    def spans(self, text: str) -> list[tuple[str, int, int]]:
        return list(iter_token_spans(text, self.stopwords, self.stem))

    @classmethod
    def default(cls, stem: bool = False) -> "Tokenizer":
        return cls(load_stopwords(), stem)


@dataclass(frozen=True)
class Query:
    raw: str
    terms: tuple[str, ...]

    @classmethod
    def parse(cls, raw: str, tokenizer: Tokenizer) -> "Query":
        # dict preserves first-occurrence order while dropping repeats
        terms = tuple(dict.fromkeys(tokenizer(raw)))
        return cls(raw, terms)

    def __bool__(self) -> bool:
        return bool(self.terms)
