"""Inverted index with tf-idf cosine retrieval and JSON persistence."""

from __future__ import annotations

import bisect
import json
import math
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import TYPE_CHECKING

from .errors import DuplicateDocumentError, EmptyQueryError, IndexFormatError
from .text import Query, Tokenizer

if TYPE_CHECKING:
    from .document import Document

FORMAT_VERSION = "snipforge-index/1"
SCORE_DECIMALS = 12


@dataclass
class DocEntry:
    length: int
    url: str | None = None
    fetch_date: date | None = None


@dataclass
class ResultList:
    items: list[tuple[str, float]]
    mu: int

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    @property
    def ids(self) -> list[str]:
        return [doc_id for doc_id, _ in self.items]


def idf(doc_count: int, df: int) -> float:
    return math.log(1.0 + doc_count / df)


@dataclass
class InvertedIndex:
    tokenizer: Tokenizer = field(default_factory=Tokenizer)
    docs: dict[str, DocEntry] = field(default_factory=dict)
    postings: dict[str, list[tuple[str, int]]] = field(default_factory=dict)
    _norms: dict[str, float] | None = field(default=None, compare=False, repr=False)

    @property
    def doc_count(self) -> int:
        return len(self.docs)

    def add_document(self, doc: "Document") -> "InvertedIndex":
        return self.add_text(doc.id, doc.visible_text, url=doc.url, fetch_date=doc.fetch_date)

    def add_text(self, doc_id: str, text: str, url: str | None = None,
                 fetch_date: date | None = None) -> "InvertedIndex":
        if doc_id in self.docs:
            raise DuplicateDocumentError(f"document {doc_id!r} is already indexed")
        counts = Counter(self.tokenizer(text))
        self.docs[doc_id] = DocEntry(sum(counts.values()), url, fetch_date)
        for term, tf in counts.items():
            bisect.insort(self.postings.setdefault(term, []), (doc_id, tf))
        self._norms = None
        return self

    def _doc_norms(self) -> dict[str, float]:
        if self._norms is None:
            squares: dict[str, list[float]] = {doc_id: [] for doc_id in self.docs}
            n = self.doc_count
            for plist in self.postings.values():
                w = idf(n, len(plist))
                for doc_id, tf in plist:
                    squares[doc_id].append((tf * w) ** 2)
            self._norms = {doc_id: math.sqrt(math.fsum(sq)) for doc_id, sq in squares.items()}
        return self._norms

    def query(self, raw: str) -> Query:
        return Query.parse(raw, self.tokenizer)

    def retrieve(self, query: Query | str, mu: int = 10) -> ResultList:
        """Rank documents by tf-idf cosine against ``query`` and keep the top ``mu``."""
        if isinstance(query, str):
            query = self.query(query)
        if not query.terms:
            raise EmptyQueryError(f"query {query.raw!r} has no searchable terms")
        if mu < 1:
            raise ValueError("mu must be a positive integer")
        if not self.docs:
            return ResultList([], mu)

        n = self.doc_count
        q_weights = {t: idf(n, len(self.postings[t])) for t in query.terms if t in self.postings}
        if not q_weights:
            return ResultList([], mu)
        q_norm = math.sqrt(math.fsum(w * w for w in q_weights.values()))

        partials: dict[str, list[float]] = {}
        for term, qw in q_weights.items():
            for doc_id, tf in self.postings[term]:
                partials.setdefault(doc_id, []).append(tf * qw * qw)

        norms = self._doc_norms()
        scored = []
        for doc_id, parts in partials.items():
            score = round(math.fsum(parts) / (q_norm * norms[doc_id]), SCORE_DECIMALS)
            if score > 0:
                scored.append((doc_id, score))
        scored.sort(key=lambda item: (-item[1], item[0]))
        return ResultList(scored[:mu], mu)

    # -- persistence -------------------------------------------------------

    def to_json(self) -> dict:
        ids = sorted(self.docs)
        ordinal = {doc_id: i for i, doc_id in enumerate(ids)}
        docs = []
        for doc_id in ids:
            entry = self.docs[doc_id]
            docs.append({
                "id": doc_id,
                "url": entry.url,
                "fetch_date": entry.fetch_date.isoformat() if entry.fetch_date else None,
                "length": entry.length,
            })
        postings = {
            term: [[ordinal[doc_id], tf] for doc_id, tf in plist]
            for term, plist in sorted(self.postings.items())
        }
        return {
            "meta": {
                "format": FORMAT_VERSION,
                "stopwords": sorted(self.tokenizer.stopwords),
                "stemming": self.tokenizer.stem,
            },
            "docs": docs,
            "postings": postings,
        }

    def save(self, path: str | Path) -> None:
        payload = json.dumps(self.to_json(), ensure_ascii=False, sort_keys=True, separators=(",", ":"))
        path = Path(path)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
                fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def load(cls, path: str | Path) -> "InvertedIndex":
        raw = Path(path).read_text(encoding="utf-8")
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise IndexFormatError(_section_at(raw, exc.pos), f"malformed JSON: {exc.msg}") from None
        return cls.from_json(data)

    @classmethod
    def from_json(cls, data) -> "InvertedIndex":
        if not isinstance(data, dict):
            raise IndexFormatError("file", "top level must be an object")
        for key in ("meta", "docs", "postings"):
            if key not in data:
                raise IndexFormatError(key, "section missing")

        meta = data["meta"]
        if not isinstance(meta, dict) or meta.get("format") != FORMAT_VERSION:
            found = meta.get("format") if isinstance(meta, dict) else None
            raise IndexFormatError("meta", f"unsupported format {found!r}, expected {FORMAT_VERSION!r}")
        try:
            tokenizer = Tokenizer(frozenset(meta["stopwords"]), bool(meta["stemming"]))
        except (KeyError, TypeError) as exc:
            raise IndexFormatError("meta", f"bad tokenizer settings: {exc}") from None

        index = cls(tokenizer)
        ids = []
        try:
            for rec in data["docs"]:
                fd = rec["fetch_date"]
                length = rec["length"]
                if not isinstance(length, int) or length < 0:
                    raise ValueError(f"bad length {length!r}")
                if rec["id"] in index.docs:
                    raise ValueError(f"duplicate id {rec['id']!r}")
                index.docs[rec["id"]] = DocEntry(length, rec["url"], date.fromisoformat(fd) if fd else None)
                ids.append(rec["id"])
        except (KeyError, TypeError, ValueError) as exc:
            raise IndexFormatError("docs", f"bad document record: {exc}") from None

        try:
            for term, plist in data["postings"].items():
                converted = []
                for ordinal, tf in plist:
                    if not isinstance(ordinal, int) or not 0 <= ordinal < len(ids):
                        raise ValueError(f"doc ordinal {ordinal!r} out of range")
                    if not isinstance(tf, int) or tf < 1:
                        raise ValueError(f"term frequency {tf!r} for {term!r}")
                    converted.append((ids[ordinal], tf))
                converted.sort()
                index.postings[term] = converted
        except (AttributeError, TypeError, ValueError) as exc:
            raise IndexFormatError("postings", f"bad postings list: {exc}") from None
        return index


def _section_at(raw: str, pos: int) -> str:
    """Best guess at which top-level section a JSON parse error falls in."""
    best, best_at = "file", -1
    for key in ("meta", "docs", "postings"):
        at = raw.find(f'"{key}"')
        if best_at < at <= pos:
            best, best_at = key, at
    return best
