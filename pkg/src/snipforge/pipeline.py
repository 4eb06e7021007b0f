"""Retrieval plus per-page segmentation, scoring and snippet construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .config import AppConfig
from .document import Document
from .index import InvertedIndex
from .scoring import SegmentScore, score_page
from .segmenter import Segment, segment
from .snippets import Snippet, build_semantic_snippet, build_simple_snippet
from .text import Query

MODES = ("semantic", "simple")


@dataclass
class PageAnalysis:
    doc: Document
    segments: list[Segment]
    scores: list[SegmentScore]


@dataclass
class ResultItem:
    rank: int
    doc_id: str
    score: float
    url: str | None
    snippet: Snippet

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "doc_id": self.doc_id,
            "score": self.score,
            "url": self.url,
            "snippet": self.snippet.to_json(self.doc_id),
        }


def build_index(docs: Sequence[Document], config: AppConfig | None = None) -> InvertedIndex:
    config = config or AppConfig()
    index = InvertedIndex(config.tokenizer())
    for doc in docs:
        index.add_document(doc)
    return index


@dataclass
class Engine:
    index: InvertedIndex
    documents: Mapping[str, Document]
    config: AppConfig = field(default_factory=AppConfig)
    _pages: dict[str, PageAnalysis] = field(default_factory=dict, repr=False)

    @classmethod
    def from_documents(cls, docs: Sequence[Document], config: AppConfig | None = None) -> "Engine":
        config = config or AppConfig()
        return cls(build_index(docs, config), {d.id: d for d in docs}, config)

    @property
    def tokenizer(self):
        return self.index.tokenizer

    def query(self, raw: str) -> Query:
        return self.index.query(raw)

    def analyze(self, doc_id: str) -> PageAnalysis:
        page = self._pages.get(doc_id)
        if page is None:
            doc = self.documents[doc_id]
            segments = segment(doc, self.config.segmenter())
            scores = score_page(doc, segments, self.config.scorer(self.tokenizer), self.tokenizer)
            page = self._pages[doc_id] = PageAnalysis(doc, segments, scores)
        return page

    def snippet(self, doc_id: str, query: Query, mode: str = "semantic") -> Snippet:
        page = self.analyze(doc_id)
        cfg = self.config.snippets()
        if mode == "semantic":
            return build_semantic_snippet(page.segments, page.scores, query, cfg, self.tokenizer)
        if mode == "simple":
            return build_simple_snippet(page.segments, query, cfg, self.tokenizer)
        raise ValueError(f"unknown snippet mode {mode!r}")

    def search(self, query: Query | str, mode: str = "semantic", mu: int | None = None) -> list[ResultItem]:
        if isinstance(query, str):
            query = self.query(query)
        results = self.index.retrieve(query, mu or self.config.mu)
        items = []
        for rank, (doc_id, score) in enumerate(results, start=1):
            url = self.index.docs[doc_id].url
            items.append(ResultItem(rank, doc_id, score, url, self.snippet(doc_id, query, mode)))
        return items
