"""Query-biased search result snippets built from weighted page segments."""

from .config import AppConfig, load_config
from .document import Document, load_corpus
from .index import InvertedIndex, ResultList
from .pipeline import Engine
from .scoring import PageContext, ScorerConfig, SegmentScore, score_page, score_segment
from .segmenter import Segment, SegmenterConfig, segment
from .snippets import Snippet, SnippetConfig, build_semantic_snippet, build_simple_snippet, rank_segments
from .text import Query, Tokenizer, tokenize

__all__ = [
    "AppConfig", "Document", "Engine", "InvertedIndex", "PageContext", "Query", "ResultList",
    "ScorerConfig", "Segment", "SegmentScore", "SegmenterConfig", "Snippet", "SnippetConfig",
    "Tokenizer", "build_semantic_snippet", "build_simple_snippet", "load_config", "load_corpus",
    "rank_segments", "score_page", "score_segment", "segment", "tokenize",
]

__version__ = "0.1.0"
