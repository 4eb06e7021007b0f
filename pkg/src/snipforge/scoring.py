"""Six-factor segment weighting: freshness, theme, link, visual, profile, image.

Every factor is bounded in [0, 1] and depends only on the page, never on the
query. A segment's weight is the multiplier-scaled sum of its factors; with
the default unit multipliers that is the plain sum.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from datetime import date
from typing import Mapping, Sequence

from .document import Document
from .errors import ConfigError
from .segmenter import Segment
from .text import Tokenizer

FACTORS = ("f", "e", "l", "v", "r", "m")


@dataclass(frozen=True)
class ScorerConfig:
    w_f: float = 1.0
    w_e: float = 1.0
    w_l: float = 1.0
    w_v: float = 1.0
    w_r: float = 1.0
    w_m: float = 1.0
    reference_date: date | None = None
    profile_terms: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        for name in FACTORS:
            w = getattr(self, f"w_{name}")
            if not w >= 0:
                raise ConfigError(f"w_{name}", f"multiplier must be >= 0, got {w!r}")
        if not any(self.multipliers):
            raise ConfigError("multipliers", "at least one multiplier must be > 0")

    @property
    def multipliers(self) -> tuple[float, ...]:
        return tuple(getattr(self, f"w_{name}") for name in FACTORS)


@dataclass(frozen=True)
class PageContext:
    theme_vector: Mapping[str, int]
    mean_segment_chars: float
    document_date: date | None = None
    tokenizer: Tokenizer = field(default_factory=Tokenizer)

    @classmethod
    def build(cls, doc: Document, segments: Sequence[Segment],
              tokenizer: Tokenizer | None = None) -> "PageContext":
        tokenizer = tokenizer or Tokenizer()
        headings = [el.text_content() for el in doc.page.root.find_all("h1", "h2")]
        theme = Counter(tokenizer(" ".join([doc.title, *headings])))
        lengths = [s.text_chars for s in segments if s.text_chars]
        mean = sum(lengths) / len(lengths) if lengths else 1.0
        return cls(theme, mean, doc.fetch_date, tokenizer)


@dataclass(frozen=True)
class SegmentScore:
    f: float
    e: float
    l: float
    v: float
    r: float
    m: float
    total: float

    @property
    def factors(self) -> tuple[float, ...]:
        return (self.f, self.e, self.l, self.v, self.r, self.m)


def cosine(a: Mapping[str, float], b: Mapping[str, float]) -> float:
    if not a or not b:
        return 0.0
    dot = math.fsum(w * b[t] for t, w in a.items() if t in b)
    if dot == 0:
        return 0.0
    na = math.sqrt(math.fsum(w * w for w in a.values()))
    nb = math.sqrt(math.fsum(w * w for w in b.values()))
    return min(1.0, dot / (na * nb))


def freshness(seg: Segment, ctx: PageContext, cfg: ScorerConfig) -> float:
    """exp(-age/365) of the segment's newest date; 0 for undated segments."""
    reference = ctx.document_date or cfg.reference_date
    if not seg.dates or reference is None:
        return 0.0
    age = max(0, (reference - max(seg.dates)).days)
    return math.exp(-age / 365.0)


def theme(seg: Segment, ctx: PageContext) -> float:
    return cosine(Counter(ctx.tokenizer(seg.text)), ctx.theme_vector)


def link_informativeness(seg: Segment) -> float:
    if seg.is_image_only:
        return 0.0
    return max(0.0, 1.0 - seg.anchor_chars / max(1, seg.text_chars))


def visual(seg: Segment, ctx: PageContext) -> float:
    size = min(1.0, seg.text_chars / (2.0 * ctx.mean_segment_chars))
    return 0.5 * seg.has_heading + 0.5 * size


def profile(seg: Segment, cfg: ScorerConfig, tokenizer: Tokenizer | None = None) -> float:
    if not cfg.profile_terms:
        return 0.0
    tokens = set((tokenizer or Tokenizer())(seg.text))
    return len(cfg.profile_terms & tokens) / len(cfg.profile_terms)


def image(seg: Segment, ctx: PageContext) -> float:
    """0.25 per image, images whose alt text touches the page theme count twice."""
    themed = sum(1 for alt in seg.images if set(ctx.tokenizer(alt)) & ctx.theme_vector.keys())
    return min(1.0, 0.25 * (len(seg.images) + themed))


def score_segment(seg: Segment, ctx: PageContext, cfg: ScorerConfig) -> SegmentScore:
    values = (
        freshness(seg, ctx, cfg),
        theme(seg, ctx),
        link_informativeness(seg),
        visual(seg, ctx),
        profile(seg, cfg, ctx.tokenizer),
        image(seg, ctx),
    )
    total = math.fsum(v * w for v, w in zip(values, cfg.multipliers))
    return SegmentScore(*values, total=total)


def score_page(doc: Document, segments: Sequence[Segment], cfg: ScorerConfig | None = None,
               tokenizer: Tokenizer | None = None) -> list[SegmentScore]:
    cfg = cfg or ScorerConfig()
    ctx = PageContext.build(doc, segments, tokenizer)
    return [score_segment(seg, ctx, cfg) for seg in segments]
