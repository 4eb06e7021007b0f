"""Snippet construction: semantic (from the top-weighted segments) and simple (first match)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .scoring import SegmentScore
from .segmenter import Segment
from .text import Query, Tokenizer

SEPARATOR = " … "


@dataclass(frozen=True)
class SnippetConfig:
    budget_chars: int = 100
    top_segments: int = 3
    window_chars: int = 40


@dataclass(frozen=True)
class MatchWindow:
    segment: int
    span: tuple[int, int]
    matched_terms: frozenset[str]
    # extent of the grouped term occurrences, inside ``span``
    group: tuple[int, int]


@dataclass(frozen=True)
class Fragment:
    text: str
    segment: int
    start: int
    end: int


@dataclass(frozen=True)
class Snippet:
    fragments: tuple[Fragment, ...]
    mode: str

    @property
    def rendered(self) -> str:
        return SEPARATOR.join(f.text for f in self.fragments)

    def to_json(self, doc_id: str | None = None) -> dict:
        return {
            "doc_id": doc_id,
            "mode": self.mode,
            "rendered": self.rendered,
            "fragments": [
                {"segment": f.segment, "start": f.start, "end": f.end, "text": f.text}
                for f in self.fragments
            ],
        }


def _sortable(total: float) -> float:
    # 12 significant digits: float noise from multiplier scaling must not reorder ties
    return float(f"{total:.12g}")


def rank_segments(scores: Sequence[SegmentScore | float]) -> list[tuple[int, float]]:
    """(ordinal, total) pairs by descending total; equal totals keep ordinal order.

    Totals are compared, and returned, at 12 significant digits.
    """
    totals = [_sortable(s.total if isinstance(s, SegmentScore) else float(s)) for s in scores]
    order = sorted(range(len(totals)), key=lambda i: (-totals[i], i))
    return [(i, totals[i]) for i in order]


def group_occurrences(occurrences: Sequence[tuple[int, int, str]], window: int):
    """Greedy left-to-right grouping: an occurrence joins the open group while the
    group, including it, spans at most ``window`` characters."""
    groups = []
    for start, end, term in sorted(occurrences):
        if groups and end - groups[-1][0] <= window:
            gs, ge, terms = groups[-1]
            groups[-1] = (gs, max(ge, end), terms | {term})
        else:
            groups.append((start, end, frozenset({term})))
    return groups


def find_occurrences(text: str, query: Query, tokenizer: Tokenizer) -> list[tuple[int, int, str]]:
    wanted = set(query.terms)
    return [(s, e, tok) for tok, s, e in tokenizer.spans(text) if tok in wanted]


def _to_word_edges(text: str, start: int, end: int) -> tuple[int, int]:
    """Grow ``[start, end)`` outward to whitespace, then trim whitespace at the edges."""
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    while end < len(text) and not text[end].isspace():
        end += 1
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    return start, end


def _fit(text: str, start: int, end: int, anchor: int, budget: int) -> tuple[int, int]:
    """Shrink ``[start, end)`` to at most ``budget`` characters, keeping ``anchor``
    (a word start) inside and cutting only at whitespace where possible."""
    if end - start <= budget:
        return start, end
    if anchor - start >= budget:
        start = anchor
    limit = min(start + budget, end)
    cut = limit
    if limit < end and not text[limit].isspace():
        space = text.rfind(" ", start + 1, limit + 1)
        if space > start:
            cut = space
    while cut > start and text[cut - 1].isspace():
        cut -= 1
    return start, cut


def match_segment(seg: Segment, query: Query, window: int,
                  tokenizer: Tokenizer | None = None) -> list[MatchWindow]:
    """Query-term match windows in ``seg``, in text order.

    Occurrences are grouped greedily within ``window`` characters, each group is
    padded to ``window`` characters around its centre, clamped to the segment and
    widened to whole words. Windows that end up overlapping are merged.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    tokenizer = tokenizer or Tokenizer()
    text = seg.text
    out: list[MatchWindow] = []
    for gs, ge, terms in group_occurrences(find_occurrences(text, query, tokenizer), window):
        slack = max(0, window - (ge - gs))
        ws = max(0, gs - slack // 2)
        we = min(len(text), ge + slack - slack // 2)
        ws, we = _to_word_edges(text, ws, we)
        if out and ws <= out[-1].span[1]:
            prev = out.pop()
            ws, we = prev.span[0], max(we, prev.span[1])
            terms = terms | prev.matched_terms
            gs = prev.group[0]
        out.append(MatchWindow(seg.ordinal, (ws, we), frozenset(terms), (gs, ge)))
    return out


def _head(seg: Segment, budget: int) -> Fragment:
    start, end = _fit(seg.text, 0, len(seg.text), 0, budget)
    return Fragment(seg.text[start:end], seg.ordinal, start, end)


def _fits(fragments: list[Fragment], budget: int) -> bool:
    return len(SEPARATOR.join(f.text for f in fragments)) <= budget


def build_semantic_snippet(segments: Sequence[Segment], scores: Sequence[SegmentScore],
                           query: Query, cfg: SnippetConfig | None = None,
                           tokenizer: Tokenizer | None = None) -> Snippet:
    """Snippet assembled from query matches inside the top-ranked segments."""
    cfg = cfg or SnippetConfig()
    ranked = rank_segments(scores)
    fragments: list[Fragment] = []
    full = False
    for ordinal, _ in ranked[:cfg.top_segments]:
        seg = segments[ordinal]
        for win in match_segment(seg, query, cfg.window_chars, tokenizer):
            ws, we = win.span
            frag = Fragment(seg.text[ws:we], ordinal, ws, we)
            if _fits(fragments + [frag], cfg.budget_chars):
                fragments.append(frag)
                continue
            if not fragments:
                ws, we = _fit(seg.text, ws, we, win.group[0], cfg.budget_chars)
                fragments.append(Fragment(seg.text[ws:we], ordinal, ws, we))
            full = True
            break
        if full:
            break
    if not fragments:
        for ordinal, _ in ranked:
            if segments[ordinal].text:
                fragments.append(_head(segments[ordinal], cfg.budget_chars))
                break
    return Snippet(tuple(fragments), "semantic")


def build_simple_snippet(segments: Sequence[Segment], query: Query,
                         cfg: SnippetConfig | None = None,
                         tokenizer: Tokenizer | None = None) -> Snippet:
    """Baseline: the first match group in reading order, widened to the budget."""
    cfg = cfg or SnippetConfig()
    budget = cfg.budget_chars
    for seg in segments:
        windows = match_segment(seg, query, cfg.window_chars, tokenizer) if seg.text else []
        if not windows:
            continue
        text = seg.text
        gs, ge = windows[0].group
        if ge - gs >= budget:
            ws, we = _fit(text, gs, ge, gs, budget)
        else:
            slack = budget - (ge - gs)
            ws = gs - slack // 2
            we = ge + slack - slack // 2
            if ws < 0:
                we, ws = we - ws, 0
            if we > len(text):
                ws, we = max(0, ws - (we - len(text))), len(text)
            # shrink inward so words are not cut
            if ws > 0 and not text[ws - 1].isspace():
                nxt = text.find(" ", ws, gs)
                ws = nxt + 1 if nxt != -1 else gs
            if we < len(text) and not text[we].isspace():
                prv = text.rfind(" ", ge, we)
                we = prv if prv != -1 else ge
            while ws < we and text[ws].isspace():
                ws += 1
            while we > ws and text[we - 1].isspace():
                we -= 1
        return Snippet((Fragment(text[ws:we], seg.ordinal, ws, we),), "simple")
    for seg in segments:
        if seg.text:
            return Snippet((_head(seg, budget),), "simple")
    return Snippet((), "simple")
