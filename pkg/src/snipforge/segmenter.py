"""DOM-heuristic page segmentation.

A page is split recursively at block-level containers. Recursion stops at a
node whose visible text is shorter than ``min_split_chars`` or that has no
block children; ``<hr>`` acts as a hard separator and a heading opens a new
segment that runs until the next boundary. Text segments shorter than
``merge_below_chars`` are merged into the following segment. Segments hold
character spans into the page's visible text, so the segment texts joined by
single spaces reproduce that text exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date

from .document import Document
from .html import HEADING_TAGS, Element, Node, Text

SPLIT_TAGS = frozenset({
    "#document", "html", "body", "main", "div", "section", "article", "table",
    "ul", "ol", "dl", "header", "footer", "nav", "aside", "figure", "form",
    "blockquote",
})

_MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5, "june": 6,
    "july": 7, "august": 8, "september": 9, "october": 10, "november": 11,
    "december": 12, "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6,
    "jul": 7, "aug": 8, "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}
_ISO_DATE = re.compile(r"(?<!\d)(\d{4})-(\d{2})-(\d{2})(?!\d)")
_NAMED_DATE = re.compile(
    r"\b(" + "|".join(sorted(_MONTHS, key=len, reverse=True)) + r")\.?\s+(\d{1,2}),\s*(\d{4})\b",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class SegmenterConfig:
    min_split_chars: int = 200
    merge_below_chars: int = 40


@dataclass
class Segment:
    ordinal: int
    span: tuple[int, int]
    text: str
    anchor_chars: int = 0
    images: list[str] = field(default_factory=list)
    has_heading: bool = False
    heading_depth: int | None = None
    dates: list[date] = field(default_factory=list)

    @property
    def text_chars(self) -> int:
        return len(self.text)

    @property
    def is_image_only(self) -> bool:
        return not self.text


def find_dates(text: str) -> list[date]:
    """ISO and ``Month D, YYYY`` dates in order of appearance; impossible dates are skipped."""
    found = []
    for m in _ISO_DATE.finditer(text):
        found.append((m.start(), int(m.group(1)), int(m.group(2)), int(m.group(3))))
    for m in _NAMED_DATE.finditer(text):
        found.append((m.start(), int(m.group(3)), _MONTHS[m.group(1).lower()], int(m.group(2))))
    dates = []
    for _, y, mo, d in sorted(found):
        try:
            dates.append(date(y, mo, d))
        except ValueError:
            continue
    return dates


def _text_len(node: Node) -> int:
    return 0 if node.start is None else node.end - node.start


def _is_boundary(node: Node) -> bool:
    return isinstance(node, Element) and node.visible and (
        node.tag in SPLIT_TAGS or node.tag == "hr" or node.tag in HEADING_TAGS)


def _split(node: Element, cfg: SegmenterConfig) -> list[list[Node]]:
    if _text_len(node) < cfg.min_split_chars or not any(map(_is_boundary, node.children)):
        return [[node]]
    groups: list[list[Node]] = []
    run: list[Node] = []

    def flush():
        nonlocal run
        if run:
            groups.append(run)
        run = []

    for child in node.children:
        if not child.visible:
            continue
        if isinstance(child, Element) and child.tag == "hr":
            flush()
        elif isinstance(child, Element) and child.tag in HEADING_TAGS:
            flush()
            run.append(child)
        elif isinstance(child, Element) and child.tag in SPLIT_TAGS:
            flush()
            groups.extend(_split(child, cfg))
        else:
            run.append(child)
    flush()
    return groups


def _images(nodes: list[Node]) -> list[Element]:
    out = []
    for node in nodes:
        if isinstance(node, Element):
            out.extend(n for n in node.iter() if isinstance(n, Element) and n.tag == "img" and n.visible)
    return out


@dataclass
class _Block:
    nodes: list[Node]
    start: int
    end: int

    @property
    def has_text(self) -> bool:
        return self.end > self.start

    def absorb(self, other: "_Block") -> "_Block":
        if not self.has_text:
            start, end = other.start, other.end
        elif not other.has_text:
            start, end = self.start, self.end
        else:
            start, end = min(self.start, other.start), max(self.end, other.end)
        return _Block(self.nodes + other.nodes, start, end)


def _to_block(nodes: list[Node]) -> _Block | None:
    spans = [(n.start, n.end) for n in nodes if n.start is not None]
    if spans:
        return _Block(nodes, min(s for s, _ in spans), max(e for _, e in spans))
    imgs = _images(nodes)
    if imgs:
        return _Block(nodes, imgs[0].pos, imgs[0].pos)
    return None


def _merge_short(blocks: list[_Block], min_chars: int) -> list[_Block]:
    out: list[_Block] = []
    carry: _Block | None = None
    for block in blocks:
        if carry is not None:
            if block.has_text:
                block = carry.absorb(block)
            elif out and out[-1].has_text:
                out[-1] = out[-1].absorb(carry)
            else:
                out.append(carry)
            carry = None
        if not block.has_text and out and not out[-1].has_text:
            # consecutive image-only blocks collapse into one
            out[-1] = out[-1].absorb(block)
            continue
        if block.has_text and block.end - block.start < min_chars:
            carry = block
            continue
        out.append(block)
    if carry is not None:
        if out and out[-1].has_text:
            out[-1] = out[-1].absorb(carry)
        else:
            out.append(carry)
    return out


def _anchor_chars(nodes: list[Node]) -> int:
    total = 0
    stack = list(reversed(nodes))
    while stack:
        node = stack.pop()
        if not isinstance(node, Element) or not node.visible:
            continue
        if node.tag == "a":
            total += _text_len(node)
            continue  # nested anchors are not double counted
        stack.extend(reversed(node.children))
    return total


def extract_segment_features(seg: Segment, nodes: list[Node]) -> Segment:
    """Fill anchor, image, heading and date features of ``seg`` from its DOM nodes."""
    seg.anchor_chars = _anchor_chars(nodes)
    seg.images = [img.attrs.get("alt", "") for img in _images(nodes)]
    levels = []
    for node in nodes:
        if isinstance(node, Element):
            levels.extend(HEADING_TAGS[n.tag] for n in node.iter()
                          if isinstance(n, Element) and n.tag in HEADING_TAGS and n.start is not None)
    seg.has_heading = bool(levels)
    seg.heading_depth = min(levels) if levels else None
    seg.dates = find_dates(seg.text)
    return seg


def segment(doc: Document, cfg: SegmenterConfig | None = None) -> list[Segment]:
    cfg = cfg or SegmenterConfig()
    page = doc.page
    blocks = [b for b in map(_to_block, _split(page.root, cfg)) if b is not None]
    blocks = _merge_short(blocks, cfg.merge_below_chars)
    segments = []
    for ordinal, block in enumerate(blocks):
        seg = Segment(ordinal, (block.start, block.end), page.visible_text[block.start:block.end])
        segments.append(extract_segment_features(seg, block.nodes))
    return segments
