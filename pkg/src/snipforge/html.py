"""Lenient HTML parsing into a small element tree with visible-text offsets.

The tree is built with the stdlib ``html.parser`` so malformed markup never
raises. After parsing, the visible text of the page is laid out once: text
runs are whitespace-collapsed, block-level elements force a single separating
space, and every text node and element records its ``[start, end)`` range in
that string. Segmentation and feature extraction work off those offsets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

VOID_TAGS = frozenset({
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link",
    "meta", "param", "source", "track", "wbr",
})
INVISIBLE_TAGS = frozenset({"script", "style", "head", "title", "noscript", "template"})
BREAKING_TAGS = frozenset({
    "address", "article", "aside", "blockquote", "body", "br", "caption", "dd",
    "details", "dialog", "div", "dl", "dt", "fieldset", "figcaption", "figure",
    "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "header", "hr",
    "html", "li", "main", "nav", "ol", "p", "pre", "section", "summary",
    "table", "tbody", "td", "tfoot", "th", "thead", "tr", "ul",
})
HEADING_TAGS = {f"h{i}": i for i in range(1, 7)}
# an open tag of the key's kind is implicitly closed by a new start tag of the same kind
_SELF_CLOSING_SIBLINGS = frozenset({"p", "li", "dt", "dd", "option", "tr", "td", "th"})

_WS = re.compile(r"\s+")


@dataclass(eq=False)
class Node:
    parent: "Element | None" = field(default=None, repr=False)
    visible: bool = True
    start: int | None = None
    end: int | None = None


@dataclass(eq=False)
class Text(Node):
    data: str = ""


@dataclass(eq=False)
class Comment(Node):
    data: str = ""
    visible: bool = False


@dataclass(eq=False)
class Element(Node):
    tag: str = ""
    attrs: dict[str, str] = field(default_factory=dict)
    children: list[Node] = field(default_factory=list, repr=False)
    # offset into the visible text at which this element opens
    pos: int = 0

    def iter(self):
        """Depth-first pre-order walk including ``self``."""
        yield self
        for child in self.children:
            if isinstance(child, Element):
                yield from child.iter()
            else:
                yield child

    def find_all(self, *tags: str) -> list["Element"]:
        return [n for n in self.iter() if isinstance(n, Element) and n.tag in tags]

    def text_content(self, visible_only: bool = True) -> str:
        parts = [n.data for n in self.iter()
                 if isinstance(n, Text) and (n.visible or not visible_only)]
        return _WS.sub(" ", " ".join(parts)).strip()


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Element(tag="#document")
        self.stack = [self.root]

    @property
    def current(self) -> Element:
        return self.stack[-1]

    def _append(self, node: Node) -> None:
        node.parent = self.current
        self.current.children.append(node)

    def handle_starttag(self, tag, attrs):
        if tag in _SELF_CLOSING_SIBLINGS and self.current.tag == tag:
            self.stack.pop()
        el = Element(tag=tag, attrs={k: (v or "") for k, v in attrs})
        self._append(el)
        if tag not in VOID_TAGS:
            self.stack.append(el)

    def handle_startendtag(self, tag, attrs):
        self._append(Element(tag=tag, attrs={k: (v or "") for k, v in attrs}))

    def handle_endtag(self, tag):
        for depth in range(len(self.stack) - 1, 0, -1):
            if self.stack[depth].tag == tag:
                del self.stack[depth:]
                return
        # stray end tag: ignored

    def handle_data(self, data):
        self._append(Text(data=data))

    def handle_comment(self, data):
        self._append(Comment(data=data))


class _Layout:
    """Accumulates collapsed visible text and stamps offsets onto nodes."""

    def __init__(self):
        self.parts: list[str] = []
        self.length = 0
        self.pending_space = False

    def text(self, node: Text) -> None:
        chunk = _WS.sub(" ", node.data)
        if chunk.startswith(" "):
            self.pending_space = True
            chunk = chunk[1:]
        trailing = chunk.endswith(" ")
        if trailing:
            chunk = chunk[:-1]
        if chunk:
            if self.pending_space and self.length:
                self.parts.append(" ")
                self.length += 1
            self.pending_space = False
            node.start = self.length
            self.parts.append(chunk)
            self.length += len(chunk)
            node.end = self.length
        if trailing:
            self.pending_space = True

    def walk(self, node: Node) -> None:
        if isinstance(node, Text):
            if node.visible:
                self.text(node)
            return
        if not isinstance(node, Element) or not node.visible:
            return
        breaking = node.tag in BREAKING_TAGS
        if breaking:
            self.pending_space = True
        node.pos = self.length
        starts, ends = [], []
        for child in node.children:
            self.walk(child)
            if child.start is not None:
                starts.append(child.start)
                ends.append(child.end)
        if starts:
            node.start, node.end = min(starts), max(ends)
        if breaking:
            self.pending_space = True


def _mark_visibility(node: Element, visible: bool = True) -> None:
    node.visible = visible and node.tag not in INVISIBLE_TAGS
    for child in node.children:
        if isinstance(child, Element):
            _mark_visibility(child, node.visible)
        elif isinstance(child, Text):
            child.visible = node.visible


@dataclass
class ParsedPage:
    root: Element
    visible_text: str
    title: str


def parse_html(raw: bytes | str) -> ParsedPage:
    """Parse ``raw`` leniently and lay out its visible text.

    Never raises on bad markup: if the parser itself gives up, the whole
    input becomes a single text node.
    """
    source = raw.decode("utf-8", errors="replace") if isinstance(raw, (bytes, bytearray)) else raw
    builder = _TreeBuilder()
    try:
        builder.feed(source)
        builder.close()
        root = builder.root
    except Exception:  # pragma: no cover - html.parser is already very forgiving
        root = Element(tag="#document")
        root.children.append(Text(parent=root, data=source))
    _mark_visibility(root)
    layout = _Layout()
    layout.walk(root)
    titles = [el.text_content(visible_only=False) for el in root.find_all("title")]
    title = " ".join(t for t in titles if t)
    return ParsedPage(root, "".join(layout.parts), title)
