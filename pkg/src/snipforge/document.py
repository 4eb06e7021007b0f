from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date
from functools import cached_property
from pathlib import Path

from .html import ParsedPage, parse_html


@dataclass
class Document:
    id: str
    raw_html: bytes
    url: str | None = None
    fetch_date: date | None = None

    @cached_property
    def page(self) -> ParsedPage:
        return parse_html(self.raw_html)

    @property
    def visible_text(self) -> str:
        return self.page.visible_text

    @property
    def title(self) -> str:
        return self.page.title


def read_meta(path: Path) -> tuple[str | None, date | None]:
    meta = json.loads(path.read_text(encoding="utf-8"))
    fetch = meta.get("fetch_date")
    return meta.get("url"), date.fromisoformat(fetch) if fetch else None


def load_document(html_path: str | Path) -> Document:
    """Load ``<stem>.html`` plus its optional ``<stem>.meta`` sidecar."""
    html_path = Path(html_path)
    url = fetch = None
    meta_path = html_path.with_suffix(".meta")
    if meta_path.exists():
        url, fetch = read_meta(meta_path)
    return Document(html_path.stem, html_path.read_bytes(), url, fetch)


def load_corpus(directory: str | Path) -> list[Document]:
    """Every ``*.html`` file in ``directory``, sorted by document id."""
    paths = sorted(Path(directory).glob("*.html"), key=lambda p: p.stem)
    return [load_document(p) for p in paths]
