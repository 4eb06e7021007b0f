"""Seeded generator for a boilerplate-heavy test corpus.

Every page carries a navigation bar whose links mention topic terms ahead of
the article, an article block about one topic, and a link-heavy footer. A
fraction of pages use a generic navigation bar instead, so the first query
match sits inside the article for those.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

from .document import Document
from .evaluation import SessionSpec

TOPICS = [
    ("solar", "panel"), ("river", "kayak"), ("violin", "tuning"), ("glacier", "retreat"),
    ("bakery", "sourdough"), ("chess", "opening"), ("volcano", "eruption"), ("orchid", "greenhouse"),
    ("telescope", "mirror"), ("marathon", "training"), ("beekeeping", "hive"), ("origami", "crane"),
    ("lighthouse", "keeper"), ("falcon", "migration"), ("pottery", "kiln"),
]
FILLER = (
    "local residents described the project as careful and patient work that "
    "brought practical results over several seasons while experts reviewed "
    "notes measurements records photographs plans budgets and long term goals "
    "with community groups volunteers students teachers families visitors"
).split()
GENERIC_LINKS = ["Home", "Latest", "Opinion", "Archive", "Weather", "Sport", "Culture", "Contact"]
FOOTER_LINKS = ["About us", "Contact", "Privacy policy", "Terms of use", "Advertise", "Careers"]
MONTHS = ["January", "February", "March", "April", "May", "June", "July",
          "August", "September", "October", "November", "December"]


@dataclass(frozen=True)
class SyntheticCorpus:
    documents: list[Document]
    sessions: list[SessionSpec]

    def write(self, directory: str | Path) -> Path:
        """Write ``<id>.html`` + ``<id>.meta`` files and ``sessions.json``."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for doc in self.documents:
            (directory / f"{doc.id}.html").write_bytes(doc.raw_html)
            meta = {"url": doc.url, "fetch_date": doc.fetch_date.isoformat()}
            (directory / f"{doc.id}.meta").write_text(json.dumps(meta, sort_keys=True) + "\n", encoding="utf-8")
        sessions = [{"id": s.session_id, "query": s.query} for s in self.sessions]
        (directory / "sessions.json").write_text(json.dumps(sessions, indent=2) + "\n", encoding="utf-8")
        return directory


def _sentence(rng: random.Random, words: int) -> str:
    body = " ".join(rng.choice(FILLER) for _ in range(words))
    return body[0].upper() + body[1:] + "."


def _page(rng: random.Random, topic: int, fetch: date, topical_nav: bool) -> str:
    a, b = TOPICS[topic]
    if topical_nav:
        others = rng.sample([t for i, t in enumerate(TOPICS) if i != topic], 3)
        labels = ["Home", f"{a.title()} news", f"{b.title()} guides"] + [f"{x.title()} {y}" for x, y in others]
    else:
        labels = rng.sample(GENERIC_LINKS, 5)
    nav = " ".join(f'<a href="/{i}">{label}</a>' for i, label in enumerate(labels))
    published = fetch - timedelta(days=rng.randint(0, 400))
    stamp = f"{MONTHS[published.month - 1]} {published.day}, {published.year}"
    paragraphs = [
        f"Our {a} {b} report opens this issue. {_sentence(rng, 12)}",
        _sentence(rng, 18),
        f"{_sentence(rng, 10)} The {b} of every {a} matters here. {_sentence(rng, 8)}",
        _sentence(rng, 16),
    ]
    body = "".join(f"<p>{p}</p>" for p in paragraphs)
    footer = " | ".join(f'<a href="/f{i}">{label}</a>' for i, label in enumerate(FOOTER_LINKS))
    figure = f'<figure><img src="/img/{a}.jpg" alt="{a} photo"></figure>' if rng.random() < 0.5 else ""
    return (
        f"<!DOCTYPE html><html><head><title>{a.title()} {b} | Example Media</title>"
        f"<script>track('{a}');</script></head><body>"
        f"<nav>{nav}</nav>"
        f"<article><h2>{a.title()} and {b}: a closer look</h2><p>Published {stamp}</p>{body}{figure}</article>"
        f"<footer>{footer} <span>(c) Example Media</span></footer>"
        f"</body></html>"
    )


def generate(n_pages: int = 120, n_sessions: int = 15, seed: int = 0,
             generic_nav_share: float = 0.2) -> SyntheticCorpus:
    if not 1 <= n_sessions <= len(TOPICS):
        raise ValueError(f"n_sessions must lie in [1, {len(TOPICS)}]")
    rng = random.Random(seed)
    base = date(2011, 3, 1)
    docs = []
    for i in range(n_pages):
        topic = i % n_sessions
        fetch = base + timedelta(days=rng.randint(0, 60))
        html = _page(rng, topic, fetch, rng.random() >= generic_nav_share)
        doc_id = f"p{i:04d}"
        docs.append(Document(doc_id, html.encode("utf-8"), f"https://example.org/{doc_id}", fetch))
    sessions = [SessionSpec(str(k + 1), " ".join(TOPICS[k])) for k in range(n_sessions)]
    return SyntheticCorpus(docs, sessions)
