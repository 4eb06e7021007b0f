"""Simple-vs-semantic comparison with a deterministic judgeability proxy.

A snippet counts as judge-able when it shows the query terms and most of its
characters come from content blocks rather than link-heavy boilerplate.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import OutputError
from .scoring import SegmentScore, link_informativeness
from .segmenter import Segment
from .snippets import Snippet
from .text import Query, Tokenizer

if TYPE_CHECKING:
    from .pipeline import Engine


@dataclass(frozen=True)
class JudgeConfig:
    term_coverage: float = 1.0
    provenance_share: float = 0.6
    min_link_informativeness: float = 0.5


@dataclass(frozen=True)
class SessionSpec:
    session_id: str
    query: str
    items: int = 10


@dataclass
class SessionResult:
    session_id: str
    query: str
    evaluated: int
    simple: int
    semantic: int

    @property
    def empty(self) -> bool:
        return self.evaluated == 0


@dataclass
class JudgeabilityReport:
    sessions: list[SessionResult] = field(default_factory=list)
    items: list[dict] = field(default_factory=list)

    @property
    def mean_simple(self) -> float:
        return sum(s.simple for s in self.sessions) / len(self.sessions) if self.sessions else 0.0

    @property
    def mean_semantic(self) -> float:
        return sum(s.semantic for s in self.sessions) / len(self.sessions) if self.sessions else 0.0

    @classmethod
    def from_counts(cls, simple: Sequence[int], semantic: Sequence[int],
                    session_ids: Sequence[str] | None = None, evaluated: int = 10) -> "JudgeabilityReport":
        if len(simple) != len(semantic):
            raise ValueError("simple and semantic rows differ in length")
        ids = list(session_ids) if session_ids is not None else [str(i) for i in range(1, len(simple) + 1)]
        return cls([SessionResult(sid, "", evaluated, a, b) for sid, a, b in zip(ids, simple, semantic)])

    def summary(self) -> dict:
        return {
            "mean_simple": self.mean_simple,
            "mean_semantic": self.mean_semantic,
            "sessions": len(self.sessions),
            "empty_sessions": [s.session_id for s in self.sessions if s.empty],
        }


def is_judgeable(snippet: Snippet, query: Query, segments: Sequence[Segment],
                 scores: Sequence[SegmentScore] | None = None,
                 cfg: JudgeConfig | None = None, tokenizer: Tokenizer | None = None) -> bool:
    cfg = cfg or JudgeConfig()
    tokenizer = tokenizer or Tokenizer()
    if not snippet.fragments or not query.terms:
        return False
    shown = set(tokenizer(snippet.rendered))
    covered = sum(1 for t in query.terms if t in shown)
    if covered < cfg.term_coverage * len(query.terms):
        return False
    total = good = 0
    for frag in snippet.fragments:
        link = scores[frag.segment].l if scores is not None else link_informativeness(segments[frag.segment])
        total += len(frag.text)
        if link >= cfg.min_link_informativeness:
            good += len(frag.text)
    return total > 0 and good >= cfg.provenance_share * total


def run_session(spec: SessionSpec, engine: "Engine") -> tuple[SessionResult, list[dict]]:
    """Retrieve top results for the session query and judge both snippet modes per item."""
    query = engine.query(spec.query)
    mu = min(spec.items, engine.config.mu)
    hits = engine.index.retrieve(query, mu) if query.terms else []
    judge = engine.config.judge()
    counts = {"simple": 0, "semantic": 0}
    records = []
    for rank, (doc_id, score) in enumerate(hits, start=1):
        page = engine.analyze(doc_id)
        record = {"session": spec.session_id, "query": spec.query, "rank": rank,
                  "doc_id": doc_id, "score": score}
        for mode in ("simple", "semantic"):
            snip = engine.snippet(doc_id, query, mode)
            ok = is_judgeable(snip, query, page.segments, page.scores, judge, engine.tokenizer)
            counts[mode] += ok
            record[mode] = {"judgeable": ok, **{k: v for k, v in snip.to_json().items() if k not in ("doc_id", "mode")}}
        records.append(record)
    result = SessionResult(spec.session_id, spec.query, len(records), counts["simple"], counts["semantic"])
    return result, records


def run_sessions(specs: Iterable[SessionSpec], engine: "Engine") -> JudgeabilityReport:
    report = JudgeabilityReport()
    for spec in specs:
        result, records = run_session(spec, engine)
        report.sessions.append(result)
        report.items.extend(records)
    return report


def load_sessions(path: str | Path, items: int = 10) -> list[SessionSpec]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, list):
        raise ValueError("session file must hold a JSON array")
    specs = []
    for entry in data:
        if not str(entry.get("query", "")).strip():
            raise ValueError(f"session {entry.get('id')!r} has an empty query")
        specs.append(SessionSpec(str(entry["id"]), entry["query"], items))
    return specs


def table1_csv(report: JudgeabilityReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["session", *[s.session_id for s in report.sessions]])
    writer.writerow(["simple", *[s.simple for s in report.sessions]])
    writer.writerow(["semantic", *[s.semantic for s in report.sessions]])
    return buf.getvalue()


def parse_table1_csv(text: str) -> tuple[list[str], list[int], list[int]]:
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0][1:], [int(v) for v in rows[1][1:]], [int(v) for v in rows[2][1:]]


def emit_report(report: JudgeabilityReport, out_dir: str | Path) -> dict[str, Path]:
    """Write table1.csv, summary.json and items.jsonl into ``out_dir``.

    All content is rendered before anything touches disk; on a write failure
    files already written by this call are removed again.
    """
    if not report.sessions:
        raise ValueError("report has no sessions")
    contents = {
        "table1.csv": table1_csv(report),
        "summary.json": json.dumps(report.summary(), indent=2, sort_keys=True) + "\n",
        "items.jsonl": "".join(json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n" for r in report.items),
    }
    out_dir = Path(out_dir)
    written: list[Path] = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        staged = []
        for name, body in contents.items():
            tmp = out_dir / f".{name}.tmp"
            tmp.write_text(body, encoding="utf-8")
            staged.append((tmp, out_dir / name))
            written.append(tmp)
        for tmp, final in staged:
            os.replace(tmp, final)
            written.append(final)
    except OSError as exc:
        for path in written:
            try:
                path.unlink()
            except OSError:
                pass
        raise OutputError(f"cannot write report to {out_dir}: {exc}") from exc
    return {name: out_dir / name for name in contents}
