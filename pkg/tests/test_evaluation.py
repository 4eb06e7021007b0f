import json

import pytest

from snipforge.document import Document
from snipforge.errors import OutputError
from snipforge.evaluation import (
    JudgeabilityReport, SessionSpec, emit_report, is_judgeable, load_sessions,
    parse_table1_csv, run_session, run_sessions,
)
from snipforge.pipeline import Engine
from snipforge.segmenter import Segment
from snipforge.snippets import Fragment, Snippet
from snipforge.synthetic import generate
from snipforge.text import Query, Tokenizer

TK = Tokenizer.default()

TABLE1_SIMPLE = [2, 3, 4, 5, 1, 7, 3, 5, 6, 0, 6, 1, 5, 2, 1]
TABLE1_SEMANTIC = [8, 7, 9, 8, 10, 8, 9, 9, 10, 7, 9, 6, 8, 7, 8]


def q(raw):
    return Query.parse(raw, TK)


def whole(segment):
    return Fragment(segment.text, segment.ordinal, 0, len(segment.text))


def test_missing_term_not_judgeable():
    s = Segment(0, (0, 22), "kayak trips for a week")
    snip = Snippet((whole(s),), "semantic")
    assert not is_judgeable(snip, q("kayak river"), [s], tokenizer=TK)


def test_clean_article_judgeable():
    s = Segment(0, (0, 25), "kayak trips on the river")
    snip = Snippet((whole(s),), "semantic")
    assert is_judgeable(snip, q("kayak river"), [s], tokenizer=TK)


def test_provenance_share_seventy_thirty():
    a_text = ("kayak " * 12)[:70]
    b_text = ("river " * 5)[:30]
    a = Segment(0, (0, 70), a_text, anchor_chars=7)   # L = 1 - 7/70 = 0.9
    b = Segment(1, (71, 101), b_text, anchor_chars=24)  # L = 1 - 24/30 = 0.2
    snip = Snippet((whole(a), whole(b)), "semantic")
    # 70 of 100 fragment characters come from the informative segment
    assert is_judgeable(snip, q("kayak river"), [a, b], tokenizer=TK)
    half = Segment(0, (0, 30), a_text[:30], anchor_chars=3)
    snip = Snippet((whole(half), whole(b)), "semantic")
    assert not is_judgeable(snip, q("kayak river"), [half, b], tokenizer=TK)


def test_empty_snippet_not_judgeable():
    assert not is_judgeable(Snippet((), "simple"), q("kayak"), [], tokenizer=TK)


def test_clean_corpus_modes_coincide():
    docs = [Document(f"c{i}", f"<p>Report {i}: the kayak club paddled the river again this week.</p>".encode())
            for i in range(6)]
    engine = Engine.from_documents(docs)
    result, _ = run_session(SessionSpec("1", "kayak river"), engine)
    assert result.evaluated == 6
    assert result.simple == result.semantic == 6


def test_zero_result_session_flagged():
    engine = Engine.from_documents([Document("a", b"<p>kayak</p>")])
    report = run_sessions([SessionSpec("s", "violin")], engine)
    assert (report.sessions[0].simple, report.sessions[0].semantic) == (0, 0)
    assert report.summary()["empty_sessions"] == ["s"]


@pytest.fixture(scope="module")
def synthetic_run():
    corpus = generate(n_pages=120, n_sessions=15, seed=0)
    engine = Engine.from_documents(corpus.documents)
    return engine, run_sessions(corpus.sessions, engine)


def test_synthetic_semantic_dominates_per_page(synthetic_run):
    _, report = synthetic_run
    for rec in report.items:
        assert rec["semantic"]["judgeable"] >= rec["simple"]["judgeable"], rec["doc_id"]
    for s in report.sessions:
        assert s.semantic >= s.simple


def test_counts_recomputed_from_items(synthetic_run, tmp_path):
    _, report = synthetic_run
    emit_report(report, tmp_path)
    per_session = {}
    with open(tmp_path / "items.jsonl") as fh:
        for line in fh:
            rec = json.loads(line)
            row = per_session.setdefault(rec["session"], [0, 0])
            row[0] += rec["simple"]["judgeable"]
            row[1] += rec["semantic"]["judgeable"]
    ids, simple, semantic = parse_table1_csv((tmp_path / "table1.csv").read_text())
    assert [per_session[i] for i in ids] == [list(p) for p in zip(simple, semantic)]


def test_table1_means():
    report = JudgeabilityReport.from_counts(TABLE1_SIMPLE, TABLE1_SEMANTIC)
    assert report.mean_simple == pytest.approx(3.4, abs=1e-9)
    assert report.mean_semantic == pytest.approx(8.2, abs=1e-9)


def test_single_session_means(tmp_path):
    report = JudgeabilityReport.from_counts([2], [8])
    emit_report(report, tmp_path)
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["mean_simple"] == 2.0 and summary["mean_semantic"] == 8.0 and summary["sessions"] == 1


def test_csv_round_trip(tmp_path):
    import random

    rng = random.Random(3)
    simple = [rng.randint(0, 10) for _ in range(15)]
    semantic = [rng.randint(0, 10) for _ in range(15)]
    ids = [f"s{i}" for i in range(15)]
    report = JudgeabilityReport.from_counts(simple, semantic, ids)
    emit_report(report, tmp_path)
    assert parse_table1_csv((tmp_path / "table1.csv").read_text()) == (ids, simple, semantic)


def test_unwritable_output(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OutputError):
        emit_report(JudgeabilityReport.from_counts([1], [2]), blocker / "out")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["file"]


def test_emit_requires_sessions(tmp_path):
    with pytest.raises(ValueError):
        emit_report(JudgeabilityReport(), tmp_path)


def test_load_sessions(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps([{"id": 1, "query": "kayak"}, {"id": "b", "query": "river trip"}]))
    assert load_sessions(path) == [SessionSpec("1", "kayak"), SessionSpec("b", "river trip")]
    path.write_text(json.dumps([{"id": 1, "query": " "}]))
    with pytest.raises(ValueError):
        load_sessions(path)
