import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from snipforge.document import Document
from snipforge.scoring import score_page
from snipforge.segmenter import Segment, segment
from snipforge.snippets import (
    SEPARATOR, SnippetConfig, build_semantic_snippet, build_simple_snippet,
    find_occurrences, match_segment, rank_segments,
)
from snipforge.text import Query, Tokenizer
from tests.htmlgen import WORDS, random_html

TK = Tokenizer.default()


def q(raw):
    return Query.parse(raw, TK)


def seg(text, ordinal=0):
    return Segment(ordinal, (0, len(text)), text)


def check_snippet(snip, segments, budget, allowed=None):
    assert len(snip.rendered) <= budget
    for f in snip.fragments:
        assert segments[f.segment].text[f.start:f.end] == f.text
        assert f.text
        if allowed is not None:
            assert f.segment in allowed


# -- ranking --------------------------------------------------------------

def test_rank_direct():
    assert [o for o, _ in rank_segments([1.0, 3.0, 2.0])] == [1, 2, 0]


def test_rank_ties_by_ordinal():
    assert [o for o, _ in rank_segments([2.0] * 5)] == [0, 1, 2, 3, 4]


def test_rank_matches_stable_sort():
    rng = random.Random(7)
    totals = [rng.choice([0.0, 0.5, 1.25, 2.0, rng.random() * 6]) for _ in range(20)]
    oracle = sorted(range(20), key=lambda i: -totals[i])  # sorted() is stable
    ranked = rank_segments(totals)
    assert [o for o, _ in ranked] == oracle
    assert all(ranked[i][1] >= ranked[i + 1][1] for i in range(19))


# -- matching -------------------------------------------------------------

def test_no_match():
    assert match_segment(seg("no relevant words"), q("snippet"), 40, TK) == []


def test_single_occurrence():
    (w,) = match_segment(seg("snippet construction"), q("snippet"), 20, TK)
    s, e = w.span
    assert "snippet" in "snippet construction"[s:e]
    assert w.matched_terms == {"snippet"}


def brute_force_groups(occ, window):
    """Enumerate every split of the sorted occurrences into contiguous runs, keep
    those whose multi-occurrence runs span <= window, and take the lexicographically largest
    sequence of run sizes (which is what left-to-right greedy grouping yields)."""
    occ = sorted(occ)
    n = len(occ)
    best = None
    for cuts in itertools.product([False, True], repeat=n - 1):
        runs, cur = [], [occ[0]]
        for o, cut in zip(occ[1:], cuts):
            if cut:
                runs.append(cur)
                cur = [o]
            else:
                cur.append(o)
        runs.append(cur)
        if all(len(r) == 1 or max(e for _, e, _ in r) - r[0][0] <= window for r in runs):
            sizes = [len(r) for r in runs]
            if best is None or sizes > best[0]:
                best = (sizes, runs)
    return [((r[0][0], max(e for _, e, _ in r)), frozenset(t for _, _, t in r)) for r in best[1]]


def test_scattered_occurrences_match_oracle():
    text = ("The snippet engine reads every page. Much later in this long paragraph, after plenty "
            "of filler about unrelated matters, a segment appears next to a snippet once more.")
    s = seg(text)
    query = q("snippet segment")
    occ = find_occurrences(text, query, TK)
    assert len(occ) == 3
    windows = match_segment(s, query, 40, TK)
    assert [(w.group, w.matched_terms) for w in windows] == brute_force_groups(occ, 40)
    for w in windows:
        ws, we = w.span
        assert ws <= w.group[0] < w.group[1] <= we
        assert ws == 0 or text[ws - 1] == " "
        assert we == len(text) or text[we] == " "


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(["snippet", "segment", "page", "filler", "x", "longerword"]), min_size=1, max_size=14),
       st.integers(1, 60))
def test_grouping_matches_oracle(words, window):
    text = " ".join(words)
    query = q("snippet segment")
    occ = find_occurrences(text, query, TK)
    windows = match_segment(seg(text), query, window, TK)
    if not occ:
        assert windows == []
        return
    groups = brute_force_groups(occ, window)
    # overlapping windows are merged, so each window covers one or more consecutive groups
    covered = []
    for w in windows:
        inside = [g for g in groups if w.span[0] <= g[0][0] and g[0][1] <= w.span[1]]
        assert inside and w.matched_terms == frozenset().union(*(t for _, t in inside))
        covered.extend(inside)
    assert covered == groups


# -- semantic snippets ----------------------------------------------------

def test_single_source_segment():
    segs = [seg("intro text without terms", 0), seg("the kayak trip on the river was calm", 1)]
    snip = build_semantic_snippet(segs, [1.0, 2.0], q("kayak river"), SnippetConfig(), TK)
    assert {f.segment for f in snip.fragments} == {1}
    assert "kayak" in snip.rendered


def test_fallback_head_when_no_match():
    long = "word " * 60
    segs = [seg("short block", 0), seg(long.strip(), 1)]
    snip = build_semantic_snippet(segs, [0.5, 3.0], q("violin"), SnippetConfig(budget_chars=100), TK)
    assert len(snip.fragments) == 1 and snip.fragments[0].segment == 1
    assert 0 < len(snip.rendered) <= 100
    assert snip.fragments[0].start == 0


def test_matches_outside_top_segments_ignored():
    segs = [seg("kayak " * 5, 0), seg("plain", 1), seg("plain", 2), seg("plain too", 3)]
    snip = build_semantic_snippet(segs, [0.1, 3, 2, 1], q("kayak"), SnippetConfig(top_segments=3), TK)
    assert snip.fragments[0].segment == 1  # fallback head of the best segment


def test_fixture_snippet_avoids_navigation(six_blocks):
    segs = segment(six_blocks)
    scores = score_page(six_blocks, segs, tokenizer=TK)
    ranked = [o for o, _ in rank_segments(scores)]
    # nav (0) and the link list (2) are link-heavy and fall outside the top three
    assert ranked[:3] == [3, 1, 5]
    query = q("search weight")
    semantic = build_semantic_snippet(segs, scores, query, SnippetConfig(), TK)
    assert semantic.fragments and {f.segment for f in semantic.fragments} == {3}
    simple = build_simple_snippet(segs, query, SnippetConfig(), TK)
    assert [f.segment for f in simple.fragments] == [0]
    check_snippet(semantic, segs, 100)
    check_snippet(simple, segs, 100)


def test_budget_respected_with_separator():
    text = " ".join(["kayak"] + ["filler"] * 10 + ["kayak"] + ["filler"] * 10 + ["kayak"])
    segs = [seg(text)]
    snip = build_semantic_snippet(segs, [1.0], q("kayak"), SnippetConfig(budget_chars=60, window_chars=20), TK)
    assert SEPARATOR in snip.rendered
    assert len(snip.rendered) <= 60


def test_oversized_window_is_trimmed():
    text = "kayak " + "superlongwordwithoutanyspaces" * 5 + " end"
    snip = build_semantic_snippet([seg(text)], [1.0], q("kayak"), SnippetConfig(budget_chars=30), TK)
    assert snip.rendered and len(snip.rendered) <= 30
    check_snippet(snip, [seg(text)], 30)


# -- simple snippets ------------------------------------------------------

def test_simple_match_at_start():
    text = "kayak trips along the river are popular with visitors who enjoy calm water and long summer evenings"
    snip = build_simple_snippet([seg(text)], q("kayak"), SnippetConfig(), TK)
    assert snip.fragments[0].start == 0
    assert snip.mode == "simple"


def test_simple_extends_to_budget_without_cutting_words():
    text = " ".join(f"w{i:02d}" for i in range(40)) + " kayak " + " ".join(f"v{i:02d}" for i in range(40))
    snip = build_simple_snippet([seg(text)], q("kayak"), SnippetConfig(budget_chars=50), TK)
    f = snip.fragments[0]
    assert "kayak" in f.text and 40 <= len(f.text) <= 50
    assert text[f.start - 1] == " " and text[f.end] == " "


def test_simple_fallback_head():
    segs = [seg("first block text", 0), seg("second", 1)]
    snip = build_simple_snippet(segs, q("violin"), SnippetConfig(), TK)
    assert snip.rendered == "first block text"


# -- properties over fuzzed pages -----------------------------------------

@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**32 - 1), st.lists(st.sampled_from(WORDS), min_size=1, max_size=3),
       st.integers(20, 160), st.integers(1, 5), st.integers(1, 60))
def test_snippet_contracts_on_fuzzed_pages(seed, qwords, budget, top, window):
    doc = Document("d", random_html(random.Random(seed)))
    segs = segment(doc)
    query = q(" ".join(qwords))
    if not query.terms:
        return
    scores = score_page(doc, segs, tokenizer=TK)
    cfg = SnippetConfig(budget, top, window)
    ranked = [o for o, _ in rank_segments(scores)]
    semantic = build_semantic_snippet(segs, scores, query, cfg, TK)
    simple = build_simple_snippet(segs, query, cfg, TK)
    text_ordinals = [o for o in ranked if segs[o].text]
    allowed = set(ranked[:top]) | set(text_ordinals[:1])
    check_snippet(semantic, segs, budget, allowed)
    check_snippet(simple, segs, budget)
    if text_ordinals:
        assert semantic.rendered and simple.rendered


def test_trim_anchor_near_segment_end():
    # anchor moved past the window start must not push the cut beyond the window
    text = "a" * 30 + " query. 42"
    snip = build_semantic_snippet([seg(text)], [1.0], q("query"), SnippetConfig(20, 1, 41), TK)
    assert snip.rendered == "query. 42"
