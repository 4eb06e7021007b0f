"""Command-line front end.

    snipforge ingest <dir>        record a corpus directory in the workspace
    snipforge index               build the inverted index for the ingested corpus
    snipforge search <query>      top-mu results with snippets
    snipforge snippet <id> <q>    snippet for a single document
    snipforge eval --sessions f   simple vs semantic judgeability report
    snipforge config-dump         effective configuration as JSON

Exit status: 0 on success, 2 for usage/config errors, 3 for data errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from datetime import date
from pathlib import Path

from .config import AppConfig, dump_config, load_config
from .document import Document, read_meta
from .errors import ConfigError, EmptyQueryError, IndexFormatError, SnipforgeError
from .evaluation import emit_report, load_sessions, run_sessions
from .index import InvertedIndex
from .pipeline import MODES, Engine, build_index

log = logging.getLogger("snipforge")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 2, 3
MANIFEST = "corpus.json"
INDEX_FILE = "index.json"


class DataError(SnipforgeError):
    pass


class UsageError(SnipforgeError):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True) + "\n")


def _manifest(workdir: Path) -> dict:
    path = workdir / MANIFEST
    if not path.exists():
        raise DataError(f"no ingested corpus in {workdir}; run `snipforge ingest <dir>` first")
    return json.loads(path.read_text(encoding="utf-8"))


def _documents(workdir: Path) -> list[Document]:
    manifest = _manifest(workdir)
    source = Path(manifest["source"])
    docs = []
    for rec in manifest["documents"]:
        path = source / rec["file"]
        if not path.exists():
            raise DataError(f"corpus file {path} has disappeared; re-run `snipforge ingest`")
        fetch = date.fromisoformat(rec["fetch_date"]) if rec["fetch_date"] else None
        docs.append(Document(rec["id"], path.read_bytes(), rec["url"], fetch))
    return docs


def _engine(workdir: Path, config: AppConfig) -> Engine:
    path = workdir / INDEX_FILE
    if not path.exists():
        raise DataError(f"no index at {path}; run `snipforge ingest <dir>` and then `snipforge index`")
    index = InvertedIndex.load(path)
    return Engine(index, {d.id: d for d in _documents(workdir)}, config)


def cmd_ingest(args, config: AppConfig) -> int:
    source = Path(args.directory).resolve()
    if not source.is_dir():
        raise DataError(f"{source} is not a directory")
    records = []
    for path in sorted(source.glob("*.html"), key=lambda p: p.stem):
        meta = path.with_suffix(".meta")
        url = fetch = None
        if meta.exists():
            try:
                url, fetch = read_meta(meta)
            except (ValueError, json.JSONDecodeError) as exc:
                raise DataError(f"bad sidecar {meta.name}: {exc}") from None
        records.append({
            "id": path.stem,
            "file": path.name,
            "url": url,
            "fetch_date": fetch.isoformat() if fetch else None,
            "sha256": hashlib.sha256(path.read_bytes()).hexdigest(),
        })
    if not records:
        raise DataError(f"no *.html files in {source}")
    args.workdir.mkdir(parents=True, exist_ok=True)
    manifest = {"source": str(source), "documents": records}
    (args.workdir / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"ingested {len(records)} documents from {source}")
    return EXIT_OK


def cmd_index(args, config: AppConfig) -> int:
    docs = _documents(args.workdir)
    index = build_index(docs, config)
    index.save(args.workdir / INDEX_FILE)
    print(f"indexed {index.doc_count} documents, {len(index.postings)} terms")
    return EXIT_OK


def _query(engine: Engine, raw: str):
    query = engine.query(raw)
    if not query.terms:
        raise UsageError(f"query {raw!r} contains no searchable terms")
    return query


def cmd_search(args, config: AppConfig) -> int:
    engine = _engine(args.workdir, config)
    query = _query(engine, args.query)
    items = engine.search(query, mode=args.mode)
    if args.json:
        _emit({"query": args.query, "terms": list(query.terms), "mode": args.mode,
               "mu": config.mu, "results": [item.to_json() for item in items]})
        return EXIT_OK
    if not items:
        print("no results")
    for item in items:
        print(f"{item.rank}. {item.doc_id}  score={item.score:.4f}" + (f"  {item.url}" if item.url else ""))
        print(f"   {item.snippet.rendered}")
    return EXIT_OK


def cmd_snippet(args, config: AppConfig) -> int:
    engine = _engine(args.workdir, config)
    if args.doc_id not in engine.documents:
        raise DataError(f"unknown document id {args.doc_id!r}")
    query = _query(engine, args.query)
    snip = engine.snippet(args.doc_id, query, args.mode)
    if args.json:
        _emit(snip.to_json(args.doc_id))
    else:
        print(snip.rendered)
    return EXIT_OK


def cmd_eval(args, config: AppConfig) -> int:
    engine = _engine(args.workdir, config)
    try:
        sessions = load_sessions(args.sessions, items=config.mu)
    except (OSError, ValueError, KeyError, AttributeError) as exc:
        raise DataError(f"cannot read sessions from {args.sessions}: {exc}") from None
    if not sessions:
        raise DataError("session file lists no sessions")
    report = run_sessions(sessions, engine)
    out = args.out or (args.workdir / "eval")
    emit_report(report, out)
    for s in report.sessions:
        flag = "  (no results)" if s.empty else ""
        print(f"session {s.session_id}: simple={s.simple} semantic={s.semantic} of {s.evaluated}{flag}")
    print(f"mean simple={report.mean_simple:.2f} semantic={report.mean_semantic:.2f}  -> {out}")
    return EXIT_OK


def cmd_config_dump(args, config: AppConfig) -> int:
    _emit(dump_config(config))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snipforge", description="Segment-based semantic snippets for search results.")
    parser.add_argument("--workdir", type=Path, default=Path(".snipforge"),
                        help="workspace holding the corpus manifest and index (default: .snipforge)")
    parser.add_argument("--config", help="JSON config file (default: $SNIPFORGE_CONFIG, else built-in defaults)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="record a directory of *.html (+ .meta) files")
    p.add_argument("directory")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("index", help="build the index for the ingested corpus")
    p.set_defaults(func=cmd_index)

    def snippet_flags(p):
        p.add_argument("--mode", choices=MODES, default="semantic")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--budget", type=int, dest="budget_chars")
        p.add_argument("--top-segments", type=int)
        p.add_argument("--window", type=int, dest="match_window_chars")

    p = sub.add_parser("search", help="search and print snippets")
    p.add_argument("query")
    p.add_argument("--mu", type=int)
    snippet_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("snippet", help="snippet for one document")
    p.add_argument("doc_id")
    p.add_argument("query")
    snippet_flags(p)
    p.set_defaults(func=cmd_snippet)

    p = sub.add_parser("eval", help="compare simple and semantic snippets over query sessions")
    p.add_argument("--sessions", required=True, help='JSON array of {"id": ..., "query": ...}')
    p.add_argument("--out", type=Path, help="output directory (default: <workdir>/eval)")
    p.add_argument("--mu", type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("config-dump", help="print the effective configuration")
    p.set_defaults(func=cmd_config_dump)
    return parser


_OVERRIDES = ("mu", "budget_chars", "top_segments", "match_window_chars")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = load_config(args.config)
        config = config.with_overrides(**{k: getattr(args, k, None) for k in _OVERRIDES})
        return args.func(args, config)
    except (ConfigError, UsageError, EmptyQueryError) as exc:
        print(f"snipforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, IndexFormatError, SnipforgeError) as exc:
        print(f"snipforge: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
