"""Loading and persisting collections of conversational documents.

Input is file based.  ``load_corpus`` is the single entry point a live
connector (Twitter/Facebook crawler, export dump reader, ...) would feed
into; anything that can produce JSONL or CSV records works.
"""
from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

SOURCES = ("twitter-like", "facebook-like", "generic")
CSV_COLUMNS = ("id", "text", "source", "timestamp")


class CorpusError(ValueError):
    """A record could not be turned into a Document."""


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    source: str = "generic"
    timestamp: str | None = None

    def to_record(self) -> dict:
        rec = {"id": self.id, "text": self.text, "source": self.source}
        if self.timestamp is not None:
            rec["timestamp"] = self.timestamp
        return rec


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        seen = set()
        for doc in self.documents:
            if not doc.id:
                raise CorpusError("document id must be non-empty")
            if doc.id in seen:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)


@dataclass(frozen=True)
class CorpusStats:
    count: int
    mean_length: float
    per_source: dict[str, int] = field(default_factory=dict)


def _make_document(rec: dict, lineno: int) -> Document:
    if not isinstance(rec, dict):
        raise CorpusError(f"line {lineno}: record is not an object")
    text = rec.get("text")
    if text is None:
        raise CorpusError(f"line {lineno}: missing required field 'text'")
    if not isinstance(text, str):
        raise CorpusError(f"line {lineno}: field 'text' must be a string")
    doc_id = rec.get("id")
    if doc_id is None or doc_id == "":
        doc_id = f"rec-{lineno}"
    elif not isinstance(doc_id, (str, int)):
        raise CorpusError(f"line {lineno}: field 'id' must be a string")
    source = rec.get("source") or "generic"
    if source not in SOURCES:
        raise CorpusError(f"line {lineno}: field 'source' has unknown value {source!r}")
    timestamp = rec.get("timestamp") or None
    if timestamp is not None and not isinstance(timestamp, str):
        raise CorpusError(f"line {lineno}: field 'timestamp' must be a string")
    return Document(str(doc_id), text, source, timestamp)


def _check_unique(docs: list[Document]) -> None:
    seen = set()
    for doc in docs:
        if doc.id in seen:
            raise CorpusError(f"duplicate document id {doc.id!r}")
        seen.add(doc.id)


def parse_jsonl(lines: Iterable[str]) -> list[Document]:
    docs = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: malformed JSON ({exc.msg})") from None
        docs.append(_make_document(rec, lineno))
    _check_unique(docs)
    return docs


def parse_csv(text: str) -> list[Document]:
    if not text.strip():
        return []
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader)
    if tuple(h.strip() for h in header) != CSV_COLUMNS:
        raise CorpusError(f"line 1: CSV header must be {','.join(CSV_COLUMNS)}")
    docs = []
    for row in reader:
        # line_num counts physical lines, so multi-line quoted text stays addressable
        lineno = reader.line_num
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise CorpusError(f"line {lineno}: expected {len(CSV_COLUMNS)} columns, got {len(row)}")
        docs.append(_make_document(dict(zip(CSV_COLUMNS, row)), lineno))
    _check_unique(docs)
    return docs


def load_corpus(path, format: str = "jsonl", name: str | None = None) -> Corpus:
    """Read a corpus file.

    Records without an ``id`` get ``rec-<line-number>``.  Raises
    ``OSError`` for unreadable files and ``CorpusError`` for bad records
    or duplicate ids.
    """
    path = Path(path)
    if format not in ("jsonl", "csv"):
        raise ValueError(f"unknown corpus format {format!r}")
    with open(path, encoding="utf-8", newline="") as fh:
        raw = fh.read()
    if format == "jsonl":
        # only \n delimits records; json.dumps leaves U+2028 and friends unescaped
        docs = parse_jsonl(raw.split("\n"))
    else:
        docs = parse_csv(raw)
    return Corpus(tuple(docs), name if name is not None else path.stem)


def dump_jsonl(corpus: Corpus) -> str:
    return "".join(
        json.dumps(doc.to_record(), ensure_ascii=False) + "\n" for doc in corpus.documents
    )


def dump_csv(corpus: Corpus) -> str:
    buf = io.StringIO(newline="")
    # CRLF rows (RFC 4180) make the writer quote fields holding a bare \r
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_COLUMNS)
    for doc in corpus.documents:
        writer.writerow([doc.id, doc.text, doc.source, doc.timestamp or ""])
    return buf.getvalue()


def save_corpus(corpus: Corpus, path, format: str = "jsonl") -> None:
    payload = dump_jsonl(corpus) if format == "jsonl" else dump_csv(corpus)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(payload)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    n = len(corpus.documents)
    if n == 0:
        return CorpusStats(0, 0.0, {})
    total = sum(len(doc.text) for doc in corpus.documents)
    per_source = Counter(doc.source for doc in corpus.documents)
    return CorpusStats(n, total / n, dict(sorted(per_source.items())))
