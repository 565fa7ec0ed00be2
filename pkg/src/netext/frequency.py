"""Term statistics and dominant-word selection."""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .preprocess import ProcessedDocument


@dataclass(frozen=True)
class TermStats:
    term: str
    doc_freq: int
    total_freq: int


@dataclass(frozen=True)
class DominantWordSet:
    words: tuple[str, ...]
    cap: int

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, term) -> bool:
        return term in self.words


def rank_key(stat: TermStats):
    """Descending doc_freq, ties by ascending term."""
    return (-stat.doc_freq, stat.term)


def term_stats(docs: Iterable[ProcessedDocument]) -> list[TermStats]:
    doc_freq: Counter[str] = Counter()
    total: Counter[str] = Counter()
    for doc in docs:
        total.update(doc.tokens)
        doc_freq.update(set(doc.tokens))
    stats = [TermStats(t, doc_freq[t], total[t]) for t in total]
    stats.sort(key=rank_key)
    return stats


def select_dominant(stats: Sequence[TermStats], cap: int = 200, min_doc_freq: int = 3) -> DominantWordSet:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if min_doc_freq < 1:
        raise ValueError("min_doc_freq must be >= 1")
    eligible = sorted((s for s in stats if s.doc_freq >= min_doc_freq), key=rank_key)
    return DominantWordSet(tuple(s.term for s in eligible[:cap]), cap)


def write_terms_csv(stats: Sequence[TermStats], fh, top_k: int | None = None) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["term", "total_freq", "doc_freq"])
    rows = sorted(stats, key=rank_key)
    if top_k is not None:
        rows = rows[:top_k]
    for s in rows:
        writer.writerow([s.term, s.total_freq, s.doc_freq])


def read_terms_csv(fh) -> list[TermStats]:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header != ["term", "total_freq", "doc_freq"]:
        raise ValueError(f"unexpected terms CSV header {header!r}")
    return [TermStats(row[0], int(row[2]), int(row[1])) for row in reader if row]


def wordcloud_export(stats: Sequence[TermStats], top_k: int, path) -> None:
    """Write the ``top_k`` highest-ranked terms as ``term,total_freq,doc_freq``,
    ready for any word-cloud renderer."""
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_terms_csv(stats, fh, top_k)
