"""Document-level co-occurrence weights between dominant words."""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .frequency import DominantWordSet
from .preprocess import ProcessedDocument


@dataclass(frozen=True)
class WordPair:
    a: str
    b: str
    weight: float

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"self pair {self.a!r}")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def label(self) -> str:
        return f"{self.a}-{self.b}"


def pair_key(pair: WordPair):
    return (-pair.weight, pair.a, pair.b)


def mine_pairs(
    docs: Iterable[ProcessedDocument], dominant: DominantWordSet, min_weight: int = 1
) -> list[WordPair]:
    """Count, for every pair of dominant words, the documents containing both.

    A document counts once per pair however often either word repeats.
    """
    if min_weight < 1:
        raise ValueError("min_weight must be >= 1")
    # index in lexicographic order so (i < j) already means (a < b)
    vocab = sorted(dominant.words)
    index = {w: i for i, w in enumerate(vocab)}
    counts: Counter[tuple[int, int]] = Counter()
    for doc in docs:
        present = sorted({index[t] for t in doc.tokens if t in index})
        if len(present) > 1:
            counts.update(combinations(present, 2))
    pairs = [
        WordPair(vocab[i], vocab[j], w) for (i, j), w in counts.items() if w >= min_weight
    ]
    pairs.sort(key=pair_key)
    return pairs


def top_pairs(pairs: Sequence[WordPair], k: int = 10) -> list[WordPair]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return sorted(pairs, key=pair_key)[:k]


def pair_weight(pairs: Iterable[WordPair], a: str, b: str) -> float:
    """Weight between two words in either argument order, 0 if unpaired."""
    if a > b:
        a, b = b, a
    for p in pairs:
        if p.a == a and p.b == b:
            return p.weight
    return 0


def confidence(pair: WordPair, doc_freq: Mapping[str, int]) -> tuple[float, float]:
    """Rule confidences (a -> b, b -> a) as weight over antecedent doc_freq."""
    return pair.weight / doc_freq[pair.a], pair.weight / doc_freq[pair.b]


PAIRS_HEADER = ["word_a", "word_b", "weight", "confidence_a_to_b", "confidence_b_to_a"]


def write_pairs_csv(pairs: Sequence[WordPair], doc_freq: Mapping[str, int], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(PAIRS_HEADER)
    for p in pairs:
        ab, ba = confidence(p, doc_freq)
        writer.writerow([p.a, p.b, _num(p.weight), f"{ab:.6f}", f"{ba:.6f}"])


def read_pairs_csv(fh) -> list[WordPair]:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None:
        return []
    if header != PAIRS_HEADER:
        raise ValueError(f"unexpected pairs CSV header {header!r}")
    return [WordPair(row[0], row[1], _parse_num(row[2])) for row in reader if row]


def _num(x) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _parse_num(s: str):
    v = float(s)
    return int(v) if v.is_integer() and "." not in s else v
