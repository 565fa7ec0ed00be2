"""Three-step text cleaning for short conversational documents.

1. ``normalize``: lowercase, strip URLs, mentions, hashtag markers, emoji and
   punctuation.
2. ``filter_relevant``: keyword relevance filtering and duplicate removal.
3. ``tokenize``: whitespace split, negation merging, stopword and
   short-token removal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .corpus import Corpus

DEFAULT_NEGATIONS = ("tidak", "belum", "tidak bisa", "belum bisa")

_URL = re.compile(r"(?:https?://|www\.)\S*")
_MENTION = re.compile(r"@\w*")


def read_stopwords(path) -> frozenset[str]:
    """One token per line; blank lines and ``#`` comments are skipped."""
    with open(path, encoding="utf-8") as fh:
        return _parse_stopwords(fh.read())


def default_stopwords() -> frozenset[str]:
    text = resources.files("netext").joinpath("data/stopwords_id.txt").read_text(encoding="utf-8")
    return _parse_stopwords(text)


def _parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(normalize(line))
    return frozenset(words)


@dataclass(frozen=True)
class PreprocessConfig:
    stopwords: frozenset[str] = frozenset()
    relevance_keep: tuple[str, ...] = ()
    relevance_drop: tuple[str, ...] = ()
    negation_particles: tuple[str, ...] = DEFAULT_NEGATIONS
    min_token_length: int = 2

    def __post_init__(self):
        if self.min_token_length < 1:
            raise ValueError("min_token_length must be >= 1")
        object.__setattr__(self, "stopwords", frozenset(self.stopwords))
        object.__setattr__(self, "relevance_keep", tuple(self.relevance_keep))
        object.__setattr__(self, "relevance_drop", tuple(self.relevance_drop))
        object.__setattr__(self, "negation_particles", tuple(self.negation_particles))


@dataclass(frozen=True)
class ProcessedDocument:
    id: str
    tokens: tuple[str, ...] = field(default_factory=tuple)


def normalize(text: str) -> str:
    text = text.lower()
    text = _URL.sub(" ", text)
    text = _MENTION.sub(" ", text)
    # '#' and every other non-alphanumeric falls out here, leaving hashtag words
    text = "".join(ch if ch.isalnum() else " " for ch in text)
    return " ".join(text.split())


def filter_relevant(corpus: Corpus, config: PreprocessConfig) -> Corpus:
    """Keep documents matching a keep pattern (all, if none given) and no
    drop pattern.  Documents whose normalized text is empty are dropped, as
    are exact duplicates of normalized text after their first occurrence.
    """
    keep = [normalize(p) for p in config.relevance_keep]
    keep = [p for p in keep if p]
    drop = [normalize(p) for p in config.relevance_drop]
    drop = [p for p in drop if p]
    seen = set()
    out = []
    for doc in corpus.documents:
        norm = normalize(doc.text)
        if not norm or norm in seen:
            continue
        if keep and not any(p in norm for p in keep):
            continue
        if any(p in norm for p in drop):
            continue
        seen.add(norm)
        out.append(doc)
    return Corpus(tuple(out), corpus.name)


def _particle_table(particles) -> list[tuple[str, ...]]:
    split = {tuple(normalize(p).split()) for p in particles if normalize(p)}
    # longest first; equal lengths in a fixed order so matching is deterministic
    return sorted(split, key=lambda p: (-len(p), -len(" ".join(p)), p))


def tokenize(normalized: str, config: PreprocessConfig) -> list[str]:
    words = normalized.split()
    particles = _particle_table(config.negation_particles)
    merged = []
    i = 0
    n = len(words)
    while i < n:
        for part in particles:
            k = len(part)
            if tuple(words[i:i + k]) == part:
                if i + k < n:
                    merged.append(" ".join(words[i:i + k + 1]))
                # a trailing particle with nothing to negate is dropped
                i += k + 1
                break
        else:
            merged.append(words[i])
            i += 1
    stop = config.stopwords
    minlen = config.min_token_length
    return [t for t in merged if len(t) >= minlen and t not in stop]


def preprocess(corpus: Corpus, config: PreprocessConfig) -> list[ProcessedDocument]:
    kept = filter_relevant(corpus, config)
    return [
        ProcessedDocument(doc.id, tuple(tokenize(normalize(doc.text), config)))
        for doc in kept.documents
    ]


def load_config_stopwords(path: str | Path | None) -> frozenset[str]:
    return default_stopwords() if path is None else read_stopwords(path)
