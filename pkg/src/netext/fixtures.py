"""Deterministic synthetic conversational corpora with planted topics.

Vocabulary is Indonesian e-commerce complaint language.  Each document
talks mostly about one topic; a few borrow a phrase from another topic, and
some carry social-media noise (links, mentions, hashtags, emoji) or are
irrelevant promo posts and duplicates for the relevance filter to remove.

Generation uses ``random.Random(seed)`` and only ordered containers, so the
output bytes depend on nothing but the spec.
"""
from __future__ import annotations

import json
import random
from datetime import datetime, timedelta, timezone
from dataclasses import dataclass

from .preprocess import PreprocessConfig, normalize, tokenize


@dataclass(frozen=True)
class Topic:
    name: str
    phrases: tuple[tuple[str, float], ...]
    weight: float = 1.0


DEFAULT_TOPICS = (
    Topic("delivery", (("pengiriman", 5), ("lama", 4), ("kurir", 3), ("paket", 3),
                       ("ekspedisi", 2), ("tidak sesuai", 2), ("estimasi", 2), ("ongkir", 1))),
    Topic("order", (("pesanan", 6), ("sampai", 5), ("tidak sampai", 3), ("tidak kirim", 3),
                    ("batal", 2), ("sepihak", 2), ("belum diterima", 1), ("alamat", 1))),
    Topic("refund", (("dana", 5), ("kembali", 4), ("belum masuk", 3), ("refund", 3),
                     ("transfer", 3), ("saldo", 2), ("rekening", 2), ("potong", 1))),
    Topic("fraud", (("penipu", 4), ("penipuan", 3), ("website", 3), ("bohong", 3),
                    ("penjual", 3), ("palsu", 2), ("tertipu", 2), ("laporkan", 1))),
    Topic("transaction", (("transaksi", 6), ("status", 4), ("resi", 3), ("invalid", 3),
                          ("tidak bisa proses", 2), ("expired", 2), ("verifikasi", 1), ("update", 1))),
    Topic("service", (("admin", 5), ("respon", 4), ("komplain", 4), ("pelayanan", 3),
                      ("buruk", 3), ("tidak respon", 2), ("chat", 2), ("kecewa", 2))),
    Topic("product", (("barang", 6), ("bagus", 4), ("habis", 3), ("murah", 3),
                      ("harga", 3), ("kosong", 2), ("stok", 2), ("kualitas", 1))),
)

TWO_TOPICS = (
    Topic("shipping", (("pengiriman", 1), ("kurir", 1), ("paket", 1), ("ekspedisi", 1), ("ongkir", 1))),
    Topic("payment", (("dana", 1), ("refund", 1), ("saldo", 1), ("rekening", 1), ("transfer", 1))),
)

FILLERS = ("yang", "di", "ke", "sih", "kok", "min", "ya", "udah", "gak", "dong", "nih", "saya", "kak")
PROMO = ("promo", "diskon", "giveaway", "flash", "sale", "voucher", "gratis", "cashback")
NOISE_TAILS = ("!!!", "??", "...", "!", ".", ",")
EMOJI = ("\U0001F621", "\U0001F62D", "\U0001F64F", "\U0001F44D", "\U0001F620")
SOURCES = ("twitter-like", "facebook-like")


@dataclass(frozen=True)
class CorpusGeneratorSpec:
    seed: int = 1
    count: int = 2000
    topics: tuple[Topic, ...] = DEFAULT_TOPICS
    min_phrases: int = 2
    max_phrases: int = 4
    noise_rate: float = 0.35
    cross_topic_rate: float = 0.08
    irrelevant_rate: float = 0.03
    duplicate_rate: float = 0.02
    fillers: tuple[str, ...] = FILLERS
    start: datetime = datetime(2017, 1, 1, tzinfo=timezone.utc)


TWO_TOPIC_SPEC = CorpusGeneratorSpec(
    seed=7, count=300, topics=TWO_TOPICS, cross_topic_rate=0.0, irrelevant_rate=0.0,
    duplicate_rate=0.0, min_phrases=2, max_phrases=3,
)


def _weighted(rng: random.Random, items, weights):
    return rng.choices(items, weights=weights, k=1)[0]


def _pick_phrases(rng: random.Random, topic: Topic, k: int) -> list[str]:
    pool = list(topic.phrases)
    out = []
    for _ in range(min(k, len(pool))):
        phrase = _weighted(rng, pool, [w for _, w in pool])
        pool = [p for p in pool if p != phrase]
        out.append(phrase[0])
    return out


def _timestamp(spec: CorpusGeneratorSpec, rng: random.Random) -> str:
    offset = timedelta(days=rng.randrange(365), seconds=rng.randrange(86400))
    return (spec.start + offset).strftime("%Y-%m-%dT%H:%M:%SZ")


def _decorate(rng: random.Random, spec: CorpusGeneratorSpec, words: list[str], topic: Topic) -> str:
    parts = []
    for w in words:
        if rng.random() < 0.5:
            parts.append(rng.choice(spec.fillers))
        if rng.random() < 0.15:
            w = w.upper() if rng.random() < 0.5 else w.capitalize()
        parts.append(w)
    if rng.random() < spec.noise_rate:
        kind = rng.randrange(4)
        if kind == 0:
            parts.append(f"https://t.co/{rng.getrandbits(32):08x}")
        elif kind == 1:
            parts.insert(0, f"@toko_{rng.randrange(100)}")
        elif kind == 2:
            single = [p for p, _ in topic.phrases if " " not in p]
            if single:
                parts.append("#" + rng.choice(single))
        else:
            parts.append(rng.choice(EMOJI))
    text = " ".join(parts)
    if rng.random() < 0.5:
        text += rng.choice(NOISE_TAILS)
    return text


def generate_documents(spec: CorpusGeneratorSpec) -> list[dict]:
    rng = random.Random(spec.seed)
    topics = list(spec.topics)
    topic_weights = [t.weight for t in topics]
    records: list[dict] = []
    for n in range(spec.count):
        doc_id = f"syn-{n + 1:06d}"
        source = rng.choice(SOURCES)
        stamp = _timestamp(spec, rng)
        roll = rng.random()
        if records and roll < spec.duplicate_rate:
            text = records[rng.randrange(len(records))]["text"]
        elif roll < spec.duplicate_rate + spec.irrelevant_rate:
            words = ["promo"] + rng.sample(PROMO[1:], 2)
            rng.shuffle(words)
            text = _decorate(rng, spec, words, topics[0]) + " " + f"https://promo.example/{n}"
        else:
            topic = _weighted(rng, topics, topic_weights)
            k = rng.randint(spec.min_phrases, spec.max_phrases)
            words = _pick_phrases(rng, topic, k)
            if len(topics) > 1 and rng.random() < spec.cross_topic_rate:
                other = rng.choice([t for t in topics if t is not topic])
                words.insert(rng.randrange(len(words) + 1), _pick_phrases(rng, other, 1)[0])
            text = _decorate(rng, spec, words, topic)
        records.append({"id": doc_id, "text": text, "source": source, "timestamp": stamp})
    return records


def generate_corpus(spec: CorpusGeneratorSpec, path=None) -> str:
    """Render the generator spec as JSONL; also write it to ``path`` when given."""
    text = "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in generate_documents(spec))
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def planted_topics(spec: CorpusGeneratorSpec, config: PreprocessConfig | None = None) -> dict[str, str]:
    """Token -> topic name for every phrase the generator can plant."""
    config = config or PreprocessConfig()
    truth = {}
    for topic in spec.topics:
        for phrase, _ in topic.phrases:
            for tok in tokenize(normalize(phrase), config):
                truth[tok] = topic.name
    return truth


SHIPPED_CONFIG = {
    "relevance_drop": ["promo", "giveaway", "voucher"],
}

