import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netext.corpus import (
    Corpus, CorpusError, Document, corpus_stats, dump_csv, dump_jsonl, load_corpus, save_corpus,
)

from conftest import FIXTURES


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_empty_file(tmp_path):
    corpus = load_corpus(write(tmp_path, "empty.jsonl", ""))
    assert len(corpus) == 0


def test_three_records_keep_order(tmp_path):
    lines = [json.dumps({"id": i, "text": f"teks {i}"}) for i in "abc"]
    corpus = load_corpus(write(tmp_path, "c.jsonl", "\n".join(lines) + "\n"))
    assert [d.id for d in corpus.documents] == ["a", "b", "c"]
    assert corpus.documents[0].source == "generic"
    assert corpus.documents[0].timestamp is None


def test_shipped_fixture_has_2000_documents():
    # 2000 was checked with an independent line count of the file
    corpus = load_corpus(FIXTURES / "synthetic_2000.jsonl")
    assert len(corpus) == 2000
    assert corpus.name == "synthetic_2000"


def test_synthetic_ids_use_line_numbers(tmp_path):
    text = '{"text": "satu"}\n\n{"id": "x", "text": "dua"}\n{"text": "tiga"}\n'
    corpus = load_corpus(write(tmp_path, "c.jsonl", text))
    assert [d.id for d in corpus.documents] == ["rec-1", "x", "rec-4"]


def test_missing_text_names_line_and_field(tmp_path):
    text = '{"id": "a", "text": "ok"}\n{"id": "b"}\n'
    with pytest.raises(CorpusError, match=r"line 2.*'text'"):
        load_corpus(write(tmp_path, "c.jsonl", text))


def test_malformed_json_names_line(tmp_path):
    with pytest.raises(CorpusError, match="line 2"):
        load_corpus(write(tmp_path, "c.jsonl", '{"text": "a"}\n{"text": \n'))


def test_duplicate_id_is_named(tmp_path):
    text = '{"id": "dup", "text": "a"}\n{"id": "dup", "text": "b"}\n'
    with pytest.raises(CorpusError, match="'dup'"):
        load_corpus(write(tmp_path, "c.jsonl", text))


def test_unknown_source_rejected(tmp_path):
    with pytest.raises(CorpusError, match="source"):
        load_corpus(write(tmp_path, "c.jsonl", '{"text": "a", "source": "myspace"}\n'))


def test_unreadable_file_is_io_error(tmp_path):
    with pytest.raises(OSError):
        load_corpus(tmp_path / "missing.jsonl")


def test_csv_load(tmp_path):
    text = 'id,text,source,timestamp\n1,"pesanan, sampai",twitter-like,2017-01-01T00:00:00Z\n,dana belum,,\n'
    corpus = load_corpus(write(tmp_path, "c.csv", text), "csv")
    assert corpus.documents[0] == Document("1", "pesanan, sampai", "twitter-like", "2017-01-01T00:00:00Z")
    assert corpus.documents[1] == Document("rec-3", "dana belum", "generic", None)


def test_csv_requires_header(tmp_path):
    with pytest.raises(CorpusError, match="header"):
        load_corpus(write(tmp_path, "c.csv", "text,id\nx,1\n"), "csv")


def test_stats_empty_and_single():
    assert corpus_stats(Corpus()).count == 0
    assert corpus_stats(Corpus()).mean_length == 0
    s = corpus_stats(Corpus((Document("a", "ab"),)))
    assert (s.count, s.mean_length) == (1, 2)


def test_stats_counts_unicode_characters():
    corpus = Corpus((Document("a", "\U0001F621ab", "twitter-like"), Document("b", "x", "facebook-like")))
    s = corpus_stats(corpus)
    assert s.mean_length == 2
    assert s.per_source == {"facebook-like": 1, "twitter-like": 1}


# NUL cannot travel through the csv module
texts = st.text(alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"), max_size=40)
records = st.lists(
    st.tuples(texts, st.sampled_from(["twitter-like", "facebook-like", "generic"]),
              st.one_of(st.none(), st.just("2017-05-01T10:00:00Z"))),
    max_size=15,
)


@settings(max_examples=60, deadline=None)
@given(records)
def test_round_trip_jsonl_and_csv(tmp_path_factory, recs):
    tmp = tmp_path_factory.mktemp("rt")
    corpus = Corpus(tuple(Document(f"d{i}", t, s, ts) for i, (t, s, ts) in enumerate(recs)), "rt")
    for fmt in ("jsonl", "csv"):
        path = tmp / f"c.{fmt}"
        save_corpus(corpus, path, fmt)
        again = load_corpus(path, fmt, name="rt")
        assert again == corpus
        save_corpus(again, path, fmt)
        assert load_corpus(path, fmt, name="rt") == corpus
        assert corpus_stats(again).count == len(again.documents)


def test_jsonl_text_with_unicode_line_separators(tmp_path):
    corpus = Corpus((Document("a", "satu\u2028dua\x85tiga\x1c"),), "u")
    save_corpus(corpus, tmp_path / "u.jsonl")
    assert load_corpus(tmp_path / "u.jsonl") == corpus


def test_dumps_are_deterministic():
    corpus = load_corpus(FIXTURES / "two_topic.jsonl")
    assert dump_jsonl(corpus) == dump_jsonl(corpus)
    assert dump_csv(corpus).startswith("id,text,source,timestamp\r\n")
