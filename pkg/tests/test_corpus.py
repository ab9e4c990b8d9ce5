import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctxcat.corpus import (
    CorpusRootNotFound,
    Document,
    EmptyContextError,
    TokenConfig,
    TransactionDatabase,
    build_cluster_transactions,
    build_transactions,
    load_labeled_corpus,
    load_stopwords,
    parse_stopwords,
    preprocess,
    segment_sentences,
    tokenize,
)


def _doc(doc_id, sentences):
    return Document(doc_id, "", tuple(tuple(s) for s in sentences))


class TestSegmentSentences:
    def test_two_sentences(self):
        assert segment_sentences("The bow broke. He won.") == ["The bow broke", "He won"]

    def test_empty(self):
        assert segment_sentences("") == []

    def test_unterminated(self):
        assert segment_sentences("No terminator here") == ["No terminator here"]

    def test_runs_of_terminators(self):
        assert segment_sentences("Really?! Yes... ok") == ["Really", "Yes", "ok"]

    @given(st.text())
    def test_matches_split_oracle(self, text):
        oracle = [p.strip() for p in re.split(r"[.!?]+", text) if p.strip()]
        assert segment_sentences(text) == oracle

    @given(st.text())
    def test_covers_non_delimiter_text(self, text):
        kept = "".join(segment_sentences(text))
        expected = "".join(c for c in text if c not in ".!?" and not c.isspace())
        assert "".join(c for c in kept if not c.isspace()) == expected


class TestTokenize:
    def test_stopword_and_case(self):
        assert tokenize("The Bow broke!") == ["bow", "broke"]

    def test_all_stopwords(self):
        assert tokenize("a an the") == []

    def test_punctuation_boundaries(self):
        assert tokenize("Castling, king-side") == ["castling", "king", "side"]

    def test_min_length(self):
        assert tokenize("x yy zzz", TokenConfig(min_length=3, stopwords=frozenset())) == ["zzz"]

    def test_underscore_is_boundary(self):
        assert tokenize("snake_case", TokenConfig(stopwords=frozenset())) == ["snake", "case"]

    @given(st.text())
    def test_token_shape(self, s):
        for tok in tokenize(s):
            assert tok and tok == tok.lower()
            assert not any(c.isspace() for c in tok)
            assert len(tok) >= 2

    @given(st.text())
    def test_idempotent(self, s):
        once = tokenize(s)
        assert tokenize(" ".join(once)) == once


def test_stopword_file_parsing(tmp_path):
    path = tmp_path / "stop.txt"
    path.write_text("# comment\nFoo\n\nbar\n", encoding="utf-8")
    assert load_stopwords(path) == frozenset({"foo", "bar"})
    assert parse_stopwords("#x\n") == frozenset()


def test_bundled_stopwords_nonempty():
    words = load_stopwords()
    assert {"the", "an", "a", "of"} <= words
    assert all(w == w.lower() for w in words)


class TestBuildTransactions:
    def test_dedup_within_sentence(self):
        db = build_transactions(_doc("d", [["bow", "arrow", "bow"], ["arrow"]]))
        assert len(db) == 2
        assert db.vocabulary_size == 2
        assert [db.terms_of(sorted(t)) for t in db.transactions] == [("bow", "arrow"), ("arrow",)]

    def test_empty(self):
        assert len(build_transactions(_doc("d", []))) == 0

    def test_multiset_semantics(self):
        db = build_transactions(_doc("d", [["a"], ["a"], ["a"]]))
        assert len(db) == 3
        assert set(db.transactions) == {frozenset({0})}

    def test_empty_sentences_dropped(self):
        db = build_transactions(_doc("d", [[], ["x"], []]))
        assert len(db) == 1

    def test_requires_preprocessing(self):
        with pytest.raises(ValueError):
            build_transactions(Document("d", "raw text"))

    def test_first_appearance_ids(self):
        db = TransactionDatabase([["b", "a"], ["c", "a"]])
        assert db.terms == ("b", "a", "c")

    @given(st.lists(st.lists(st.sampled_from("abcdefg"), max_size=6), max_size=10))
    def test_invariants(self, sentences):
        db = TransactionDatabase(sentences)
        assert sorted(db.item(t) for t in db.terms) == list(range(db.vocabulary_size))
        used = set().union(*db.transactions) if db.transactions else set()
        assert used == set(range(db.vocabulary_size))
        assert all(t for t in db.transactions)
        again = TransactionDatabase(sentences)
        assert again.terms == db.terms and again.transactions == db.transactions


class TestClusterTransactions:
    def test_count_additivity(self):
        d1 = _doc("d1", [["a"], ["b"], ["c"]])
        d2 = _doc("d2", [["a"], ["d"]])
        assert len(build_cluster_transactions([d1, d2])) == 5

    def test_shared_vocabulary(self):
        d1 = _doc("d1", [["score", "goal"]])
        d2 = _doc("d2", [["score", "wicket"]])
        db = build_cluster_transactions([d1, d2])
        assert db.terms.count("score") == 1
        assert db.vocabulary_size == 3

    def test_empty(self):
        assert len(build_cluster_transactions([])) == 0

    def test_order(self):
        d1 = _doc("d1", [["x"], ["y"]])
        d2 = _doc("d2", [["z"]])
        db = build_cluster_transactions([d1, d2])
        assert [db.terms_of(t) for t in db.transactions] == [("x",), ("y",), ("z",)]


def test_preprocess_fills_sentences():
    doc = preprocess(Document("d", "The bow broke. Arrow flew!"))
    assert doc.sentences == (("bow", "broke"), ("arrow", "flew"))


class TestLoadCorpus:
    def test_layout(self, tmp_path):
        for rel in ("chess/a.txt", "chess/b.txt", "golf/c.txt"):
            (tmp_path / rel).parent.mkdir(exist_ok=True)
            (tmp_path / rel).write_text("text.", encoding="utf-8")
        corpus = load_labeled_corpus(tmp_path)
        assert corpus.contexts == ("chess", "golf")
        assert [d.id for d, _ in corpus.documents] == ["chess/a.txt", "chess/b.txt", "golf/c.txt"]
        assert [label for _, label in corpus.documents] == ["chess", "chess", "golf"]

    def test_empty_context(self, tmp_path):
        (tmp_path / "archery").mkdir()
        (tmp_path / "chess").mkdir()
        (tmp_path / "chess" / "a.txt").write_text("x", encoding="utf-8")
        with pytest.raises(EmptyContextError, match="empty context: archery"):
            load_labeled_corpus(tmp_path)

    def test_missing_root(self, tmp_path):
        with pytest.raises(CorpusRootNotFound, match="corpus root not found"):
            load_labeled_corpus(tmp_path / "nope")

    def test_unreadable_file(self, tmp_path):
        (tmp_path / "c").mkdir()
        (tmp_path / "c" / "bad.txt").write_bytes(b"\xff\xfe\xfa")
        with pytest.raises(Exception, match="bad.txt"):
            load_labeled_corpus(tmp_path)
