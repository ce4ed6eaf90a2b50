import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfse.errors import ArgumentError, FormatError, IngestError
from qfse.textproc import (
    EmbeddingStore,
    build_corpus,
    embed_tokens,
    load_embeddings,
    load_topic,
    sentence_embedding,
    split_sentences,
    stopwords,
    tokenize,
    word_frequency,
)


class TestSplitSentences:
    def test_terminal_punctuation(self):
        assert split_sentences("A. B? C!") == ["A.", "B?", "C!"]

    def test_abbreviation_guard(self):
        out = split_sentences("Dr. Smith left. He returned.")
        assert out == ["Dr. Smith left.", "He returned."]

    def test_empty(self):
        assert split_sentences("") == []

    def test_quote_and_ellipsis(self):
        out = split_sentences('He said "stop." Then he left!')
        assert out == ['He said "stop."', "Then he left!"]

    def test_no_empty_outputs(self):
        assert all(s for s in split_sentences("One. Two.  Three."))

    @given(st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126),
                   max_size=200))
    def test_lossless_modulo_whitespace(self, raw):
        joined = "".join(split_sentences(raw))
        assert "".join(joined.split()) == "".join(raw.split())


class TestTokenize:
    def test_keeps_stopwords_by_default(self):
        assert tokenize("The cat sat.") == ["the", "cat", "sat"]

    def test_drops_stopwords(self):
        assert tokenize("The cat sat.", drop_stopwords=True) == ["cat", "sat"]

    def test_possessive_stripped(self):
        assert tokenize("El Niño's effect", drop_stopwords=True) == [
            "el",
            "niño",
            "effect",
        ]

    def test_idempotent_for_alphabetic_tokens(self):
        tokens = tokenize("Heavy rain hit the coastal towns")
        assert tokenize(" ".join(tokens)) == tokens

    @given(st.lists(st.text(alphabet="abcdefghij", min_size=1, max_size=8),
                    min_size=1, max_size=12))
    def test_idempotence_property(self, tokens):
        once = tokenize(" ".join(tokens))
        assert tokenize(" ".join(once)) == once


class TestStopwords:
    def test_is_frozen_and_lowercase(self):
        sw = stopwords()
        assert isinstance(sw, frozenset)
        assert all(w == w.lower() for w in sw)
        assert "the" in sw and "of" in sw


class TestCorpus:
    def test_counts_preserved(self, tmp_path):
        topic = tmp_path / "t1"
        docs = topic / "docs"
        refs = topic / "refs"
        docs.mkdir(parents=True)
        refs.mkdir()
        (docs / "a.txt").write_text("First point. Second point.")
        (docs / "b.txt").write_text("Third point here.")
        for i in range(4):
            (refs / f"r{i}.txt").write_text(f"Reference {i} text.")
        corpus = load_topic(topic)
        assert len(corpus.documents) == 2
        assert len(corpus.references) == 4
        assert corpus.topic_id == "t1"

    def test_empty_refs_flags_eval_unusable(self, tmp_path):
        topic = tmp_path / "t2"
        (topic / "docs").mkdir(parents=True)
        (topic / "refs").mkdir()
        (topic / "docs" / "a.txt").write_text("Only document.")
        corpus = load_topic(topic)
        assert corpus.references == []
        assert not corpus.eval_usable

    def test_missing_docs_dir(self, tmp_path):
        topic = tmp_path / "t3"
        topic.mkdir()
        with pytest.raises(IngestError):
            load_topic(topic)

    def test_json_corpus_sentence_indices(self, tmp_path):
        payload = {
            "topic_id": "j1",
            "documents": [
                {"doc_id": "d", "text": "One here. Two here. Three here."}
            ],
            "references": ["Some reference."],
        }
        path = tmp_path / "j1.json"
        path.write_text(json.dumps(payload))
        corpus = load_topic(path)
        assert [s.index for s in corpus.documents[0].sentences] == [0, 1, 2]

    def test_scus_loaded(self, tmp_path):
        topic = tmp_path / "t4"
        (topic / "docs").mkdir(parents=True)
        (topic / "refs").mkdir()
        (topic / "docs" / "a.txt").write_text("A sentence here.")
        (topic / "refs" / "r.txt").write_text("Ref text.")
        (topic / "scus.json").write_text('["unit one", "unit two"]')
        corpus = load_topic(topic)
        assert corpus.scus == ("unit one", "unit two")

    def test_sentence_keys_unique(self, tiny_corpus):
        keys = [s.key for s in tiny_corpus.sentences()]
        assert len(keys) == len(set(keys))

    def test_documents_sorted_by_doc_id(self):
        corpus = build_corpus(
            "x", [("b", "B text."), ("a", "A text.")], ["ref."]
        )
        assert [d.doc_id for d in corpus.documents] == ["a", "b"]

    def test_requires_topic_id_and_documents(self):
        with pytest.raises(ArgumentError):
            build_corpus("", [("a", "Text.")], [])
        with pytest.raises(ArgumentError):
            build_corpus("t", [], [])


class TestEmbeddings:
    def test_load_two_line_file(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("cat 1.0 0.0 0.5\ndog 0.0 1.0 0.5\n")
        store = load_embeddings(path)
        assert store.dim == 3
        assert store.get("cat") is not None
        np.testing.assert_allclose(store.get("dog"), [0.0, 1.0, 0.5])

    def test_absent_token_is_none(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("cat 1.0 0.0\n")
        store = load_embeddings(path)
        assert store.get("zebra") is None

    def test_lookup_lowercases(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("cat 1.0 0.0\n")
        store = load_embeddings(path)
        assert store.get("CAT") is not None

    def test_inconsistent_dim_reports_line(self, tmp_path):
        path = tmp_path / "emb.txt"
        lines = [f"tok{i} 1.0 2.0" for i in range(4)] + ["bad 1.0 2.0 3.0"]
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(FormatError) as err:
            load_embeddings(path)
        assert err.value.line == 5

    def test_malformed_value_reports_line(self, tmp_path):
        path = tmp_path / "emb.txt"
        path.write_text("ok 1.0 2.0\nbad 1.0 oops\n")
        with pytest.raises(FormatError) as err:
            load_embeddings(path)
        assert err.value.line == 2

    def test_save_load_round_trip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(7)
        vectors = {f"w{i}": rng.normal(size=5) for i in range(20)}
        store = EmbeddingStore(vectors, 5)
        path = tmp_path / "emb.txt"
        store.save(path)
        loaded = load_embeddings(path)
        assert loaded.dim == 5
        for tok, vec in vectors.items():
            assert np.array_equal(loaded.get(tok), vec)


class TestSentenceEmbedding:
    def _store(self):
        return EmbeddingStore(
            {"a": np.array([1.0, 0.0]), "b": np.array([0.0, 1.0]),
             "c": np.array([2.0, 2.0])},
            2,
        )

    def test_mean(self):
        vec, oov = embed_tokens(["a", "b"], self._store())
        np.testing.assert_allclose(vec, [0.5, 0.5])
        assert not oov

    def test_all_oov(self):
        vec, oov = embed_tokens(["zzz", "yyy"], self._store())
        assert oov
        np.testing.assert_allclose(vec, [0.0, 0.0])

    def test_oov_skipped(self):
        vec, oov = embed_tokens(["c", "zzz"], self._store())
        np.testing.assert_allclose(vec, [2.0, 2.0])
        assert not oov

    def test_permutation_invariant(self):
        v1, _ = embed_tokens(["a", "b", "c"], self._store())
        v2, _ = embed_tokens(["c", "a", "b"], self._store())
        np.testing.assert_allclose(v1, v2)

    def test_sentence_wrapper(self, tiny_corpus, tiny_store):
        sent = tiny_corpus.sentences()[0]
        vec, oov = sentence_embedding(sent, tiny_store)
        expected, _ = embed_tokens(list(sent.tokens), tiny_store)
        np.testing.assert_allclose(vec, expected)
        assert not oov


class TestWordFrequency:
    def test_simple_counts(self):
        corpus = build_corpus("t", [("d", "alpha alpha beta.")], ["r."])
        freq = word_frequency(corpus)
        assert freq["alpha"] == 2 and freq["beta"] == 1

    def test_drop_stopwords(self):
        corpus = build_corpus("t", [("d", "the alpha the beta.")], ["r."])
        freq = word_frequency(corpus, drop_stopwords=True)
        assert "the" not in freq
        assert freq["alpha"] == 1

    def test_matches_brute_force_recount(self, tiny_corpus):
        freq = word_frequency(tiny_corpus)
        recount: dict[str, int] = {}
        for doc in tiny_corpus.documents:
            for sent in doc.sentences:
                for tok in sent.tokens:
                    recount[tok] = recount.get(tok, 0) + 1
        assert freq == recount
