import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qfse.rouge as rk
from qfse.errors import ArgumentError
from qfse.rouge import R1, R2, RL, RSU, RougeVariant, rouge, rouge_text
from qfse.rouge.porter import stem

from .oracles import naive_rouge

TOKENS = st.lists(
    st.sampled_from(list("abcdefghij")), min_size=0, max_size=30
)


class TestVariant:
    def test_parse_aliases(self):
        assert RougeVariant.parse("r1").kind == "R1"
        assert RougeVariant.parse("ROUGE-2").kind == "R2"
        assert RougeVariant.parse("rl").kind == "RL"
        assert RougeVariant.parse("su4").kind == "RSU"
        assert RougeVariant.parse("rsu").su_skip_distance == 4

    def test_parse_rejects_unknown(self):
        with pytest.raises(ArgumentError):
            RougeVariant.parse("rouge-w")

    def test_skip_distance_validated(self):
        with pytest.raises(ArgumentError):
            RougeVariant("RSU", su_skip_distance=0)


class TestRougeExamples:
    def test_identity(self):
        score = rouge(["the", "cat", "sat"], [["the", "cat", "sat"]], R1)
        assert score.precision == score.recall == score.f1 == 1.0

    def test_clipped_counts(self):
        score = rouge(
            ["the", "cat"],
            [["the", "cat", "sat", "on", "the", "mat"]],
            R1,
        )
        assert score.precision == 1.0
        assert score.recall == pytest.approx(2 / 6)
        assert score.f1 == pytest.approx(0.5)

    def test_lcs(self):
        score = rouge(["a", "b", "c", "d"], [["a", "c", "b", "d"]], RL)
        assert score.precision == score.recall == pytest.approx(0.75)

    def test_disjoint_vocab(self):
        score = rouge(["a", "b"], [["x", "y"]], R1)
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_empty_candidate(self):
        score = rouge([], [["a", "b"]], R2)
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_empty_references_rejected(self):
        with pytest.raises(ArgumentError):
            rouge(["a"], [], R1)

    def test_stemming_matches_inflections(self):
        score = rouge(
            ["police", "killed", "the", "gunman"],
            [["police", "kill", "the", "gunman"]],
            R1,
            stem=True,
        )
        assert score.f1 == 1.0

    def test_multi_reference_is_mean(self):
        cand = ["a", "b", "c"]
        refs = [["a", "b"], ["c", "d", "e", "f"]]
        combined = rouge(cand, refs, R1)
        single = [rouge(cand, [r], R1) for r in refs]
        assert combined.precision == pytest.approx(
            sum(s.precision for s in single) / 2
        )
        assert combined.recall == pytest.approx(
            sum(s.recall for s in single) / 2
        )
        assert combined.f1 == pytest.approx(sum(s.f1 for s in single) / 2)

    def test_su_zero_skip_equals_bigram_match(self):
        # With no words allowed in between, skip pairs are exactly bigrams.
        cand, ref = list("abcabc"), list("cabbac")
        su0 = RougeVariant("RSU", su_skip_distance=1, include_unigrams_in_su=False)
        p, r, f = naive_rouge(cand, [ref], su0, stem=False)
        got = rouge(cand, [ref], su0, stem=False)
        assert got.precision == pytest.approx(p)


class TestRougeText:
    def test_case_and_punctuation_insensitive(self):
        assert rouge_text("A b.", ["a b"], R1).f1 == 1.0

    def test_empty_candidate_text(self):
        score = rouge_text("", ["x"], R1)
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_equals_rouge_on_tokens(self):
        from qfse.textproc import tokenize

        cand = "El Nino brings rain."
        refs = ["Rain follows El Nino.", "The rain was heavy."]
        direct = rouge(tokenize(cand), [tokenize(r) for r in refs], RSU)
        wrapped = rouge_text(cand, refs, RSU)
        assert wrapped == direct


class TestProperties:
    @given(a=TOKENS, b=TOKENS)
    @settings(max_examples=60, deadline=None)
    def test_symmetry(self, a, b):
        if not a or not b:
            return
        for variant in (R1, R2, RSU):
            assert rouge(a, [b], variant, stem=False).precision == pytest.approx(
                rouge(b, [a], variant, stem=False).recall
            )

    @given(a=TOKENS, b=TOKENS, extra=TOKENS)
    @settings(max_examples=60, deadline=None)
    def test_recall_never_drops_on_append(self, a, b, extra):
        if not b:
            return
        for variant in (R1, R2, RL, RSU):
            before = rouge(a, [b], variant, stem=False).recall
            after = rouge(a + extra, [b], variant, stem=False).recall
            assert after >= before - 1e-12

    @given(a=TOKENS, b=TOKENS)
    @settings(max_examples=40, deadline=None)
    def test_scores_in_unit_interval(self, a, b):
        if not b:
            return
        for variant in (R1, R2, RL, RSU):
            s = rouge(a, [b], variant, stem=False)
            for v in (s.precision, s.recall, s.f1):
                assert 0.0 <= v <= 1.0


class TestBruteForceOracle:
    def test_matches_naive_enumeration(self):
        rng = random.Random(12345)
        vocab = list("abcdefghij")
        variants = (R1, R2, RL, RSU)
        for _ in range(200):
            cand = [rng.choice(vocab) for _ in range(rng.randint(0, 30))]
            n_refs = rng.randint(1, 3)
            refs = [
                [rng.choice(vocab) for _ in range(rng.randint(1, 30))]
                for _ in range(n_refs)
            ]
            stem_flag = rng.random() < 0.5
            for variant in variants:
                got = rouge(cand, refs, variant, stem=stem_flag)
                p, r, f = naive_rouge(cand, refs, variant, stem=stem_flag)
                assert abs(got.precision - p) <= 1e-12
                assert abs(got.recall - r) <= 1e-12
                assert abs(got.f1 - f) <= 1e-12


class TestPorterStemmer:
    VECTORS = [
        ("caresses", "caress"),
        ("ponies", "poni"),
        ("ties", "ti"),
        ("caress", "caress"),
        ("cats", "cat"),
        ("feed", "feed"),
        ("agreed", "agre"),
        ("plastered", "plaster"),
        ("bled", "bled"),
        ("motoring", "motor"),
        ("sing", "sing"),
        ("happy", "happi"),
        ("sky", "sky"),
        ("running", "run"),
        ("hopping", "hop"),
        ("falling", "fall"),
        ("hissing", "hiss"),
        ("killed", "kill"),
        ("killing", "kill"),
        ("generalization", "gener"),
        ("oscillators", "oscil"),
        ("relational", "relat"),
        ("conditional", "condit"),
        ("rational", "ration"),
        ("controlling", "control"),
    ]

    @pytest.mark.parametrize("word,expected", VECTORS)
    def test_known_vectors(self, word, expected):
        assert stem(word) == expected

    def test_short_and_nonalpha_unchanged(self):
        assert stem("a") == "a"
        assert stem("ab") == "ab"
        assert stem("don't") == "don't"
        assert stem("1990s") == "1990s"

    def test_case_normalized(self):
        assert stem("Running") == stem("running")


class TestBackendParity:
    def test_backend_reported(self):
        from qfse.rouge import kernels

        assert kernels.BACKEND in ("compiled", "python")
