import io
import random

import numpy as np
import pytest

from senselex.embeddings import EmbeddingTable
from senselex.errors import FormatError
from senselex.features import (
    FEATURE_CONFIGS,
    FeatureConfig,
    PolarityLexicons,
    assemble,
    feature_layout,
    load_polarity_bigrams,
    load_polarity_unigrams,
    polarity_features,
    read_reviews,
    review_vector,
    sense_features,
    tokenize,
)
from senselex.lexio import LexiconRecord, SenseLookup


class TestTokenize:

    def test_whitespace_split(self):
        assert tokenize("a b  c") == ["a", "b", "c"]

    def test_empty(self):
        assert tokenize("") == []
        assert tokenize("   \t\n") == []

    def test_punctuation_strip(self):
        assert tokenize("x, y.") == ["x", "y"]
        assert tokenize("“quoted” (word)!") == ["quoted", "word"]

    def test_case_preserved_inner_punct_kept(self):
        assert tokenize("Good-one's Here") == ["Good-one's", "Here"]

    def test_pure_punctuation_dropped(self):
        assert tokenize("... -- word") == ["word"]


@pytest.fixture
def table():
    return EmbeddingTable(dim=2, vectors={
        "alpha": np.array([1.0, 3.0]),
        "beta": np.array([3.0, 5.0]),
        "gamma": np.array([10.0, -2.0]),
    })


class TestReviewVector:

    def test_all_oov_zero_and_flagged(self, table):
        vec, in_vocab = review_vector(["zeta", "eta"], table)
        assert np.array_equal(vec, np.zeros(2))
        assert in_vocab == 0

    def test_single_token_identity(self, table):
        vec, in_vocab = review_vector(["gamma"], table)
        assert np.array_equal(vec, table.vectors["gamma"])
        assert in_vocab == 1

    def test_hand_mean(self, table):
        vec, in_vocab = review_vector(["alpha", "beta"], table)
        assert np.array_equal(vec, np.array([2.0, 4.0]))
        assert in_vocab == 2

    def test_oov_skipped_not_imputed(self, table):
        with_oov, _ = review_vector(["alpha", "beta", "unknown"], table)
        without, _ = review_vector(["alpha", "beta"], table)
        assert np.array_equal(with_oov, without)

    def test_scaling_linearity(self, table):
        scaled = EmbeddingTable(dim=2, vectors={
            w: 3.0 * v for w, v in table.vectors.items()})
        base, _ = review_vector(["alpha", "beta", "gamma"], table)
        big, _ = review_vector(["alpha", "beta", "gamma"], scaled)
        assert np.allclose(big, 3.0 * base)


class TestPolarityFeatures:

    def test_hand_count_with_multiplicity(self):
        lex = PolarityLexicons(positive_unigrams={"good"},
                               negative_unigrams={"bad"})
        counts = polarity_features(["good", "good", "bad"], lex)
        assert counts.tolist() == [2, 1, 0, 0]

    def test_empty_review(self):
        lex = PolarityLexicons()
        assert polarity_features([], lex).tolist() == [0, 0, 0, 0]

    def test_bigram_membership(self):
        lex = PolarityLexicons(negative_bigrams={("not", "good")})
        counts = polarity_features(["not", "good"], lex)
        assert counts.tolist() == [0, 0, 0, 1]

    def test_unigram_counts_shuffle_invariant(self):
        lex = PolarityLexicons(positive_unigrams={"up"}, negative_unigrams={"down"})
        tokens = ["up", "x", "down", "up", "y"]
        shuffled = list(tokens)
        random.Random(1).shuffle(shuffled)
        assert polarity_features(tokens, lex)[:2].tolist() == \
            polarity_features(shuffled, lex)[:2].tolist()

    def test_conflicting_unigram_rejected(self):
        with pytest.raises(ValueError):
            PolarityLexicons(positive_unigrams={"x"}, negative_unigrams={"x"})

    def test_lexicon_file_loaders(self):
        lex = load_polarity_unigrams(io.StringIO("good\tpos\nbad\tneg\n"))
        load_polarity_bigrams(io.StringIO("not good\tneg\nvery good\tpos\n"), lex)
        assert lex.positive_unigrams == {"good"}
        assert lex.negative_bigrams == {("not", "good")}
        with pytest.raises(FormatError):
            load_polarity_unigrams(io.StringIO("word without tab\n"))
        with pytest.raises(FormatError):
            load_polarity_unigrams(io.StringIO("word\tmaybe\n"))


@pytest.fixture
def lookup():
    return SenseLookup([
        LexiconRecord("w1", "velladu", "verb", "g",
                      resolved={"sense": ("ToMove", "ToMove")}),
        LexiconRecord("w2", "vachchaadu", "verb", "g",
                      resolved={"sense": ("ToMove", "ToDo")}),
        LexiconRecord("w3", "konchem", "adverb", "g",
                      resolved={"sense": ("Measure", None)}),
        LexiconRecord("w4", "mist", "verb", "g",
                      resolved={"sense": ("Uncertain", "Uncertain")}),
    ])


class TestSenseFeatures:

    def test_hand_count(self, lookup):
        tokens = ["velladu", "x", "vachchaadu", "konchem"]
        counts = sense_features(tokens, lookup)
        assert counts.tolist() == [0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1]

    def test_no_annotated_words(self, lookup):
        assert sense_features(["plain", "words"], lookup).tolist() == [0] * 11

    def test_uncertain_contributes_nothing(self, lookup):
        assert sense_features(["mist"], lookup).tolist() == [0] * 11

    def test_shuffle_invariant(self, lookup):
        tokens = ["velladu", "konchem", "x", "vachchaadu"] * 2
        shuffled = list(tokens)
        random.Random(3).shuffle(shuffled)
        assert sense_features(tokens, lookup).tolist() == \
            sense_features(shuffled, lookup).tolist()

    def test_sum_bounded_by_token_count(self, lookup):
        tokens = ["velladu", "vachchaadu", "konchem", "filler"] * 3
        counts = sense_features(tokens, lookup)
        assert counts[:7].sum() <= len(tokens)
        assert counts[7:].sum() <= len(tokens)


class TestAssemble:

    @pytest.fixture
    def table200(self):
        rng = np.random.default_rng(0)
        words = ["velladu", "konchem", "good", "pada"]
        return EmbeddingTable(dim=200, vectors={
            w: rng.normal(size=200) for w in words})

    def test_table2_lengths(self, table200, lookup):
        lex = PolarityLexicons(positive_unigrams={"good"})
        text = "velladu konchem good pada"
        expected = {"embeddings": 200, "+polarity": 204,
                    "+sense": 211, "+both": 215}
        for config in FEATURE_CONFIGS:
            fv = assemble(text, table200, config, lexicons=lex, lookup=lookup)
            assert len(fv.values) == expected[config.label]
            assert fv.layout == feature_layout(200, config)
            assert len(fv.layout) == len(fv.values)

    def test_concatenation_order(self, lookup):
        table = EmbeddingTable(dim=2, vectors={"velladu": np.array([1.0, 2.0])})
        lex = PolarityLexicons(positive_unigrams={"velladu"})
        fv = assemble("velladu", table, FeatureConfig(True, True),
                      lexicons=lex, lookup=lookup)
        # embedding mean, then 4 polarity counts, then 7 verb + 4 adverb counts
        assert fv.values.tolist() == [1.0, 2.0,
                                      1, 0, 0, 0,
                                      0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]

    def test_layout_indices_are_stable(self):
        layout = feature_layout(3, FeatureConfig(True, True))
        assert layout.index("positive_unigrams") == 3
        assert layout.index("verb:ToKnow") == 7
        assert layout.index("adverb:Spatial") == 14
        layout_sense_only = feature_layout(3, FeatureConfig(False, True))
        assert layout_sense_only.index("verb:ToKnow") == 3

    def test_missing_resources_rejected(self, table200):
        with pytest.raises(ValueError):
            assemble("x", table200, FeatureConfig(use_polarity=True))
        with pytest.raises(ValueError):
            assemble("x", table200, FeatureConfig(use_sense=True))

    def test_all_oov_flag(self, table200):
        fv = assemble("zzz qqq", table200)
        assert fv.all_oov and np.array_equal(fv.values, np.zeros(200))

    def test_normalize_counts_divides_by_length(self, lookup):
        table = EmbeddingTable(dim=1, vectors={"velladu": np.array([2.0])})
        raw = assemble("velladu x y z", table, FeatureConfig(False, True),
                       lookup=lookup)
        scaled = assemble("velladu x y z", table, FeatureConfig(False, True),
                          lookup=lookup, normalize_counts=True)
        assert raw.values[1:].sum() == 1.0
        assert scaled.values[1:].sum() == pytest.approx(0.25)
        # the embedding block is untouched
        assert raw.values[0] == scaled.values[0]


def test_read_reviews():
    stream = io.StringIO(
        '{"id": "r1", "text": "alpha beta", "label": "pos"}\n'
        '{"id": "r2", "text": "gamma", "label": "neg"}\n')
    reviews = read_reviews(stream)
    assert [r.review_id for r in reviews] == ["r1", "r2"]
    with pytest.raises(FormatError):
        read_reviews(io.StringIO('{"id": "r", "text": "t", "label": "meh"}\n'))
    with pytest.raises(FormatError):
        read_reviews(io.StringIO("not json\n"))
