"""Per-review feature vectors for the sentiment experiments.

A review vector is the mean of in-vocabulary token embeddings, optionally
extended by 4 word-level polarity counts and by 11 sense counts (7 verb
sense-types followed by 4 adverb sense-classes, in inventory order).  With
200-dimensional embeddings the four layouts are 200 / 204 / 211 / 215 wide.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np

from .errors import FormatError
from .embeddings import EmbeddingTable
from .inventory import ADVERB_CLASSES, VERB_TYPES
from .lexio import SenseLookup

POLARITY_FEATURE_NAMES = ("positive_unigrams", "negative_unigrams",
                          "positive_bigrams", "negative_bigrams")


def _strip_punct(token: str) -> str:
    start, end = 0, len(token)
    while start < end and unicodedata.category(token[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(token[end - 1]).startswith("P"):
        end -= 1
    return token[start:end]


def tokenize(text: str) -> list[str]:
    """Split on Unicode whitespace and strip edge punctuation; keeps case."""
    tokens = []
    for raw in text.split():
        tok = _strip_punct(raw)
        if tok:
            tokens.append(tok)
    return tokens


@dataclass
class PolarityLexicons:
    positive_unigrams: set[str] = field(default_factory=set)
    negative_unigrams: set[str] = field(default_factory=set)
    positive_bigrams: set[tuple[str, str]] = field(default_factory=set)
    negative_bigrams: set[tuple[str, str]] = field(default_factory=set)

    def __post_init__(self):
        if self.positive_unigrams & self.negative_unigrams:
            raise ValueError("a unigram may appear in at most one polarity set")
        if self.positive_bigrams & self.negative_bigrams:
            raise ValueError("a bigram may appear in at most one polarity set")


def load_polarity_unigrams(stream: IO[str],
                           lexicons: PolarityLexicons | None = None) -> PolarityLexicons:
    """Read `word<TAB>pos|neg` lines into the unigram sets."""
    lex = lexicons or PolarityLexicons()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise FormatError(f"no tab separator at line {lineno}", line=lineno)
        word, _, polarity = line.partition("\t")
        word, polarity = word.strip(), polarity.strip()
        if polarity == "pos":
            lex.positive_unigrams.add(word)
        elif polarity == "neg":
            lex.negative_unigrams.add(word)
        else:
            raise FormatError(f"polarity must be pos|neg at line {lineno}", line=lineno)
    if lex.positive_unigrams & lex.negative_unigrams:
        raise FormatError("unigram assigned to both polarities")
    return lex


def load_polarity_bigrams(stream: IO[str],
                          lexicons: PolarityLexicons | None = None) -> PolarityLexicons:
    """Read `w1<SPACE>w2<TAB>pos|neg` lines into the bigram sets."""
    lex = lexicons or PolarityLexicons()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise FormatError(f"no tab separator at line {lineno}", line=lineno)
        words, _, polarity = line.partition("\t")
        parts = words.split()
        if len(parts) != 2:
            raise FormatError(f"bigram needs two words at line {lineno}", line=lineno)
        pair = (parts[0], parts[1])
        polarity = polarity.strip()
        if polarity == "pos":
            lex.positive_bigrams.add(pair)
        elif polarity == "neg":
            lex.negative_bigrams.add(pair)
        else:
            raise FormatError(f"polarity must be pos|neg at line {lineno}", line=lineno)
    if lex.positive_bigrams & lex.negative_bigrams:
        raise FormatError("bigram assigned to both polarities")
    return lex


def review_vector(tokens: Sequence[str],
                  table: EmbeddingTable) -> tuple[np.ndarray, int]:
    """Component-wise mean of in-vocabulary token vectors.

    Returns the vector plus the number of tokens found in the table; when
    none are (the review is fully out of vocabulary) the vector is zero
    and the caller can flag the review via the zero count.
    """
    found = [table.vectors[t] for t in tokens if t in table.vectors]
    if not found:
        return np.zeros(table.dim), 0
    return np.mean(found, axis=0), len(found)


def polarity_features(tokens: Sequence[str], lexicons: PolarityLexicons) -> np.ndarray:
    """[positive unigrams, negative unigrams, positive bigrams, negative bigrams].

    Unigram counts include multiplicity; bigram counts run over adjacent
    token pairs.
    """
    pos_uni = sum(1 for t in tokens if t in lexicons.positive_unigrams)
    neg_uni = sum(1 for t in tokens if t in lexicons.negative_unigrams)
    bigrams = list(zip(tokens, tokens[1:]))
    pos_bi = sum(1 for b in bigrams if b in lexicons.positive_bigrams)
    neg_bi = sum(1 for b in bigrams if b in lexicons.negative_bigrams)
    return np.array([pos_uni, neg_uni, pos_bi, neg_bi], dtype=np.float64)


def sense_features(tokens: Sequence[str], lookup: SenseLookup) -> np.ndarray:
    """11 counts: verb occurrences per sense-type, then adverb per sense-class.

    Only words with a resolved, non-Uncertain primary sense contribute.
    """
    verb_index = {t: i for i, t in enumerate(VERB_TYPES)}
    adverb_index = {c: i for i, c in enumerate(ADVERB_CLASSES)}
    counts = np.zeros(len(VERB_TYPES) + len(ADVERB_CLASSES), dtype=np.float64)
    for tok in tokens:
        verb_tag = lookup.verb_tag.get(tok)
        if verb_tag is not None:
            counts[verb_index[verb_tag]] += 1
        adverb_tag = lookup.adverb_tag.get(tok)
        if adverb_tag is not None:
            counts[len(VERB_TYPES) + adverb_index[adverb_tag]] += 1
    return counts


@dataclass(frozen=True)
class FeatureConfig:
    use_polarity: bool = False
    use_sense: bool = False

    @property
    def label(self) -> str:
        if self.use_polarity and self.use_sense:
            return "+both"
        if self.use_polarity:
            return "+polarity"
        if self.use_sense:
            return "+sense"
        return "embeddings"


FEATURE_CONFIGS = (
    FeatureConfig(False, False),
    FeatureConfig(True, False),
    FeatureConfig(False, True),
    FeatureConfig(True, True),
)


def feature_layout(dim: int, config: FeatureConfig) -> tuple[str, ...]:
    """Feature name per index; a pure function of (dim, config)."""
    names = [f"emb_{i}" for i in range(dim)]
    if config.use_polarity:
        names.extend(POLARITY_FEATURE_NAMES)
    if config.use_sense:
        names.extend(f"verb:{t}" for t in VERB_TYPES)
        names.extend(f"adverb:{c}" for c in ADVERB_CLASSES)
    return tuple(names)


@dataclass
class FeatureVector:
    values: np.ndarray
    layout: tuple[str, ...]
    in_vocab: int

    @property
    def all_oov(self) -> bool:
        return self.in_vocab == 0


def assemble(text: str,
             table: EmbeddingTable,
             config: FeatureConfig = FeatureConfig(),
             lexicons: PolarityLexicons | None = None,
             lookup: SenseLookup | None = None,
             normalize_counts: bool = False) -> FeatureVector:
    """Build one review's feature vector: embedding mean, +4 polarity, +11 sense.

    Count blocks stay raw occurrence counts by default; with
    ``normalize_counts`` they become relative frequencies (divided by the
    review's token count).
    """
    tokens = tokenize(text)
    vec, in_vocab = review_vector(tokens, table)
    scale = 1.0 / len(tokens) if normalize_counts and tokens else 1.0
    parts = [vec]
    if config.use_polarity:
        if lexicons is None:
            raise ValueError("use_polarity requires polarity lexicons")
        parts.append(polarity_features(tokens, lexicons) * scale)
    if config.use_sense:
        if lookup is None:
            raise ValueError("use_sense requires a sense lexicon")
        parts.append(sense_features(tokens, lookup) * scale)
    return FeatureVector(values=np.concatenate(parts),
                         layout=feature_layout(table.dim, config),
                         in_vocab=in_vocab)


@dataclass
class Review:
    review_id: str
    text: str
    label: str                     # pos | neg


def read_reviews(stream: IO[str]) -> list[Review]:
    """Parse the review corpus: JSON lines {"id", "text", "label"}."""
    reviews = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            label = obj["label"]
            if label not in ("pos", "neg"):
                raise FormatError(f"label must be pos|neg at line {lineno}", line=lineno)
            reviews.append(Review(str(obj["id"]), obj["text"], label))
        except (json.JSONDecodeError, KeyError) as exc:
            raise FormatError(f"bad review record at line {lineno}: {exc}",
                              line=lineno) from exc
    return reviews
