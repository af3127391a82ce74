"""Deterministic synthetic sentiment corpus for harness validation.

Reviews are mostly shared filler vocabulary; the label signal is carried
by a small number of sense-annotated verbs and adverbs whose sense
category correlates with the review label.  That construction makes the
sense-count features strongly informative while the averaged embedding
stays a noisy baseline, so feature ablations have a known direction.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .inventory import ADVERB_CLASSES, VERB_TYPES
from .lexio import LexiconRecord

POSITIVE_VERB_TYPES = ("ToKnow", "ToMove", "ToDo")
NEGATIVE_VERB_TYPES = ("ToCut", "ToBound", "ToHave")
SHARED_VERB_TYPES = ("ToBe",)
POSITIVE_ADVERB_CLASSES = ("Spatial", "Temporal")
NEGATIVE_ADVERB_CLASSES = ("Force", "Measure")


@dataclass
class SyntheticCorpus:
    reviews: list[dict]
    lexicon: list[LexiconRecord]
    polarity_unigrams: list[tuple[str, str]]
    polarity_bigrams: list[tuple[str, str, str]]

    def write(self, reviews_path: str, lexicon_path: str,
              unigrams_path: str, bigrams_path: str) -> None:
        with open(reviews_path, "w", encoding="utf-8") as fh:
            for review in self.reviews:
                fh.write(json.dumps(review, ensure_ascii=False) + "\n")
        from .lexio import write_lexicon
        with open(lexicon_path, "w", encoding="utf-8") as fh:
            write_lexicon(self.lexicon, fh)
        with open(unigrams_path, "w", encoding="utf-8") as fh:
            for word, polarity in self.polarity_unigrams:
                fh.write(f"{word}\t{polarity}\n")
        with open(bigrams_path, "w", encoding="utf-8") as fh:
            for w1, w2, polarity in self.polarity_bigrams:
                fh.write(f"{w1} {w2}\t{polarity}\n")


def _word_list(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i:02d}" for i in range(n)]


def make_sentiment_corpus(n_reviews: int = 240,
                          filler_vocab: int = 60,
                          filler_tokens: int = 26,
                          sense_tokens: int = 5,
                          signal: float = 0.88,
                          seed: int = 7) -> SyntheticCorpus:
    """Build reviews, a matching sense lexicon, and weak polarity lexicons."""
    rng = random.Random(seed)
    filler = _word_list("pada", filler_vocab)

    verbs_by_type = {vt: _word_list(f"kr{vt.lower()}", 4) for vt in VERB_TYPES}
    adverbs_by_class = {ac: _word_list(f"vi{ac.lower()}", 3) for ac in ADVERB_CLASSES}

    positive_pool = [w for vt in POSITIVE_VERB_TYPES for w in verbs_by_type[vt]]
    positive_pool += [w for ac in POSITIVE_ADVERB_CLASSES
                      for w in adverbs_by_class[ac]]
    negative_pool = [w for vt in NEGATIVE_VERB_TYPES for w in verbs_by_type[vt]]
    negative_pool += [w for ac in NEGATIVE_ADVERB_CLASSES
                      for w in adverbs_by_class[ac]]
    shared_pool = [w for vt in SHARED_VERB_TYPES for w in verbs_by_type[vt]]

    reviews = []
    for i in range(n_reviews):
        label = "pos" if i % 2 == 0 else "neg"
        own_pool = positive_pool if label == "pos" else negative_pool
        other_pool = negative_pool if label == "pos" else positive_pool
        tokens = [rng.choice(filler) for _ in range(filler_tokens)]
        for _ in range(sense_tokens):
            roll = rng.random()
            if roll < signal:
                tokens.append(rng.choice(own_pool))
            elif roll < signal + 0.5 * (1 - signal):
                tokens.append(rng.choice(shared_pool))
            else:
                tokens.append(rng.choice(other_pool))
        rng.shuffle(tokens)
        reviews.append({"id": f"rev{i:04d}", "text": " ".join(tokens),
                        "label": label})

    lexicon = []
    word_no = 0
    for vt in VERB_TYPES:
        for w in verbs_by_type[vt]:
            word_no += 1
            lexicon.append(LexiconRecord(
                word_id=f"w{word_no:06d}", surface=w, pos="verb",
                gloss=f"synthetic verb of type {vt}",
                resolved={"sense": (vt, vt)}))
    for ac in ADVERB_CLASSES:
        for w in adverbs_by_class[ac]:
            word_no += 1
            lexicon.append(LexiconRecord(
                word_id=f"w{word_no:06d}", surface=w, pos="adverb",
                gloss=f"synthetic adverb of class {ac}",
                resolved={"sense": (ac, None)}))

    # Polarity lexicon over filler words: filler is label-independent, so
    # these features are noise by construction.
    polarity_unigrams = []
    for j, word in enumerate(filler[: filler_vocab // 2]):
        polarity_unigrams.append((word, "pos" if j % 2 == 0 else "neg"))
    polarity_bigrams = [
        (filler[0], filler[1], "pos"),
        (filler[2], filler[3], "neg"),
    ]
    return SyntheticCorpus(reviews=reviews, lexicon=lexicon,
                           polarity_unigrams=polarity_unigrams,
                           polarity_bigrams=polarity_bigrams)
