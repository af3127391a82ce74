#!/usr/bin/env python3
"""Regenerate the synthetic sentiment fixtures (deterministic, seed 7).

The tagged corpus and its lexicon are hand-written and not touched here.
Run from the repository root:

    python3 scripts/make_fixtures.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from senselex.synthetic import make_sentiment_corpus  # noqa: E402

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    corpus = make_sentiment_corpus()
    corpus.write(
        reviews_path=str(FIXTURES / "synthetic_reviews.jsonl"),
        lexicon_path=str(FIXTURES / "synthetic_sense_lexicon.jsonl"),
        unigrams_path=str(FIXTURES / "synthetic_polarity_unigrams.tsv"),
        bigrams_path=str(FIXTURES / "synthetic_polarity_bigrams.tsv"),
    )
    print(f"wrote {len(corpus.reviews)} reviews and "
          f"{len(corpus.lexicon)} lexicon entries under {FIXTURES}")


if __name__ == "__main__":
    main()
