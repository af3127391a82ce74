"""Word embedding tables: text-format I/O and a skip-gram trainer.

The trainer is a plain skip-gram with negative sampling (noise drawn from
the unigram distribution raised to 0.75), stochastic gradient descent with
a linearly decaying learning rate, and a fixed context window.  Everything
is seeded, so a (corpus, hyperparameters, seed) triple maps to exactly one
table.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyCorpus, HeaderMismatch

DEFAULT_DIM = 200
DEFAULT_WINDOW = 5
DEFAULT_NEGATIVES = 5
DEFAULT_EPOCHS = 5
DEFAULT_LR = 0.025
MIN_LR_FRACTION = 1e-4


@dataclass
class EmbeddingTable:
    dim: int
    vectors: dict[str, np.ndarray]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def get(self, word: str) -> np.ndarray | None:
        return self.vectors.get(word)


def load_embeddings(stream: IO[str]) -> EmbeddingTable:
    """Read the `<count> <dim>` header format, one word vector per line."""
    header = stream.readline().split()
    if len(header) != 2:
        raise HeaderMismatch("expected header line '<count> <dim>'", line=1)
    try:
        count, dim = int(header[0]), int(header[1])
    except ValueError as exc:
        raise HeaderMismatch(f"non-integer header: {exc}", line=1) from exc
    if count < 0 or dim < 1:
        raise HeaderMismatch(f"bad header values {count} {dim}", line=1)

    vectors: dict[str, np.ndarray] = {}
    rows = 0
    for lineno, raw in enumerate(stream, start=2):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        parts = line.split()
        word, values = parts[0], parts[1:]
        if len(values) != dim:
            raise DimensionMismatch(
                f"expected {dim} components, got {len(values)} at line {lineno}",
                line=lineno)
        try:
            vec = np.array([float(v) for v in values], dtype=np.float64)
        except ValueError as exc:
            raise DimensionMismatch(
                f"non-numeric component at line {lineno}: {exc}",
                line=lineno) from exc
        if word in vectors:
            warnings.warn(f"duplicate embedding for {word!r}; last occurrence wins")
        vectors[word] = vec
        rows += 1
    if rows != count:
        raise HeaderMismatch(f"header promised {count} rows, file has {rows}")
    return EmbeddingTable(dim=dim, vectors=vectors)


def save_embeddings(table: EmbeddingTable, stream: IO[str]) -> None:
    stream.write(f"{len(table.vectors)} {table.dim}\n")
    for word in sorted(table.vectors):
        comps = " ".join(repr(float(v)) for v in table.vectors[word])
        stream.write(f"{word} {comps}\n")


def _sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + np.exp(-x))
    z = np.exp(x)
    return z / (1.0 + z)


def train_embeddings(corpus: Iterable[Sequence[str]],
                     dim: int = DEFAULT_DIM,
                     window: int = DEFAULT_WINDOW,
                     negatives: int = DEFAULT_NEGATIVES,
                     epochs: int = DEFAULT_EPOCHS,
                     lr: float = DEFAULT_LR,
                     min_count: int = 1,
                     seed: int = 0) -> EmbeddingTable:
    """Train skip-gram vectors over an iterable of token sequences.

    Vocabulary keeps words occurring at least ``min_count`` times; each
    kept word gets a dim-length vector.  Raises EmptyCorpus when nothing
    survives the filter.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    sentences = [list(s) for s in corpus]
    counts: dict[str, int] = {}
    for sent in sentences:
        for tok in sent:
            counts[tok] = counts.get(tok, 0) + 1
    vocab = sorted((w for w, c in counts.items() if c >= min_count),
                   key=lambda w: (-counts[w], w))
    if not vocab:
        raise EmptyCorpus("no vocabulary after min-count filtering")
    word_id = {w: i for i, w in enumerate(vocab)}

    # Noise distribution: unigram counts ** 0.75, sampled via inverse CDF.
    noise = np.array([counts[w] for w in vocab], dtype=np.float64) ** 0.75
    noise_cdf = np.cumsum(noise / noise.sum())

    rng = np.random.default_rng(seed)
    bound = 0.5 / dim
    syn0 = rng.uniform(-bound, bound, size=(len(vocab), dim))
    syn1 = np.zeros((len(vocab), dim))

    encoded = [[word_id[t] for t in sent if t in word_id] for sent in sentences]
    total_positions = epochs * sum(len(s) for s in encoded)
    if total_positions == 0:
        raise EmptyCorpus("corpus has no in-vocabulary tokens")

    processed = 0
    for _ in range(epochs):
        for ids in encoded:
            for i, center in enumerate(ids):
                lr_t = lr * max(MIN_LR_FRACTION, 1.0 - processed / total_positions)
                processed += 1
                lo, hi = max(0, i - window), min(len(ids), i + window + 1)
                for j in range(lo, hi):
                    if j == i:
                        continue
                    context = ids[j]
                    v = syn0[center]
                    accum = np.zeros(dim)
                    negs = np.searchsorted(noise_cdf, rng.random(negatives))
                    for target, label in [(context, 1.0)] + [
                            (int(t), 0.0) for t in negs if int(t) != context]:
                        u = syn1[target]
                        g = (label - _sigmoid(float(v @ u))) * lr_t
                        accum += g * u
                        syn1[target] = u + g * v
                    syn0[center] = v + accum

    return EmbeddingTable(dim=dim, vectors={w: syn0[word_id[w]].copy() for w in vocab})
