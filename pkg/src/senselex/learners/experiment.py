"""Classifier x feature-configuration experiment grid.

Runs each of the five classifiers over the four feature layouts on a
stratified train/test split, repeated over several seeds because single
runs show high variance; reports mean and standard deviation of accuracy
in a 5x4 table, plus a detailed precision/recall/F1 table for the neural
network.
"""

from __future__ import annotations

import json
import os
import statistics
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..config import as_bool, as_int_list, parse_kv_file
from ..embeddings import EmbeddingTable, load_embeddings, train_embeddings
from ..errors import FormatError
from ..features import (
    FEATURE_CONFIGS,
    PolarityLexicons,
    Review,
    load_polarity_bigrams,
    load_polarity_unigrams,
    polarity_features,
    read_reviews,
    review_vector,
    sense_features,
    tokenize,
)
from ..lexio import SenseLookup, load_lexicon
from .forest import RandomForest
from .knn import KNNModel
from .metrics import Metrics, evaluate
from .mlp import MLP
from .svm import LinearSVM, RBFSVM

CLASSIFIER_NAMES = {
    "linear_svm": "Linear SVM",
    "rbf_svm": "Gaussian SVM",
    "forest": "Random Forest",
    "mlp": "Neural Network",
    "knn": "K-Nearest Neighbor",
}
CLASSIFIER_ORDER = ("linear_svm", "rbf_svm", "forest", "mlp", "knn")
CONFIG_LABELS = tuple(c.label for c in FEATURE_CONFIGS)

LABEL_NAMES = {"pos": "positive", "neg": "negative"}


@dataclass
class Dataset:
    X: np.ndarray
    y: list[str]
    train_idx: np.ndarray
    test_idx: np.ndarray

    @property
    def train(self) -> tuple[np.ndarray, list[str]]:
        return self.X[self.train_idx], [self.y[i] for i in self.train_idx]

    @property
    def test(self) -> tuple[np.ndarray, list[str]]:
        return self.X[self.test_idx], [self.y[i] for i in self.test_idx]


def stratified_split(labels: Sequence[str], train_fraction: float,
                     seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-class shuffled split; every class keeps at least one test row."""
    if not 0 < train_fraction < 1:
        raise ValueError("train_fraction must be in (0, 1)")
    rng = np.random.default_rng(seed)
    train: list[int] = []
    test: list[int] = []
    for label in sorted(set(labels)):
        idx = [i for i, y in enumerate(labels) if y == label]
        idx = list(rng.permutation(idx))
        n_train = int(train_fraction * len(idx))
        n_train = max(1, min(len(idx) - 1, n_train)) if len(idx) > 1 else len(idx)
        train.extend(idx[:n_train])
        test.extend(idx[n_train:])
    return np.array(sorted(train)), np.array(sorted(test))


@dataclass
class ExperimentConfig:
    reviews_path: str
    embeddings_path: str | None = None
    sense_lexicon_path: str | None = None
    polarity_unigrams_path: str | None = None
    polarity_bigrams_path: str | None = None
    embed_dim: int = 200
    embed_window: int = 5
    embed_negatives: int = 5
    embed_epochs: int = 5
    embed_lr: float = 0.025
    embed_seed: int = 0
    seeds: list[int] = field(default_factory=lambda: [0, 1, 2])
    train_fraction: float = 0.8
    normalize_counts: bool = False
    classifiers: tuple[str, ...] = CLASSIFIER_ORDER
    feature_configs: tuple[str, ...] = CONFIG_LABELS
    svm_c: float = 1.0
    svm_epochs: int = 20
    rbf_c: float = 1.0
    rbf_gamma: float | None = None
    forest_trees: int = 100
    mlp_hidden: tuple[int, ...] = (100, 25)
    mlp_epochs: int = 50
    mlp_lr: float = 0.1
    mlp_batch: int = 32
    knn_k: int = 5

    @classmethod
    def from_file(cls, path: str) -> "ExperimentConfig":
        raw = parse_kv_file(path)
        if "reviews" not in raw:
            raise FormatError(f"{path}: missing required key 'reviews'")
        # relative data paths resolve against the config file's directory
        base = os.path.dirname(os.path.abspath(path))
        for key in ("reviews", "embeddings", "sense_lexicon",
                    "polarity_unigrams", "polarity_bigrams"):
            if key in raw and not os.path.isabs(raw[key]):
                raw[key] = os.path.normpath(os.path.join(base, raw[key]))
        cfg = cls(reviews_path=raw["reviews"])
        simple = {
            "embeddings": ("embeddings_path", str),
            "sense_lexicon": ("sense_lexicon_path", str),
            "polarity_unigrams": ("polarity_unigrams_path", str),
            "polarity_bigrams": ("polarity_bigrams_path", str),
            "embed_dim": ("embed_dim", int),
            "embed_window": ("embed_window", int),
            "embed_negatives": ("embed_negatives", int),
            "embed_epochs": ("embed_epochs", int),
            "embed_lr": ("embed_lr", float),
            "embed_seed": ("embed_seed", int),
            "train_fraction": ("train_fraction", float),
            "svm_c": ("svm_c", float),
            "svm_epochs": ("svm_epochs", int),
            "rbf_c": ("rbf_c", float),
            "rbf_gamma": ("rbf_gamma", float),
            "forest_trees": ("forest_trees", int),
            "mlp_epochs": ("mlp_epochs", int),
            "mlp_lr": ("mlp_lr", float),
            "mlp_batch": ("mlp_batch", int),
            "knn_k": ("knn_k", int),
        }
        for key, (attr, cast) in simple.items():
            if key in raw:
                setattr(cfg, attr, cast(raw[key]))
        if "seeds" in raw:
            cfg.seeds = as_int_list(raw["seeds"])
        if "normalize_counts" in raw:
            cfg.normalize_counts = as_bool(raw["normalize_counts"])
        if "mlp_hidden" in raw:
            cfg.mlp_hidden = tuple(as_int_list(raw["mlp_hidden"]))
        if "classifiers" in raw:
            cfg.classifiers = tuple(
                c.strip() for c in raw["classifiers"].split(",") if c.strip())
        if "feature_configs" in raw:
            cfg.feature_configs = tuple(
                c.strip() for c in raw["feature_configs"].split(",") if c.strip())
        for name in cfg.classifiers:
            if name not in CLASSIFIER_NAMES:
                raise FormatError(f"unknown classifier {name!r}")
        for label in cfg.feature_configs:
            if label not in CONFIG_LABELS:
                raise FormatError(f"unknown feature config {label!r}")
        return cfg


def build_feature_matrices(reviews: list[Review],
                           table: EmbeddingTable,
                           lexicons: PolarityLexicons | None,
                           lookup: SenseLookup | None,
                           configs: Sequence[str],
                           normalize_counts: bool = False) -> dict[str, np.ndarray]:
    """One matrix per feature configuration, sharing per-review blocks."""
    token_lists = [tokenize(r.text) for r in reviews]
    scales = np.array([1.0 / len(t) if normalize_counts and t else 1.0
                       for t in token_lists])[:, None]
    emb = np.stack([review_vector(toks, table)[0] for toks in token_lists])
    blocks: dict[str, np.ndarray] = {}
    if any(label in ("+polarity", "+both") for label in configs):
        if lexicons is None:
            raise FormatError("polarity feature configs need polarity lexicon paths")
        blocks["polarity"] = np.stack(
            [polarity_features(toks, lexicons) for toks in token_lists]) * scales
    if any(label in ("+sense", "+both") for label in configs):
        if lookup is None:
            raise FormatError("sense feature configs need a sense lexicon path")
        blocks["sense"] = np.stack(
            [sense_features(toks, lookup) for toks in token_lists]) * scales

    by_label = {c.label: c for c in FEATURE_CONFIGS}
    matrices = {}
    for label in configs:
        config = by_label[label]
        parts = [emb]
        if config.use_polarity:
            parts.append(blocks["polarity"])
        if config.use_sense:
            parts.append(blocks["sense"])
        matrices[label] = np.hstack(parts)
    return matrices


def make_classifier(name: str, cfg: ExperimentConfig, seed: int):
    if name == "linear_svm":
        return LinearSVM(C=cfg.svm_c, epochs=cfg.svm_epochs, seed=seed)
    if name == "rbf_svm":
        return RBFSVM(C=cfg.rbf_c, gamma=cfg.rbf_gamma, seed=seed)
    if name == "forest":
        return RandomForest(n_trees=cfg.forest_trees, seed=seed)
    if name == "mlp":
        return MLP(hidden=cfg.mlp_hidden, epochs=cfg.mlp_epochs, lr=cfg.mlp_lr,
                   batch_size=cfg.mlp_batch, seed=seed)
    if name == "knn":
        return None  # instance-based; built at predict time
    raise ValueError(f"unknown classifier {name!r}")


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    # classifier -> config label -> list of Metrics, one per seed
    cells: dict[str, dict[str, list[Metrics]]]
    dims: dict[str, int]

    def accuracy_stats(self, classifier: str, label: str) -> tuple[float, float]:
        runs = [m.accuracy for m in self.cells[classifier][label]]
        mean = statistics.fmean(runs)
        std = statistics.pstdev(runs) if len(runs) > 1 else 0.0
        return mean, std

    def render_accuracy_table(self) -> str:
        configs = list(self.config.feature_configs)
        header = ["classifier"] + configs
        rows = [header]
        for name in self.config.classifiers:
            row = [CLASSIFIER_NAMES[name]]
            for label in configs:
                mean, std = self.accuracy_stats(name, label)
                row.append(f"{100 * mean:.2f} ± {100 * std:.2f}")
            rows.append(row)
        widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
        return "\n".join("  ".join(cell.ljust(widths[c])
                                   for c, cell in enumerate(row)).rstrip()
                         for row in rows)

    def render_mlp_table(self) -> str:
        """Precision/recall/F1 rows for the neural network, per feature config."""
        if "mlp" not in self.cells:
            return "(neural network not in this run)"
        configs = list(self.config.feature_configs)
        metric_rows = [("Precision", "precision"), ("Recall", "recall"),
                       ("F-Measure", "f1")]
        rows = [["metric"] + configs]
        for title, attr in metric_rows:
            row = [title]
            for label in configs:
                values = [getattr(m, attr) for m in self.cells["mlp"][label]]
                row.append(f"{statistics.fmean(values):.3f}")
            rows.append(row)
        widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
        return "\n".join("  ".join(cell.ljust(widths[c])
                                   for c, cell in enumerate(row)).rstrip()
                         for row in rows)

    def to_json_dict(self) -> dict:
        out: dict = {"feature_dims": self.dims, "seeds": self.config.seeds,
                     "accuracy": {}, "metrics": {}}
        for name in self.config.classifiers:
            out["accuracy"][name] = {}
            out["metrics"][name] = {}
            for label in self.config.feature_configs:
                mean, std = self.accuracy_stats(name, label)
                runs = self.cells[name][label]
                out["accuracy"][name][label] = {
                    "mean": mean, "std": std,
                    "runs": [m.accuracy for m in runs],
                }
                out["metrics"][name][label] = [m.to_json_dict() for m in runs]
        return out

    def render_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    with open(cfg.reviews_path, encoding="utf-8") as fh:
        reviews = read_reviews(fh)
    if not reviews:
        raise FormatError(f"{cfg.reviews_path}: no reviews")

    if cfg.embeddings_path:
        with open(cfg.embeddings_path, encoding="utf-8") as fh:
            table = load_embeddings(fh)
    else:
        table = train_embeddings([tokenize(r.text) for r in reviews],
                                 dim=cfg.embed_dim, window=cfg.embed_window,
                                 negatives=cfg.embed_negatives,
                                 epochs=cfg.embed_epochs, lr=cfg.embed_lr,
                                 seed=cfg.embed_seed)

    lexicons = None
    if cfg.polarity_unigrams_path:
        lexicons = PolarityLexicons()
        with open(cfg.polarity_unigrams_path, encoding="utf-8") as fh:
            load_polarity_unigrams(fh, lexicons)
        if cfg.polarity_bigrams_path:
            with open(cfg.polarity_bigrams_path, encoding="utf-8") as fh:
                load_polarity_bigrams(fh, lexicons)
    lookup = None
    if cfg.sense_lexicon_path:
        lookup = SenseLookup(load_lexicon(cfg.sense_lexicon_path))

    matrices = build_feature_matrices(reviews, table, lexicons, lookup,
                                      cfg.feature_configs,
                                      normalize_counts=cfg.normalize_counts)
    y = [LABEL_NAMES[r.label] for r in reviews]

    cells: dict[str, dict[str, list[Metrics]]] = {
        name: {label: [] for label in cfg.feature_configs}
        for name in cfg.classifiers}
    for seed in cfg.seeds:
        train_idx, test_idx = stratified_split(y, cfg.train_fraction, seed)
        for label in cfg.feature_configs:
            dataset = Dataset(matrices[label], y, train_idx, test_idx)
            X_train, y_train = dataset.train
            X_test, y_test = dataset.test
            for name in cfg.classifiers:
                if name == "knn":
                    model = KNNModel(X_train, y_train,
                                     k=min(cfg.knn_k, len(y_train)))
                else:
                    model = make_classifier(name, cfg, seed).fit(X_train, y_train)
                cells[name][label].append(evaluate(model, X_test, y_test))

    dims = {label: int(matrices[label].shape[1]) for label in cfg.feature_configs}
    return ExperimentResult(config=cfg, cells=cells, dims=dims)
