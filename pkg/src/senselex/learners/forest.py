"""CART decision trees and a bagged random forest.

Splits minimize weighted Gini impurity; candidate thresholds are midpoints
between consecutive distinct feature values.  All tie-breaks are
deterministic and label-symmetric: equal-gain splits prefer the lower
feature index then lower threshold, leaf ties follow the lowest-index
training sample in the leaf, and forest vote ties follow the first tree.
"""

from __future__ import annotations

import math

import numpy as np


class _Node:
    __slots__ = ("feature", "threshold", "left", "right", "label")

    def __init__(self, label=None, feature=None, threshold=None,
                 left=None, right=None):
        self.label = label
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right

    @property
    def is_leaf(self) -> bool:
        return self.label is not None


def _gini(counts: np.ndarray, total: int) -> float:
    if total == 0:
        return 0.0
    p = counts / total
    return 1.0 - float(p @ p)


class DecisionTree:
    """Single CART classifier; the forest's building block."""

    def __init__(self, max_features: int | None = None, max_depth: int | None = None,
                 min_samples_split: int = 2, rng: np.random.Generator | None = None):
        self.max_features = max_features
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.rng = rng or np.random.default_rng(0)
        self.classes: list = []
        self.root: _Node | None = None

    def fit(self, X, y) -> "DecisionTree":
        X = np.asarray(X, dtype=np.float64)
        self.classes = sorted(set(y))
        class_index = {c: i for i, c in enumerate(self.classes)}
        y_idx = np.array([class_index[label] for label in y])
        order = np.arange(len(y_idx))
        self.root = self._build(X, y_idx, order, depth=0)
        return self

    def _leaf(self, y_idx: np.ndarray, order: np.ndarray) -> _Node:
        counts = np.bincount(y_idx[order], minlength=len(self.classes))
        best = counts.max()
        tied = {i for i in range(len(self.classes)) if counts[i] == best}
        # Tie-break: class of the earliest training sample in this leaf.
        for idx in sorted(order):
            if y_idx[idx] in tied:
                return _Node(label=self.classes[int(y_idx[idx])])
        raise AssertionError("leaf without samples")

    def _build(self, X, y_idx, order, depth) -> _Node:
        labels_here = y_idx[order]
        if (len(order) < self.min_samples_split
                or len(set(labels_here.tolist())) == 1
                or (self.max_depth is not None and depth >= self.max_depth)):
            return self._leaf(y_idx, order)

        d = X.shape[1]
        if self.max_features is not None and self.max_features < d:
            features = np.sort(self.rng.choice(d, size=self.max_features,
                                               replace=False))
        else:
            features = np.arange(d)

        n_classes = len(self.classes)
        total = len(order)
        parent_counts = np.bincount(labels_here, minlength=n_classes)
        best_score = _gini(parent_counts, total)
        best_split = None
        for f in features:
            values = X[order, f]
            sort = np.argsort(values, kind="stable")
            sorted_vals = values[sort]
            sorted_labels = labels_here[sort]
            left_counts = np.zeros(n_classes)
            right_counts = parent_counts.astype(np.float64).copy()
            for pos in range(total - 1):
                c = sorted_labels[pos]
                left_counts[c] += 1
                right_counts[c] -= 1
                if sorted_vals[pos] == sorted_vals[pos + 1]:
                    continue
                threshold = (sorted_vals[pos] + sorted_vals[pos + 1]) / 2.0
                n_left = pos + 1
                score = (n_left * _gini(left_counts, n_left)
                         + (total - n_left) * _gini(right_counts, total - n_left)
                         ) / total
                if score < best_score - 1e-12:
                    best_score = score
                    best_split = (int(f), float(threshold))
        if best_split is None:
            return self._leaf(y_idx, order)

        f, threshold = best_split
        mask = X[order, f] <= threshold
        left_order = order[mask]
        right_order = order[~mask]
        if len(left_order) == 0 or len(right_order) == 0:
            return self._leaf(y_idx, order)
        return _Node(feature=f, threshold=threshold,
                     left=self._build(X, y_idx, left_order, depth + 1),
                     right=self._build(X, y_idx, right_order, depth + 1))

    def predict_one(self, row) -> object:
        node = self.root
        if node is None:
            raise RuntimeError("model is not fitted")
        while not node.is_leaf:
            node = node.left if row[node.feature] <= node.threshold else node.right
        return node.label

    def predict(self, X) -> list:
        X = np.asarray(X, dtype=np.float64)
        return [self.predict_one(row) for row in X]


class RandomForest:
    """Bagged CART trees with sqrt-feature sampling and majority vote."""

    def __init__(self, n_trees: int = 100, max_features: int | str | None = "sqrt",
                 max_depth: int | None = None, bootstrap: bool = True,
                 seed: int = 0):
        if n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        self.n_trees = n_trees
        self.max_features = max_features
        self.max_depth = max_depth
        self.bootstrap = bootstrap
        self.seed = seed
        self.trees: list[DecisionTree] = []

    def _resolve_max_features(self, d: int) -> int | None:
        if self.max_features == "sqrt":
            return max(1, int(math.sqrt(d)))
        if self.max_features is None:
            return None
        return int(self.max_features)

    def fit(self, X, y) -> "RandomForest":
        X = np.asarray(X, dtype=np.float64)
        y = list(y)
        n, d = X.shape
        max_features = self._resolve_max_features(d)
        self.trees = []
        for child_seed in np.random.SeedSequence(self.seed).spawn(self.n_trees):
            rng = np.random.default_rng(child_seed)
            if self.bootstrap:
                sample = rng.integers(0, n, size=n)
            else:
                sample = np.arange(n)
            tree = DecisionTree(max_features=max_features,
                                max_depth=self.max_depth, rng=rng)
            tree.fit(X[sample], [y[int(i)] for i in sample])
            self.trees.append(tree)
        return self

    def predict_one(self, row) -> object:
        votes: dict = {}
        first_vote = None
        for tree in self.trees:
            label = tree.predict_one(row)
            if first_vote is None:
                first_vote = label
            votes[label] = votes.get(label, 0) + 1
        best = max(votes.values())
        winners = [label for label, count in votes.items() if count == best]
        if len(winners) == 1:
            return winners[0]
        return first_vote  # exact vote tie: defer to the first tree

    def predict(self, X) -> list:
        X = np.asarray(X, dtype=np.float64)
        return [self.predict_one(row) for row in X]


def train_random_forest(X, y, n_trees: int = 100, max_features="sqrt",
                        seed: int = 0, **kwargs) -> RandomForest:
    return RandomForest(n_trees=n_trees, max_features=max_features,
                        seed=seed, **kwargs).fit(X, y)
