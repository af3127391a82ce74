"""K-nearest-neighbor classification with fully specified tie-breaking.

Distances are Euclidean over all features with no weighting, so every
coordinate counts equally toward the vote.  Distance ties resolve toward
the lower training index; vote ties toward the tied label whose nearest
representative comes first.
"""

from __future__ import annotations

import numpy as np


class KNNModel:

    def __init__(self, X, y, k: int = 5):
        self.X = np.asarray(X, dtype=np.float64)
        self.y = list(y)
        if not 1 <= k <= len(self.y):
            raise ValueError(f"k must be in [1, {len(self.y)}]")
        self.k = k

    def predict_one(self, query) -> object:
        query = np.asarray(query, dtype=np.float64)
        d2 = np.sum((self.X - query) ** 2, axis=1)
        order = np.argsort(d2, kind="stable")[:self.k]
        votes: dict = {}
        for idx in order:
            label = self.y[int(idx)]
            votes[label] = votes.get(label, 0) + 1
        best = max(votes.values())
        winners = {label for label, count in votes.items() if count == best}
        for idx in order:
            label = self.y[int(idx)]
            if label in winners:
                return label
        raise AssertionError("unreachable: some neighbor holds a winning label")

    def predict(self, X) -> list:
        return [self.predict_one(row) for row in np.asarray(X, dtype=np.float64)]


def knn_predict(train_X, train_y, query, k: int = 5):
    """Label a single query point against the training set."""
    return KNNModel(train_X, train_y, k=k).predict_one(query)
