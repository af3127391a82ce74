"""Confusion-matrix metrics: accuracy plus macro precision/recall/F1.

Macro averages are the headline numbers; micro averages and per-class
values ride along for the JSON reports.  A class never predicted has
precision 0 by convention, and F1 is 0 when precision + recall is 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float               # macro
    recall: float                  # macro
    f1: float                      # macro
    micro_precision: float = 0.0
    micro_recall: float = 0.0
    micro_f1: float = 0.0
    per_class: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "macro": {"precision": self.precision, "recall": self.recall,
                      "f1": self.f1},
            "micro": {"precision": self.micro_precision,
                      "recall": self.micro_recall, "f1": self.micro_f1},
            "per_class": self.per_class,
        }


def confusion_matrix(y_true: Sequence, y_pred: Sequence
                     ) -> tuple[list, list[list[int]]]:
    """Return (sorted labels, matrix) with rows = true, columns = predicted."""
    if len(y_true) != len(y_pred):
        raise ValueError("y_true and y_pred must have the same length")
    if not len(y_true):
        raise ValueError("cannot evaluate an empty test set")
    labels = sorted(set(y_true) | set(y_pred))
    index = {label: i for i, label in enumerate(labels)}
    matrix = [[0] * len(labels) for _ in labels]
    for t, p in zip(y_true, y_pred):
        matrix[index[t]][index[p]] += 1
    return labels, matrix


def metrics_from_predictions(y_true: Sequence, y_pred: Sequence) -> Metrics:
    labels, matrix = confusion_matrix(y_true, y_pred)
    n = len(y_true)
    trace = sum(matrix[i][i] for i in range(len(labels)))
    accuracy = trace / n

    per_class = {}
    tp_total = fp_total = fn_total = 0
    for i, label in enumerate(labels):
        tp = matrix[i][i]
        fn = sum(matrix[i]) - tp
        fp = sum(matrix[r][i] for r in range(len(labels))) - tp
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[str(label)] = {"precision": precision, "recall": recall,
                                 "f1": f1, "support": tp + fn}
        tp_total += tp
        fp_total += fp
        fn_total += fn

    k = len(labels)
    macro_p = sum(c["precision"] for c in per_class.values()) / k
    macro_r = sum(c["recall"] for c in per_class.values()) / k
    macro_f1 = sum(c["f1"] for c in per_class.values()) / k
    micro_p = tp_total / (tp_total + fp_total) if tp_total + fp_total else 0.0
    micro_r = tp_total / (tp_total + fn_total) if tp_total + fn_total else 0.0
    micro_f1 = (2 * micro_p * micro_r / (micro_p + micro_r)
                if micro_p + micro_r else 0.0)
    return Metrics(accuracy=accuracy, precision=macro_p, recall=macro_r,
                   f1=macro_f1, micro_precision=micro_p, micro_recall=micro_r,
                   micro_f1=micro_f1, per_class=per_class)


def evaluate(model, X_test, y_test) -> Metrics:
    """Predict with the model and score against the held-out labels."""
    return metrics_from_predictions(list(y_test), list(model.predict(X_test)))
