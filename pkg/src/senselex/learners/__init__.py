"""From-scratch classifiers and the experiment harness."""

from .forest import DecisionTree, RandomForest, train_random_forest
from .knn import KNNModel, knn_predict
from .metrics import Metrics, confusion_matrix, evaluate, metrics_from_predictions
from .mlp import MLP, train_mlp
from .svm import LinearSVM, RBFSVM, train_linear_svm, train_rbf_svm

__all__ = [
    "DecisionTree", "RandomForest", "train_random_forest",
    "KNNModel", "knn_predict",
    "Metrics", "confusion_matrix", "evaluate", "metrics_from_predictions",
    "MLP", "train_mlp",
    "LinearSVM", "RBFSVM", "train_linear_svm", "train_rbf_svm",
]
