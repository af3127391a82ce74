"""Support vector machines: a linear primal solver and a Gaussian-kernel dual.

LinearSVM minimizes the L2-regularized hinge loss by stochastic
subgradient descent (Pegasos schedule, bias absorbed as a constant
feature).  RBFSVM solves the dual by pairwise coordinate ascent in the
style of sequential minimal optimization.  Both are deterministic given
their seed, and both fall back to a constant predictor when the training
labels are all identical (the optimization problem is degenerate there).
"""

from __future__ import annotations

import numpy as np


def _binary_classes(y) -> list:
    classes = sorted(set(y))
    if len(classes) > 2:
        raise ValueError("binary classifiers support at most two classes")
    return classes


def _signs(y, classes) -> np.ndarray:
    # classes[0] -> -1, classes[1] -> +1
    return np.array([1.0 if label == classes[-1] else -1.0 for label in y])


class LinearSVM:
    """L2-regularized hinge-loss linear classifier."""

    def __init__(self, C: float = 1.0, epochs: int = 20, seed: int = 0):
        if C <= 0:
            raise ValueError("C must be positive")
        self.C = C
        self.epochs = epochs
        self.seed = seed
        self.w: np.ndarray | None = None
        self.classes: list = []
        self._constant = None

    def fit(self, X, y) -> "LinearSVM":
        X = np.asarray(X, dtype=np.float64)
        self.classes = _binary_classes(y)
        if len(self.classes) == 1:
            self._constant = self.classes[0]
            return self
        signs = _signs(y, self.classes)
        n, d = X.shape
        Xa = np.hstack([X, np.ones((n, 1))])  # constant column carries the bias
        lam = 1.0 / (self.C * n)
        w = np.zeros(d + 1)
        rng = np.random.default_rng(self.seed)
        t = 0
        for _ in range(self.epochs):
            for i in rng.permutation(n):
                t += 1
                eta = 1.0 / (lam * t)
                margin = signs[i] * float(w @ Xa[i])
                w *= 1.0 - eta * lam  # = 1 - 1/t
                if margin < 1.0:
                    w += eta * signs[i] * Xa[i]
        self.w = w
        return self

    def decision_function(self, X) -> np.ndarray:
        if self.w is None:
            raise RuntimeError("model is not fitted")
        X = np.asarray(X, dtype=np.float64)
        return np.hstack([X, np.ones((len(X), 1))]) @ self.w

    def predict(self, X) -> list:
        X = np.asarray(X, dtype=np.float64)
        if self._constant is not None:
            return [self._constant] * len(X)
        return [self.classes[1] if v >= 0 else self.classes[0]
                for v in self.decision_function(X)]


def train_linear_svm(X, y, C: float = 1.0, epochs: int = 20, seed: int = 0) -> LinearSVM:
    return LinearSVM(C=C, epochs=epochs, seed=seed).fit(X, y)


def rbf_kernel(A, B, gamma: float) -> np.ndarray:
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    aa = np.sum(A * A, axis=1)[:, None]
    bb = np.sum(B * B, axis=1)[None, :]
    d2 = np.maximum(aa + bb - 2.0 * (A @ B.T), 0.0)
    return np.exp(-gamma * d2)


class RBFSVM:
    """Gaussian-kernel SVM fit by SMO-style pairwise dual updates.

    gamma defaults to 1/d; C defaults to 1.
    """

    def __init__(self, C: float = 1.0, gamma: float | None = None, seed: int = 0,
                 tol: float = 1e-3, max_passes: int = 10, max_iter: int = 20000):
        if C <= 0:
            raise ValueError("C must be positive")
        self.C = C
        self.gamma = gamma
        self.seed = seed
        self.tol = tol
        self.max_passes = max_passes
        self.max_iter = max_iter
        self.classes: list = []
        self._constant = None
        self.alpha_y: np.ndarray | None = None
        self.support: np.ndarray | None = None
        self.b = 0.0

    def fit(self, X, y) -> "RBFSVM":
        X = np.asarray(X, dtype=np.float64)
        self.classes = _binary_classes(y)
        if len(self.classes) == 1:
            self._constant = self.classes[0]
            return self
        signs = _signs(y, self.classes)
        n, d = X.shape
        gamma = self.gamma if self.gamma is not None else 1.0 / d
        K = rbf_kernel(X, X, gamma)

        rng = np.random.default_rng(self.seed)
        alpha = np.zeros(n)
        b = 0.0
        passes = 0
        iters = 0
        while passes < self.max_passes and iters < self.max_iter:
            changed = 0
            for i in range(n):
                iters += 1
                Ei = float((alpha * signs) @ K[:, i]) + b - signs[i]
                if not ((signs[i] * Ei < -self.tol and alpha[i] < self.C)
                        or (signs[i] * Ei > self.tol and alpha[i] > 0)):
                    continue
                j = int(rng.integers(n - 1))
                if j >= i:
                    j += 1
                Ej = float((alpha * signs) @ K[:, j]) + b - signs[j]
                ai_old, aj_old = alpha[i], alpha[j]
                if signs[i] == signs[j]:
                    lo = max(0.0, ai_old + aj_old - self.C)
                    hi = min(self.C, ai_old + aj_old)
                else:
                    lo = max(0.0, aj_old - ai_old)
                    hi = min(self.C, self.C + aj_old - ai_old)
                if lo == hi:
                    continue
                eta = 2.0 * K[i, j] - K[i, i] - K[j, j]
                if eta >= 0:
                    continue
                aj = aj_old - signs[j] * (Ei - Ej) / eta
                aj = min(hi, max(lo, aj))
                if abs(aj - aj_old) < 1e-7:
                    continue
                ai = ai_old + signs[i] * signs[j] * (aj_old - aj)
                alpha[i], alpha[j] = ai, aj
                b1 = (b - Ei - signs[i] * (ai - ai_old) * K[i, i]
                      - signs[j] * (aj - aj_old) * K[i, j])
                b2 = (b - Ej - signs[i] * (ai - ai_old) * K[i, j]
                      - signs[j] * (aj - aj_old) * K[j, j])
                if 0 < ai < self.C:
                    b = b1
                elif 0 < aj < self.C:
                    b = b2
                else:
                    b = (b1 + b2) / 2.0
                changed += 1
            passes = passes + 1 if changed == 0 else 0

        keep = alpha > 1e-10
        self._gamma = gamma
        self._sv_X = X[keep]
        self.alpha_y = (alpha * signs)[keep]
        self.support = np.flatnonzero(keep)
        self.b = b
        return self

    def decision_function(self, X) -> np.ndarray:
        if self._constant is not None:
            raise RuntimeError("degenerate single-class model has no decision function")
        if self.alpha_y is None:
            raise RuntimeError("model is not fitted")
        if len(self.alpha_y) == 0:
            return np.full(len(np.asarray(X)), self.b)
        K = rbf_kernel(X, self._sv_X, self._gamma)
        return K @ self.alpha_y + self.b

    def predict(self, X) -> list:
        X = np.asarray(X, dtype=np.float64)
        if self._constant is not None:
            return [self._constant] * len(X)
        return [self.classes[1] if v >= 0 else self.classes[0]
                for v in self.decision_function(X)]


def train_rbf_svm(X, y, C: float = 1.0, gamma: float | None = None,
                  seed: int = 0) -> RBFSVM:
    return RBFSVM(C=C, gamma=gamma, seed=seed).fit(X, y)
