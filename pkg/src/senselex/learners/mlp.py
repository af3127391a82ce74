"""Fully connected classifier: ReLU hidden layers, softmax output,
cross-entropy loss, mini-batch gradient descent.

The forward/backward pass lives in module-level functions over explicit
parameter lists so tests can verify the analytic gradients against finite
differences on arbitrary parameter settings.
"""

from __future__ import annotations

import numpy as np

from ..errors import NonfiniteLoss


def init_params(layer_sizes: list[int], rng: np.random.Generator
                ) -> list[tuple[np.ndarray, np.ndarray]]:
    """He-scaled normal weights, zero biases, one (W, b) pair per layer."""
    params = []
    for fan_in, fan_out in zip(layer_sizes, layer_sizes[1:]):
        W = rng.standard_normal((fan_in, fan_out)) * np.sqrt(2.0 / fan_in)
        params.append((W, np.zeros(fan_out)))
    return params


def forward(params, X) -> list[np.ndarray]:
    """Activations per layer; the last entry holds raw logits."""
    activations = [np.asarray(X, dtype=np.float64)]
    for layer, (W, b) in enumerate(params):
        z = activations[-1] @ W + b
        if layer < len(params) - 1:
            z = np.maximum(z, 0.0)
        activations.append(z)
    return activations


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def loss_and_gradients(params, X, y_idx
                       ) -> tuple[float, list[tuple[np.ndarray, np.ndarray]]]:
    """Mean cross-entropy and its gradient for every weight and bias."""
    activations = forward(params, X)
    probs = _softmax(activations[-1])
    n = len(y_idx)
    loss = float(-np.mean(np.log(probs[np.arange(n), y_idx] + 1e-300)))

    delta = probs.copy()
    delta[np.arange(n), y_idx] -= 1.0
    delta /= n
    grads: list[tuple[np.ndarray, np.ndarray]] = [None] * len(params)  # type: ignore
    for layer in range(len(params) - 1, -1, -1):
        a_prev = activations[layer]
        grads[layer] = (a_prev.T @ delta, delta.sum(axis=0))
        if layer > 0:
            W, _ = params[layer]
            delta = (delta @ W.T) * (activations[layer] > 0)
    return loss, grads


class MLP:
    """Two-class (or k-class) feed-forward network."""

    def __init__(self, hidden: tuple[int, ...] = (100, 25), epochs: int = 50,
                 lr: float = 0.1, batch_size: int = 32, seed: int = 0):
        self.hidden = tuple(hidden)
        self.epochs = epochs
        self.lr = lr
        self.batch_size = batch_size
        self.seed = seed
        self.classes: list = []
        self.params: list[tuple[np.ndarray, np.ndarray]] = []

    def fit(self, X, y) -> "MLP":
        X = np.asarray(X, dtype=np.float64)
        self.classes = sorted(set(y))
        class_index = {c: i for i, c in enumerate(self.classes)}
        y_idx = np.array([class_index[label] for label in y])
        n = len(y_idx)

        rng = np.random.default_rng(self.seed)
        sizes = [X.shape[1], *self.hidden, len(self.classes)]
        self.params = init_params(sizes, rng)

        for epoch in range(self.epochs):
            order = rng.permutation(n)
            for start in range(0, n, self.batch_size):
                batch = order[start:start + self.batch_size]
                loss, grads = loss_and_gradients(self.params, X[batch], y_idx[batch])
                if not np.isfinite(loss):
                    raise NonfiniteLoss(
                        f"loss became non-finite at epoch {epoch}, "
                        f"batch offset {start} (lr={self.lr})")
                self.params = [(W - self.lr * gW, b - self.lr * gb)
                               for (W, b), (gW, gb) in zip(self.params, grads)]
        return self

    def training_loss(self, X, y) -> float:
        class_index = {c: i for i, c in enumerate(self.classes)}
        y_idx = np.array([class_index[label] for label in y])
        loss, _ = loss_and_gradients(self.params, np.asarray(X, dtype=np.float64), y_idx)
        return loss

    def predict_proba(self, X) -> np.ndarray:
        if not self.params:
            raise RuntimeError("model is not fitted")
        return _softmax(forward(self.params, np.asarray(X, dtype=np.float64))[-1])

    def predict(self, X) -> list:
        probs = self.predict_proba(X)
        return [self.classes[int(i)] for i in np.argmax(probs, axis=1)]


def train_mlp(X, y, hidden: tuple[int, ...] = (100, 25), epochs: int = 50,
              lr: float = 0.1, batch_size: int = 32, seed: int = 0) -> MLP:
    return MLP(hidden=hidden, epochs=epochs, lr=lr, batch_size=batch_size,
               seed=seed).fit(X, y)
