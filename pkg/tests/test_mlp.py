import numpy as np
import pytest

from senselex.errors import NonfiniteLoss
from senselex.learners.mlp import MLP, init_params, loss_and_gradients


def finite_difference_check(params, X, y_idx, eps=1e-5):
    """Max relative error between analytic and central-difference gradients."""
    _, grads = loss_and_gradients(params, X, y_idx)
    worst = 0.0
    for layer, (W, b) in enumerate(params):
        for arr, grad in ((W, grads[layer][0]), (b, grads[layer][1])):
            it = np.nditer(arr, flags=["multi_index"])
            for _ in it:
                idx = it.multi_index
                saved = arr[idx]
                arr[idx] = saved + eps
                loss_plus, _ = loss_and_gradients(params, X, y_idx)
                arr[idx] = saved - eps
                loss_minus, _ = loss_and_gradients(params, X, y_idx)
                arr[idx] = saved
                numeric = (loss_plus - loss_minus) / (2 * eps)
                denom = max(1e-8, abs(numeric) + abs(grad[idx]))
                worst = max(worst, abs(numeric - grad[idx]) / denom)
    return worst


def test_gradient_check_small_net():
    rng = np.random.default_rng(11)
    params = init_params([5, 4, 3, 2], rng)
    X = rng.normal(size=(8, 5))
    y_idx = rng.integers(0, 2, size=8)
    assert finite_difference_check(params, X, y_idx) <= 1e-4


def test_gradient_check_every_layer_shape():
    rng = np.random.default_rng(0)
    params = init_params([3, 6, 2], rng)
    X = rng.normal(size=(5, 3))
    y_idx = rng.integers(0, 2, size=5)
    _, grads = loss_and_gradients(params, X, y_idx)
    for (W, b), (gW, gb) in zip(params, grads):
        assert gW.shape == W.shape and gb.shape == b.shape


def separable_data(seed=0, n=60):
    rng = np.random.default_rng(seed)
    X = np.vstack([rng.normal(size=(n // 2, 4)) + 2.0,
                   rng.normal(size=(n // 2, 4)) - 2.0])
    y = ["positive"] * (n // 2) + ["negative"] * (n // 2)
    return X, y


def test_one_epoch_reduces_training_loss():
    X, y = separable_data()
    frozen = MLP(hidden=(8,), epochs=0, lr=0.01, seed=3).fit(X, y)
    initial = frozen.training_loss(X, y)
    trained = MLP(hidden=(8,), epochs=1, lr=0.01, seed=3).fit(X, y)
    assert trained.training_loss(X, y) <= initial


def test_xor_with_restarts():
    X = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
    y = ["positive", "positive", "negative", "negative"]
    for seed in range(5):
        model = MLP(hidden=(4,), epochs=2000, lr=0.5, batch_size=4,
                    seed=seed).fit(X, y)
        if model.predict(X) == y:
            return
    pytest.fail("XOR not solved within 5 restarts")


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_nonfinite_loss_aborts_with_diagnostics():
    X, y = separable_data(seed=5)
    with pytest.raises(NonfiniteLoss) as err:
        MLP(hidden=(8,), epochs=50, lr=1e18, seed=0).fit(X, y)
    assert "epoch" in str(err.value)


def test_determinism():
    X, y = separable_data(seed=2)
    queries = np.random.default_rng(7).normal(size=(20, 4))
    p1 = MLP(hidden=(6, 3), epochs=5, seed=9).fit(X, y).predict(queries)
    p2 = MLP(hidden=(6, 3), epochs=5, seed=9).fit(X, y).predict(queries)
    assert p1 == p2


def test_default_architecture_matches_reported_setup():
    model = MLP()
    assert model.hidden == (100, 25)
