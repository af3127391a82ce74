"""Metrics against hand-computed confusion-matrix values (tolerance 1e-12)."""

import pytest

from senselex.learners.metrics import (
    confusion_matrix,
    evaluate,
    metrics_from_predictions,
)

TOL = 1e-12

# Each fixture: (y_true, y_pred, accuracy, macro_p, macro_r, macro_f1),
# worked out from the confusion matrix by hand.
HAND_FIXTURES = [
    # balanced binary, half right
    (["p", "p", "n", "n"], ["p", "n", "p", "n"], 1 / 2, 1 / 2, 1 / 2, 1 / 2),
    # perfect predictions
    (["p", "p", "n"], ["p", "p", "n"], 1.0, 1.0, 1.0, 1.0),
    # all-positive predictions on a balanced set
    (["p", "p", "n", "n"], ["p", "p", "p", "p"],
     1 / 2, 1 / 4, 1 / 2, 1 / 3),
    # three classes: P = (1 + 1/2 + 2/3)/3, R = (1/2 + 1/2 + 1)/3,
    # F1 = (2/3 + 1/2 + 4/5)/3
    (["a", "a", "b", "b", "c", "c"], ["a", "b", "b", "c", "c", "c"],
     2 / 3, 13 / 18, 2 / 3, 59 / 90),
    # skewed binary: both classes land on F1 = 1/2
    (["p", "p", "p", "n"], ["p", "n", "n", "n"],
     1 / 2, 2 / 3, 2 / 3, 1 / 2),
]


@pytest.mark.parametrize("y_true,y_pred,acc,prec,rec,f1", HAND_FIXTURES)
def test_hand_fixtures(y_true, y_pred, acc, prec, rec, f1):
    m = metrics_from_predictions(y_true, y_pred)
    assert m.accuracy == pytest.approx(acc, abs=TOL)
    assert m.precision == pytest.approx(prec, abs=TOL)
    assert m.recall == pytest.approx(rec, abs=TOL)
    assert m.f1 == pytest.approx(f1, abs=TOL)


def test_accuracy_is_trace_over_n():
    y_true = ["a", "b", "a", "b", "b"]
    y_pred = ["a", "a", "a", "b", "a"]
    labels, matrix = confusion_matrix(y_true, y_pred)
    trace = sum(matrix[i][i] for i in range(len(labels)))
    m = metrics_from_predictions(y_true, y_pred)
    assert m.accuracy == trace / len(y_true)


def test_all_metrics_bounded():
    m = metrics_from_predictions(["p", "n", "p"], ["n", "n", "n"])
    for value in (m.accuracy, m.precision, m.recall, m.f1,
                  m.micro_precision, m.micro_recall, m.micro_f1):
        assert 0.0 <= value <= 1.0


def test_micro_reported_alongside_macro():
    m = metrics_from_predictions(["p", "p", "n", "n"], ["p", "p", "p", "p"])
    assert m.micro_precision == pytest.approx(1 / 2, abs=TOL)
    assert m.micro_recall == pytest.approx(1 / 2, abs=TOL)
    payload = m.to_json_dict()
    assert "macro" in payload and "micro" in payload


def test_evaluate_uses_model_predictions():
    class Stub:
        def predict(self, X):
            return ["p"] * len(X)

    m = evaluate(Stub(), [[0], [1]], ["p", "n"])
    assert m.accuracy == 0.5


def test_empty_test_set_rejected():
    with pytest.raises(ValueError):
        metrics_from_predictions([], [])
