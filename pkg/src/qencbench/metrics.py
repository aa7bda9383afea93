"""Binary classification metrics."""
from __future__ import annotations

import numpy as np


def _check_pair(predictions, labels) -> tuple[np.ndarray, np.ndarray]:
    predictions = np.asarray(predictions)
    labels = np.asarray(labels)
    if predictions.shape != labels.shape:
        raise ValueError(
            f"predictions and labels differ in shape: "
            f"{predictions.shape} vs {labels.shape}"
        )
    if predictions.size == 0:
        raise ValueError("metrics need at least one sample")
    return predictions, labels


def accuracy(predictions, labels) -> float:
    """Fraction of exact matches."""
    predictions, labels = _check_pair(predictions, labels)
    return float(np.count_nonzero(predictions == labels)) / predictions.size


def f1_score(predictions, labels, positive: int = 1) -> float:
    """Harmonic mean of precision and recall; 0.0 when there are no true positives."""
    predictions, labels = _check_pair(predictions, labels)
    tp = int(np.count_nonzero((predictions == positive) & (labels == positive)))
    fp = int(np.count_nonzero((predictions == positive) & (labels != positive)))
    fn = int(np.count_nonzero((predictions != positive) & (labels == positive)))
    if tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2.0 * precision * recall / (precision + recall)
