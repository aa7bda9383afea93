"""Mini-batch SGD training of the classifier with parameter-shift gradients.

The trainable R_Y angles admit the exact shift identity
d<Z>/d(theta_i) = [f(theta_i + pi/2) - f(theta_i - pi/2)] / 2, which is
chained through the binary cross-entropy on p = (1 - <Z>) / 2. Everything
is seeded: fixed (dataset order, seed, configs) give bit-identical runs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import model
from .encodings import build_encoding
from .metrics import accuracy
from .model import ModelConfig, forward, predict, probability
from .simulator import expectation_z, run_circuit

PROB_EPS = 1e-12


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 5
    learning_rate: float = 0.1
    batch_size: int = 32
    seed: int = 0
    loss: str = "bce"

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.learning_rate < 0:
            raise ValueError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.loss != "bce":
            raise ValueError(f"unsupported loss {self.loss!r}")


@dataclass
class TrainHistory:
    """Per-epoch training accuracy plus the trained parameters."""

    epoch_train_accuracy: list[float]
    final_params: np.ndarray


def binary_cross_entropy(p: float, y: int) -> float:
    """-[y ln p + (1-y) ln(1-p)] with p clamped away from 0 and 1."""
    p = min(max(p, PROB_EPS), 1.0 - PROB_EPS)
    return -(y * np.log(p) + (1 - y) * np.log(1.0 - p))


def sample_loss(x, y: int, config: ModelConfig, theta) -> float:
    """Cross-entropy of one sample under the current parameters."""
    return binary_cross_entropy(probability(forward(x, config, theta)), y)


def grad_params(x, y: int, config: ModelConfig, theta) -> np.ndarray:
    """Gradient of the sample loss w.r.t. every trainable angle.

    Uses the parameter-shift rule for d<Z>/d(theta_i) and the analytic
    chain dLoss/dp * dp/d<Z> with dp/d<Z> = -1/2. The encoding block is
    built once; only the shifted trainable angles change between the
    2 * len(theta) evaluations.
    """
    theta = np.asarray(theta, dtype=float)
    encoding_gates = build_encoding(x, config.encoding).gates
    measured = config.num_qubits - 1

    def z_value(angles) -> float:
        circuit = model._assemble(encoding_gates, config, angles)
        return expectation_z(run_circuit(circuit), measured)

    p = probability(z_value(theta))
    p = min(max(p, PROB_EPS), 1.0 - PROB_EPS)
    dloss_dp = (p - y) / (p * (1.0 - p))

    grad = np.empty(len(theta))
    shifted = theta.copy()
    for i in range(len(theta)):
        shifted[i] = theta[i] + np.pi / 2.0
        z_plus = z_value(shifted)
        shifted[i] = theta[i] - np.pi / 2.0
        z_minus = z_value(shifted)
        shifted[i] = theta[i]
        grad[i] = dloss_dp * (-0.5) * (z_plus - z_minus) / 2.0
    return grad


def train(features, labels, config: ModelConfig, tcfg: TrainConfig) -> TrainHistory:
    """Seeded mini-batch SGD; records full-train accuracy after each epoch.

    Parameters start uniform in [0, 2*pi). Each epoch shuffles the sample
    order (seeded), then steps theta <- theta - lr * mean batch gradient.
    """
    features = np.asarray(features, dtype=float)
    labels = np.asarray(labels)
    if len(features) == 0:
        raise ValueError("training dataset is empty")
    if len(features) != len(labels):
        raise ValueError(
            f"features and labels differ in length: {len(features)} vs {len(labels)}"
        )

    rng = np.random.default_rng(tcfg.seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=config.num_params)

    epoch_accuracy = []
    for _ in range(tcfg.epochs):
        order = rng.permutation(len(features))
        for start in range(0, len(order), tcfg.batch_size):
            batch = order[start : start + tcfg.batch_size]
            grads = np.stack(
                [grad_params(features[i], int(labels[i]), config, theta) for i in batch]
            )
            theta = theta - tcfg.learning_rate * grads.mean(axis=0)
        preds = [predict(features[i], config, theta) for i in range(len(features))]
        epoch_accuracy.append(accuracy(preds, labels))
    return TrainHistory(epoch_accuracy, theta)
