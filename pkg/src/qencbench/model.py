"""Re-uploading variational classifier built from an encoding block.

One layer = encoding circuit for the input, a trainable R_Y on every qubit,
and a CNOT ring (wrap-around last -> first, then the ascending chain).
The model repeats the layer `num_layers` times, re-uploading the data at
the start of each layer, and measures <Z> on the last qubit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encodings import EncodingSpec, build_encoding, required_qubits
from .simulator import Circuit, GateOp, cnot, expectation_z, run_circuit, ry


@dataclass(frozen=True)
class ModelConfig:
    """Architecture of one classifier: encoding, feature count, layer count."""

    encoding: EncodingSpec
    num_features: int
    num_layers: int
    num_qubits: int = 0

    def __post_init__(self):
        if self.num_layers < 1:
            raise ValueError(f"num_layers must be >= 1, got {self.num_layers}")
        expected = required_qubits(self.encoding.kind, self.num_features)
        if self.num_qubits == 0:
            object.__setattr__(self, "num_qubits", expected)
        elif self.num_qubits != expected:
            raise ValueError(
                f"num_qubits={self.num_qubits} inconsistent with "
                f"{self.encoding.kind} on {self.num_features} features "
                f"(expected {expected})"
            )

    @property
    def num_params(self) -> int:
        return self.num_layers * self.num_qubits


def _assemble(encoding_gates: list[GateOp], config: ModelConfig, theta) -> Circuit:
    """Stack layers around a prebuilt per-layer encoding gate list."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (config.num_params,):
        raise ValueError(
            f"theta must have length {config.num_params}, got shape {theta.shape}"
        )
    n = config.num_qubits
    ring: list[GateOp] = []
    if n > 1:
        ring.append(cnot(n - 1, 0))
        ring += [cnot(q, q + 1) for q in range(n - 1)]
    gates: list[GateOp] = []
    for layer in range(config.num_layers):
        gates += encoding_gates
        gates += [ry(q, float(theta[layer * n + q])) for q in range(n)]
        gates += ring
    return Circuit(n, gates)


def build_model_circuit(x, config: ModelConfig, theta) -> Circuit:
    """Full circuit: `num_layers` repetitions of encoding + R_Y(theta) + ring.

    `theta` is layer-major: theta[layer * n + qubit].
    """
    return _assemble(build_encoding(x, config.encoding).gates, config, theta)


def forward(x, config: ModelConfig, theta) -> float:
    """Simulate from |0...0> and return <Z> on the last qubit, in [-1, 1]."""
    state = run_circuit(build_model_circuit(x, config, theta))
    return expectation_z(state, config.num_qubits - 1)


def probability(z_expectation: float) -> float:
    """Map <Z> in [-1, 1] to a class-1 probability in [0, 1]."""
    return (1.0 - z_expectation) / 2.0


def predict(x, config: ModelConfig, theta) -> int:
    """Class label: 1 iff the class-1 probability exceeds 0.5 (ties -> 0)."""
    return 1 if probability(forward(x, config, theta)) > 0.5 else 0
