"""Tests for the re-uploading classifier circuit and its evaluation."""
import numpy as np
import pytest
from helpers import dense_circuit_unitary, kron_1q

from qencbench.encodings import AMPLITUDE, IQP, SIMPLE_ANGLE, EncodingSpec
from qencbench.model import ModelConfig, build_model_circuit, forward, predict, probability
from qencbench.simulator import GateKind


def simple_config(n_features=2, n_layers=1, axis="x"):
    return ModelConfig(EncodingSpec(SIMPLE_ANGLE, axis=axis), n_features, n_layers)


# --- configuration ---

def test_num_qubits_derived_from_encoding():
    assert simple_config(4, 2).num_qubits == 4
    assert ModelConfig(EncodingSpec(AMPLITUDE), 8, 2).num_qubits == 3
    assert ModelConfig(EncodingSpec(AMPLITUDE), 4, 4).num_qubits == 2


def test_num_qubits_mismatch_rejected():
    with pytest.raises(ValueError):
        ModelConfig(EncodingSpec(SIMPLE_ANGLE), 4, 2, num_qubits=3)


def test_param_count_over_benchmark_grid():
    for kind in (SIMPLE_ANGLE, AMPLITUDE, IQP):
        for n in (4, 6, 8):
            for m in (2, 4):
                config = ModelConfig(EncodingSpec(kind), n, m)
                assert config.num_params == m * config.num_qubits


# --- circuit structure ---

def test_single_layer_gate_list():
    x = [0.3, 0.6]
    theta = [1.0, 2.0]
    circuit = build_model_circuit(x, simple_config(), theta)
    kinds = [g.kind for g in circuit.gates]
    assert kinds == [GateKind.RX, GateKind.RX, GateKind.RY, GateKind.RY,
                     GateKind.CNOT, GateKind.CNOT]
    assert [g.target for g in circuit.gates[:4]] == [0, 1, 0, 1]
    assert [g.angle for g in circuit.gates[:4]] == [0.3, 0.6, 1.0, 2.0]
    ring = circuit.gates[4:]
    assert [(g.controls[0][0], g.target) for g in ring] == [(1, 0), (0, 1)]


def test_reuploading_doubles_gate_count():
    x = [0.3, 0.6, 0.1]
    one = build_model_circuit(x, simple_config(3, 1), np.zeros(3))
    two = build_model_circuit(x, simple_config(3, 2), np.zeros(6))
    assert len(two.gates) == 2 * len(one.gates)


def test_theta_length_checked():
    with pytest.raises(ValueError):
        build_model_circuit([0.1, 0.2], simple_config(2, 2), np.zeros(3))


def test_single_qubit_model_has_no_ring():
    config = ModelConfig(EncodingSpec(AMPLITUDE), 2, 2)
    assert config.num_qubits == 1
    circuit = build_model_circuit([0.6, 0.8], config, np.zeros(2))
    assert all(g.kind is not GateKind.CNOT for g in circuit.gates)


# --- forward ---

def test_forward_all_zero_is_plus_one():
    assert forward([0.0, 0.0], simple_config(), np.zeros(2)) == 1.0


def test_forward_bounded():
    rng = np.random.default_rng(0)
    for kind in (SIMPLE_ANGLE, IQP):
        config = ModelConfig(EncodingSpec(kind), 3, 2)
        for _ in range(5):
            z = forward(rng.uniform(0, np.pi / 2, 3), config,
                        rng.uniform(0, 2 * np.pi, config.num_params))
            assert -1.0 - 1e-12 <= z <= 1.0 + 1e-12


def test_forward_matches_dense_chain_two_qubits():
    rng = np.random.default_rng(1)
    config = simple_config(2, 1)
    for _ in range(10):
        x = rng.uniform(0, np.pi / 2, 2)
        theta = rng.uniform(0, 2 * np.pi, 2)
        circuit = build_model_circuit(x, config, theta)
        unitary = dense_circuit_unitary(circuit)
        psi = unitary @ np.array([1, 0, 0, 0], dtype=complex)
        z_pauli = kron_1q(np.diag([1.0, -1.0]).astype(complex), 1, 2)
        expected = float(np.real(psi.conj() @ z_pauli @ psi))
        assert abs(forward(x, config, theta) - expected) < 1e-10


def test_forward_matches_dense_chain_three_qubits():
    rng = np.random.default_rng(2)
    for kind in (SIMPLE_ANGLE, IQP):
        config = ModelConfig(EncodingSpec(kind), 3, 1)
        x = rng.uniform(0, np.pi / 2, 3)
        theta = rng.uniform(0, 2 * np.pi, 3)
        circuit = build_model_circuit(x, config, theta)
        psi = dense_circuit_unitary(circuit)[:, 0]
        z_pauli = kron_1q(np.diag([1.0, -1.0]).astype(complex), 2, 3)
        expected = float(np.real(psi.conj() @ z_pauli @ psi))
        assert abs(forward(x, config, theta) - expected) < 1e-10


def test_forward_is_deterministic():
    rng = np.random.default_rng(3)
    config = ModelConfig(EncodingSpec(IQP), 3, 2)
    x = rng.uniform(0, np.pi / 2, 3)
    theta = rng.uniform(0, 2 * np.pi, config.num_params)
    assert forward(x, config, theta) == forward(x, config, theta)


# --- predict ---

def test_predict_label_zero_at_plus_one():
    assert predict([0.0, 0.0], simple_config(), np.zeros(2)) == 0


def test_predict_label_one_at_minus_one():
    # R_Y(pi) on both qubits puts |11>; the ring maps it to |01>, so the
    # measured (last) qubit stays |1> and <Z> = -1
    config = simple_config(axis="y")
    assert forward([np.pi, np.pi], config, np.zeros(2)) == -1.0
    assert predict([np.pi, np.pi], config, np.zeros(2)) == 1


def test_predict_tie_goes_to_zero():
    # R_Y(pi/2) on qubit 0 then the ring entangles; <Z> on the last qubit is 0
    config = simple_config(axis="y")
    assert abs(forward([np.pi / 2, 0.0], config, np.zeros(2))) < 1e-12
    assert predict([np.pi / 2, 0.0], config, np.zeros(2)) == 0


def test_probability_map():
    assert probability(1.0) == 0.0
    assert probability(-1.0) == 1.0
    assert probability(0.0) == 0.5
