"""Shared test utilities: dense matrix oracles and random circuit generation.

The dense oracle builds every gate as an explicit 2^n x 2^n matrix by
looping over basis states, so it shares no code path with the simulator's
sliced in-place kernels.
"""
from __future__ import annotations

import numpy as np

from qencbench.simulator import Circuit, GateKind, GateOp, matrix_1q


def kron_1q(matrix: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Embed a 2x2 matrix on `qubit` (qubit 0 = most significant bit)."""
    out = np.eye(1, dtype=complex)
    for q in range(n):
        out = np.kron(out, matrix if q == qubit else np.eye(2))
    return out


def _bit(index: int, qubit: int, n: int) -> int:
    return (index >> (n - 1 - qubit)) & 1


def dense_gate_matrix(gate: GateOp, n: int) -> np.ndarray:
    """Explicit 2^n x 2^n unitary of one gate, built basis state by basis state."""
    dim = 2**n
    if gate.kind in (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.H, GateKind.U1Q):
        return kron_1q(matrix_1q(gate), gate.target, n)
    if gate.kind is GateKind.RZZ:
        diag = np.empty(dim, dtype=complex)
        for i in range(dim):
            parity = _bit(i, gate.target, n) ^ _bit(i, gate.partner, n)
            diag[i] = np.exp(0.5j * gate.angle) if parity else np.exp(-0.5j * gate.angle)
        return np.diag(diag)
    if gate.kind is GateKind.CNOT:
        out = np.zeros((dim, dim), dtype=complex)
        for i in range(dim):
            if all(_bit(i, q, n) == pol for q, pol in gate.controls):
                out[i ^ (1 << (n - 1 - gate.target)), i] = 1.0
            else:
                out[i, i] = 1.0
        return out
    if gate.kind is GateKind.MCRY:
        out = np.eye(dim, dtype=complex)
        m = matrix_1q(gate)
        for i in range(dim):
            if _bit(i, gate.target, n) == 0 and all(
                _bit(i, q, n) == pol for q, pol in gate.controls
            ):
                j = i | (1 << (n - 1 - gate.target))
                out[i, i], out[i, j] = m[0, 0], m[0, 1]
                out[j, i], out[j, j] = m[1, 0], m[1, 1]
        return out
    raise ValueError(f"unsupported gate kind {gate.kind}")


def dense_circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Matrix product of all gate matrices, in application order."""
    out = np.eye(2**circuit.num_qubits, dtype=complex)
    for gate in circuit.gates:
        out = dense_gate_matrix(gate, circuit.num_qubits) @ out
    return out


def random_unitary_2x2(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random 2x2 unitary via QR of a complex Gaussian matrix."""
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_circuit(rng: np.random.Generator, num_qubits: int, num_gates: int) -> Circuit:
    """Random mix of every supported gate kind on distinct qubits."""
    from qencbench.simulator import cnot, h, mcry, rx, ry, rz, rzz, u1q

    gates = []
    for _ in range(num_gates):
        kind = rng.integers(0, 8)
        angle = float(rng.uniform(0, 2 * np.pi))
        if kind == 0:
            gates.append(rx(int(rng.integers(num_qubits)), angle))
        elif kind == 1:
            gates.append(ry(int(rng.integers(num_qubits)), angle))
        elif kind == 2:
            gates.append(rz(int(rng.integers(num_qubits)), angle))
        elif kind == 3:
            gates.append(h(int(rng.integers(num_qubits))))
        elif kind == 4 and num_qubits >= 2:
            c, t = rng.choice(num_qubits, size=2, replace=False)
            gates.append(cnot(int(c), int(t), polarity=int(rng.integers(2))))
        elif kind == 5 and num_qubits >= 2:
            a, b = rng.choice(num_qubits, size=2, replace=False)
            gates.append(rzz(int(a), int(b), angle))
        elif kind == 6 and num_qubits >= 2:
            n_controls = int(rng.integers(1, num_qubits))
            picked = rng.choice(num_qubits, size=n_controls + 1, replace=False)
            controls = tuple((int(q), int(rng.integers(2))) for q in picked[:-1])
            gates.append(mcry(controls, int(picked[-1]), angle))
        else:
            gates.append(u1q(int(rng.integers(num_qubits)), random_unitary_2x2(rng)))
    return Circuit(num_qubits, gates)


def random_state(rng: np.random.Generator, num_qubits: int) -> np.ndarray:
    """Random normalized complex statevector."""
    v = rng.normal(size=2**num_qubits) + 1j * rng.normal(size=2**num_qubits)
    return v / np.linalg.norm(v)
