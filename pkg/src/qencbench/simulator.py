"""Dense statevector simulation for small circuits.

Conventions:
- Qubit 0 is the top wire and the most significant bit of the basis index,
  so |q0 q1 ... q_{n-1}> lives at index q0*2^(n-1) + ... + q_{n-1}.
- Gates are exact unitaries; no shots, no noise. Expectation values are
  computed analytically from the amplitudes.
- StateVector and Circuit values are treated as immutable once returned;
  apply_* functions never mutate their inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import cos, sin

import numpy as np

MAX_QUBITS = 24
UNITARY_ATOL = 1e-12


class GateKind(Enum):
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    H = "h"
    CNOT = "cnot"
    RZZ = "rzz"
    MCRY = "mcry"
    U1Q = "u1q"


_ROTATIONS = {GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.RZZ, GateKind.MCRY}


@dataclass
class GateOp:
    """One gate: a kind, a target qubit, and kind-specific extras.

    `controls` holds (qubit, polarity) pairs; polarity 0 is an open control
    (fires on |0>), polarity 1 a closed control (fires on |1>). Only CNOT
    and MCRY carry controls. `partner` is the second qubit of the symmetric
    two-qubit RZZ rotation. `matrix` is the explicit 2x2 unitary of a U1Q.
    """

    kind: GateKind
    target: int
    controls: tuple[tuple[int, int], ...] = ()
    angle: float = 0.0
    partner: int | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        qubits = [self.target]
        for q, pol in self.controls:
            if pol not in (0, 1):
                raise ValueError(f"control polarity must be 0 or 1, got {pol}")
            qubits.append(q)
        if self.partner is not None:
            qubits.append(self.partner)
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"gate qubits must be distinct, got {qubits}")
        if self.kind is GateKind.U1Q:
            m = self.matrix
            if m is None or m.shape != (2, 2):
                raise ValueError("U1Q requires a 2x2 matrix")
            a, b, c, d = (complex(v) for v in m.ravel())
            drift = max(
                abs(a * a.conjugate() + b * b.conjugate() - 1.0),
                abs(c * c.conjugate() + d * d.conjugate() - 1.0),
                abs(a * c.conjugate() + b * d.conjugate()),
            )
            if drift > UNITARY_ATOL:
                raise ValueError(f"U1Q matrix is not unitary (drift {drift:.3g})")
        if self.kind is GateKind.RZZ and self.partner is None:
            raise ValueError("RZZ requires a partner qubit")

    def qubits(self) -> tuple[int, ...]:
        """All qubit indices the gate touches."""
        extra = [q for q, _ in self.controls]
        if self.partner is not None:
            extra.append(self.partner)
        return (self.target, *extra)

    def inverse(self) -> "GateOp":
        """Gate with the reverse action (negated angle / adjoint matrix)."""
        if self.kind in _ROTATIONS:
            return GateOp(self.kind, self.target, self.controls, -self.angle, self.partner)
        if self.kind is GateKind.U1Q:
            return GateOp(self.kind, self.target, matrix=self.matrix.conj().T)
        return self  # H and CNOT are self-inverse


def rx(target: int, angle: float) -> GateOp:
    return GateOp(GateKind.RX, target, angle=angle)


def ry(target: int, angle: float) -> GateOp:
    return GateOp(GateKind.RY, target, angle=angle)


def rz(target: int, angle: float) -> GateOp:
    return GateOp(GateKind.RZ, target, angle=angle)


def h(target: int) -> GateOp:
    return GateOp(GateKind.H, target)


def cnot(control: int, target: int, polarity: int = 1) -> GateOp:
    return GateOp(GateKind.CNOT, target, controls=((control, polarity),))


def rzz(qubit_a: int, qubit_b: int, angle: float) -> GateOp:
    return GateOp(GateKind.RZZ, qubit_a, angle=angle, partner=qubit_b)


def mcry(controls: tuple[tuple[int, int], ...], target: int, angle: float) -> GateOp:
    return GateOp(GateKind.MCRY, target, controls=tuple(controls), angle=angle)


def u1q(target: int, matrix: np.ndarray) -> GateOp:
    return GateOp(GateKind.U1Q, target, matrix=np.asarray(matrix, dtype=complex))


@dataclass
class Circuit:
    """An ordered gate list acting on a fixed-width qubit register."""

    num_qubits: int
    gates: list[GateOp] = field(default_factory=list)

    def __post_init__(self):
        for gate in self.gates:
            _check_indices(gate, self.num_qubits)

    def __len__(self) -> int:
        return len(self.gates)


@dataclass
class StateVector:
    """Complex amplitudes over the 2^n computational basis states."""

    num_qubits: int
    amplitudes: np.ndarray

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def _check_indices(gate: GateOp, num_qubits: int) -> None:
    for q in gate.qubits():
        if not 0 <= q < num_qubits:
            raise IndexError(f"qubit {q} out of range for {num_qubits}-qubit register")


def zero_state(num_qubits: int) -> StateVector:
    """|0...0> on `num_qubits` qubits."""
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ValueError(f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}")
    amps = np.zeros(2**num_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def matrix_1q(gate: GateOp) -> np.ndarray:
    """Explicit 2x2 unitary of a single-qubit gate."""
    half = gate.angle / 2.0
    if gate.kind is GateKind.RX:
        return np.array([[cos(half), -1j * sin(half)], [-1j * sin(half), cos(half)]])
    if gate.kind in (GateKind.RY, GateKind.MCRY):
        return np.array([[cos(half), -sin(half)], [sin(half), cos(half)]], dtype=complex)
    if gate.kind is GateKind.RZ:
        return np.array([[np.exp(-1j * half), 0.0], [0.0, np.exp(1j * half)]])
    if gate.kind is GateKind.H:
        return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    if gate.kind is GateKind.U1Q:
        return gate.matrix.astype(complex)
    raise ValueError(f"{gate.kind} has no plain single-qubit matrix")


_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def _split_target(n: int, target: int, controls) -> tuple[tuple, tuple]:
    """Index pairs selecting target bit 0 / 1 inside the control subspace."""
    idx0 = [slice(None)] * n
    for q, pol in controls:
        idx0[q] = pol
    idx1 = list(idx0)
    idx0[target], idx1[target] = 0, 1
    return tuple(idx0), tuple(idx1)


def _apply_inplace(tensor: np.ndarray, gate: GateOp, n: int) -> None:
    """Apply one gate to the [2]*n state tensor, writing in place."""
    kind = gate.kind
    if kind is GateKind.RZ:
        i0, i1 = _split_target(n, gate.target, ())
        tensor[i0] *= np.exp(-0.5j * gate.angle)
        tensor[i1] *= np.exp(0.5j * gate.angle)
        return
    if kind is GateKind.RZZ:
        same = np.exp(-0.5j * gate.angle)
        diff = np.exp(0.5j * gate.angle)
        idx = [slice(None)] * n
        for bit_a in (0, 1):
            for bit_b in (0, 1):
                idx[gate.target], idx[gate.partner] = bit_a, bit_b
                tensor[tuple(idx)] *= same if bit_a == bit_b else diff
        return
    i0, i1 = _split_target(n, gate.target, gate.controls)
    a0, a1 = tensor[i0], tensor[i1]
    if kind is GateKind.CNOT:
        swapped = np.copy(a0)
        tensor[i0] = a1  # i0 and i1 regions are disjoint, safe to copy across
        tensor[i1] = swapped
        return
    if kind is GateKind.H:
        new0 = (a0 + a1) * _INV_SQRT2
        new1 = (a0 - a1) * _INV_SQRT2
    elif kind in (GateKind.RY, GateKind.MCRY):
        c, s = cos(gate.angle / 2.0), sin(gate.angle / 2.0)
        new0 = c * a0 - s * a1
        new1 = s * a0 + c * a1
    elif kind is GateKind.RX:
        c, s = cos(gate.angle / 2.0), -1j * sin(gate.angle / 2.0)
        new0 = c * a0 + s * a1
        new1 = s * a0 + c * a1
    elif kind is GateKind.U1Q:
        m = gate.matrix
        new0 = m[0, 0] * a0 + m[0, 1] * a1
        new1 = m[1, 0] * a0 + m[1, 1] * a1
    else:
        raise ValueError(f"unsupported gate kind {kind}")
    tensor[i0] = new0
    tensor[i1] = new1


def apply_gate(state: StateVector, gate: GateOp) -> StateVector:
    """Return the gate's unitary applied to `state` (norm preserved)."""
    _check_indices(gate, state.num_qubits)
    n = state.num_qubits
    amps = state.amplitudes.copy()
    _apply_inplace(amps.reshape([2] * n), gate, n)
    return StateVector(n, amps)


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply `circuit.gates` in list order to `state`."""
    if circuit.num_qubits != state.num_qubits:
        raise ValueError(
            f"circuit acts on {circuit.num_qubits} qubits, state has {state.num_qubits}"
        )
    n = state.num_qubits
    amps = state.amplitudes.copy()
    tensor = amps.reshape([2] * n)
    for gate in circuit.gates:
        _apply_inplace(tensor, gate, n)
    return StateVector(n, amps)


def run_circuit(circuit: Circuit) -> StateVector:
    """Simulate `circuit` from |0...0>."""
    return apply_circuit(zero_state(circuit.num_qubits), circuit)


def expectation_z(state: StateVector, qubit: int) -> float:
    """<Z> on one qubit: +1 weight where its bit is 0, -1 where it is 1."""
    n = state.num_qubits
    if not 0 <= qubit < n:
        raise IndexError(f"qubit {qubit} out of range for {n}-qubit state")
    probs = np.abs(state.amplitudes.reshape([2] * n)) ** 2
    idx = [slice(None)] * n
    idx[qubit] = 1
    p_one = float(np.sum(probs[tuple(idx)]))
    return 1.0 - 2.0 * p_one
