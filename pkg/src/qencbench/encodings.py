"""Circuits that map a preprocessed feature vector onto a qubit register.

Five encodings are provided:
- simple:    one R_X or R_Y rotation per feature, one qubit per feature.
- pi4:       per qubit, H followed by a fixed orthogonal rotation whose
             single-qubit output is (cos x, sin x).
- entangled: H + R_Y per qubit, closed by a CNOT ring.
- amplitude: features become the state amplitudes via a binary tree of
             controlled R_Y rotations (input must be L2-normalized).
- iqp:       repeated blocks of H, R_Z and pairwise R_ZZ diagonal gates.

Angle-based encodings expect features already rescaled into rotation range
(radians); the amplitude encoding expects a unit vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log2, pi

import numpy as np

from .simulator import Circuit, GateOp, cnot, h, mcry, rx, ry, rz, rzz, u1q

SIMPLE_ANGLE = "simple"
PI4_ANGLE = "pi4"
ENTANGLED_ANGLE = "entangled"
AMPLITUDE = "amplitude"
IQP = "iqp"

ENCODING_KINDS = (SIMPLE_ANGLE, PI4_ANGLE, ENTANGLED_ANGLE, AMPLITUDE, IQP)

NORM_ATOL = 1e-9


@dataclass(frozen=True)
class EncodingSpec:
    """Which encoding to build, plus its kind-specific options.

    `axis` selects R_X or R_Y and only applies to the simple angle
    encoding; `iqp_layers` is the number of repeated IQP blocks (>= 2).
    """

    kind: str
    axis: str = "x"
    iqp_layers: int = 2

    def __post_init__(self):
        if self.kind not in ENCODING_KINDS:
            raise ValueError(f"unknown encoding kind {self.kind!r}")
        if self.axis not in ("x", "y"):
            raise ValueError(f"axis must be 'x' or 'y', got {self.axis!r}")
        if self.iqp_layers < 2:
            raise ValueError(f"iqp_layers must be >= 2, got {self.iqp_layers}")


def required_qubits(kind: str, num_features: int) -> int:
    """Register width for `num_features` features under an encoding kind."""
    if kind not in ENCODING_KINDS:
        raise ValueError(f"unknown encoding kind {kind!r}")
    if num_features < 2:
        raise ValueError(f"need at least 2 features, got {num_features}")
    if kind == AMPLITUDE:
        return max(1, ceil(log2(num_features)))
    return num_features


def encode_simple_angle(x, axis: str = "x") -> Circuit:
    """One R_axis(x_j) on qubit j per feature."""
    x = np.asarray(x, dtype=float)
    make = rx if axis == "x" else ry
    return Circuit(len(x), [make(j, float(v)) for j, v in enumerate(x)])


def pi4_rotation(x: float) -> np.ndarray:
    """Orthogonal 2x2 rotation by (pi/4 - x); with H|0> it yields (cos x, sin x)."""
    a = pi / 4.0 - x
    return np.array([[np.cos(a), np.sin(a)], [-np.sin(a), np.cos(a)]], dtype=complex)


def encode_pi4_angle(x) -> Circuit:
    """Per qubit j: H, then the pi/4-offset rotation carrying x_j."""
    x = np.asarray(x, dtype=float)
    gates: list[GateOp] = []
    for j, v in enumerate(x):
        gates.append(h(j))
        gates.append(u1q(j, pi4_rotation(float(v))))
    return Circuit(len(x), gates)


def encode_entangled_angle(x) -> Circuit:
    """H + R_Y(x_j) on every qubit, then a CNOT ring j -> j+1, closing n-1 -> 0."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    if n < 2:
        raise ValueError("entangled angle encoding needs at least 2 features")
    gates = [h(j) for j in range(n)]
    gates += [ry(j, float(v)) for j, v in enumerate(x)]
    gates += [cnot(j, j + 1) for j in range(n - 1)]
    gates.append(cnot(n - 1, 0))
    return Circuit(n, gates)


def amplitude_angles(x) -> np.ndarray:
    """Rotation angles of the amplitude-encoding tree, root first.

    The input is zero-padded to length 2^n, then reduced pairwise: each
    reduction level replaces adjacent pairs by their L2 norm and emits the
    angle 2*arcsin(right_child / parent) per pair. A zero parent emits
    angle 0 (the subtree carries no amplitude, so the rotation there is
    unobservable). Output length is 2^n - 1, ordered root level downward.
    """
    x = np.asarray(x, dtype=float)
    total = float(np.sum(x * x))
    if abs(total - 1.0) > NORM_ATOL:
        raise ValueError(f"amplitude input must have unit L2 norm, got {total:.6g}")
    n = required_qubits(AMPLITUDE, len(x))
    padded = np.zeros(2**n, dtype=float)
    padded[: len(x)] = x

    levels = []
    current = padded
    while len(current) > 1:
        right = current[1::2]
        parents = np.sqrt(current[0::2] ** 2 + right**2)
        angles = np.zeros(len(parents))
        nonzero = parents > 0
        # parents come from a sqrt so they are never negative; the reflected
        # 2*pi - 2*arcsin branch can only matter for signed child values
        ratio = np.clip(right[nonzero] / parents[nonzero], -1.0, 1.0)
        angles[nonzero] = np.mod(2.0 * np.arcsin(ratio), 2.0 * pi)
        levels.append(angles)
        current = parents
    return np.concatenate(levels[::-1])


def encode_amplitude(x) -> Circuit:
    """Binary-tree state preparation from the amplitude-encoding angles.

    R_Y(root angle) on qubit 0, then per tree level L >= 1 one controlled
    R_Y on qubit L for every control pattern of qubits 0..L-1, in binary
    order with open control = 0. Simulating on |0...0> reproduces the
    zero-padded input amplitudes for nonnegative inputs.
    """
    x = np.asarray(x, dtype=float)
    angles = amplitude_angles(x)
    n = required_qubits(AMPLITUDE, len(x))
    gates: list[GateOp] = [ry(0, float(angles[0]))]
    pos = 1
    for level in range(1, n):
        for pattern in range(2**level):
            controls = tuple(
                (q, (pattern >> (level - 1 - q)) & 1) for q in range(level)
            )
            gates.append(mcry(controls, level, float(angles[pos])))
            pos += 1
    return Circuit(n, gates)


def encode_iqp(x, layers: int = 2) -> Circuit:
    """`layers` blocks of [H on all qubits; R_Z(x_j); R_ZZ(x_j * x_k) per pair]."""
    if layers < 2:
        raise ValueError(f"IQP embedding needs at least 2 layers, got {layers}")
    x = np.asarray(x, dtype=float)
    n = len(x)
    gates: list[GateOp] = []
    for _ in range(layers):
        gates += [h(j) for j in range(n)]
        gates += [rz(j, float(v)) for j, v in enumerate(x)]
        for j in range(n):
            for k in range(j + 1, n):
                gates.append(rzz(j, k, float(x[j] * x[k])))
    return Circuit(n, gates)


def build_encoding(x, spec: EncodingSpec) -> Circuit:
    """Build the encoding circuit selected by `spec` for feature vector `x`."""
    if spec.kind == SIMPLE_ANGLE:
        return encode_simple_angle(x, axis=spec.axis)
    if spec.kind == PI4_ANGLE:
        return encode_pi4_angle(x)
    if spec.kind == ENTANGLED_ANGLE:
        return encode_entangled_angle(x)
    if spec.kind == AMPLITUDE:
        return encode_amplitude(x)
    return encode_iqp(x, layers=spec.iqp_layers)
