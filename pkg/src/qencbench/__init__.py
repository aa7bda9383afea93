"""Benchmark toolkit for classical-to-quantum data encodings.

Builds five feature-map circuits, a data re-uploading variational
classifier trained with parameter-shift gradients, and a benchmark harness
that sweeps encodings over feature/layer grids on binary datasets.
"""
from .bench import GridSpec, RunRecord, emit_results, run_grid
from .data import (
    LabeledDataset,
    PcaModel,
    cap_samples,
    l2_normalize,
    load_csv,
    load_mnist_idx,
    pca_fit,
    pca_transform,
    rescale_to_range,
    select_features,
    split_train_test,
    synth_binary_dataset,
)
from .encodings import (
    AMPLITUDE,
    ENCODING_KINDS,
    ENTANGLED_ANGLE,
    IQP,
    PI4_ANGLE,
    SIMPLE_ANGLE,
    EncodingSpec,
    amplitude_angles,
    build_encoding,
    encode_amplitude,
    encode_entangled_angle,
    encode_iqp,
    encode_pi4_angle,
    encode_simple_angle,
    required_qubits,
)
from .metrics import accuracy, f1_score
from .model import ModelConfig, build_model_circuit, forward, predict
from .simulator import (
    Circuit,
    GateKind,
    GateOp,
    StateVector,
    apply_circuit,
    apply_gate,
    expectation_z,
    run_circuit,
    zero_state,
)
from .training import TrainConfig, TrainHistory, binary_cross_entropy, grad_params, train

__version__ = "0.1.0"
