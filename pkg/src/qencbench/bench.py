"""Benchmark grid runner and result emission.

A grid is (encodings x feature counts x layer counts) on one dataset. Each
cell preprocesses for its encoding (subsample, reduce to N features, rescale
into [0, pi/2]; amplitude encoding additionally L2-normalizes each sample),
trains the classifier, and records per-epoch train accuracy, test accuracy,
F1 and wall time. Cells are seeded independently so any one of them can be
reproduced in isolation; a failing cell is tagged and the grid continues.
"""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from math import pi

import numpy as np

from .data import (
    LabeledDataset,
    cap_samples,
    l2_normalize_rows,
    pca_fit,
    pca_transform,
    rescale_to_range,
    select_features,
)
from .encodings import AMPLITUDE, ENCODING_KINDS, SIMPLE_ANGLE, EncodingSpec
from .metrics import accuracy, f1_score
from .model import ModelConfig, predict
from .training import TrainConfig, train

# Seed offsets within one cell: base seed subsamples the training split,
# +1 subsamples the test split, +2 drives parameter init and shuffling.
CAP_TRAIN_OFFSET = 0
CAP_TEST_OFFSET = 1
TRAIN_OFFSET = 2


@dataclass
class RunRecord:
    """One benchmark row: a (dataset, encoding, N, M) cell and its metrics."""

    dataset: str
    encoding: str
    axis: str | None
    num_features: int
    num_layers: int
    ep_accuracies: list[float]
    test_accuracy: float
    f1: float
    seed: int
    wall_time_s: float
    test_predictions: list[int] = field(default_factory=list)
    error: str | None = None


@dataclass
class GridSpec:
    """Everything run_grid needs: data, the grid axes, and hyperparameters."""

    dataset_name: str
    train: LabeledDataset
    test: LabeledDataset
    encodings: list[str]
    feature_counts: list[int]
    layer_counts: list[int]
    axes: list[str] = field(default_factory=lambda: ["x"])
    reduce: str = "select"
    ranked_features: list[int] | None = None
    train_cap: int = 4000
    test_cap: int = 2000
    epochs: int = 5
    learning_rate: float = 0.1
    batch_size: int = 32
    seed: int = 0

    def __post_init__(self):
        if not self.encodings or not self.feature_counts or not self.layer_counts:
            raise ValueError("encodings, feature_counts and layer_counts must be nonempty")
        for kind in self.encodings:
            if kind not in ENCODING_KINDS:
                raise ValueError(f"unknown encoding kind {kind!r}")
        if any(n < 2 for n in self.feature_counts):
            raise ValueError("feature counts must be >= 2")
        if any(m < 1 for m in self.layer_counts):
            raise ValueError("layer counts must be >= 1")
        if self.reduce not in ("select", "pca"):
            raise ValueError(f"reduce must be 'select' or 'pca', got {self.reduce!r}")


def cell_seed(master_seed: int, cell_index: int) -> int:
    """Deterministic per-cell base seed from the master seed and cell index."""
    return int(np.random.SeedSequence([master_seed, cell_index]).generate_state(1)[0])


def _cells(spec: GridSpec):
    """Natural grid order: encoding, axis (simple angle only), N, M."""
    for kind in spec.encodings:
        axes = spec.axes if kind == SIMPLE_ANGLE else [None]
        for axis in axes:
            for n in spec.feature_counts:
                for m in spec.layer_counts:
                    yield kind, axis, n, m


def prepare_cell_data(
    spec: GridSpec, kind: str, num_features: int, base_seed: int
) -> tuple[LabeledDataset, LabeledDataset]:
    """Preprocess train/test for one cell: cap, reduce, rescale, normalize."""
    train_set = cap_samples(spec.train, spec.train_cap, base_seed + CAP_TRAIN_OFFSET)
    test_set = cap_samples(spec.test, spec.test_cap, base_seed + CAP_TEST_OFFSET)

    if spec.reduce == "pca":
        model = pca_fit(train_set, num_features)
        train_set = pca_transform(model, train_set)
        test_set = pca_transform(model, test_set)
    else:
        ranked = spec.ranked_features
        if ranked is None:
            ranked = list(range(spec.train.feature_dim))
        train_set = select_features(train_set, ranked, num_features)
        test_set = select_features(test_set, ranked, num_features)

    train_set, test_set = rescale_to_range(train_set, test_set, 0.0, pi / 2.0)
    if kind == AMPLITUDE:
        train_set = l2_normalize_rows(train_set)
        test_set = l2_normalize_rows(test_set)
    return train_set, test_set


def _run_cell(spec: GridSpec, kind, axis, n, m, base_seed: int) -> RunRecord:
    train_set, test_set = prepare_cell_data(spec, kind, n, base_seed)
    encoding = EncodingSpec(kind, axis=axis if axis is not None else "x")
    config = ModelConfig(encoding, num_features=n, num_layers=m)
    tcfg = TrainConfig(
        epochs=spec.epochs,
        learning_rate=spec.learning_rate,
        batch_size=spec.batch_size,
        seed=base_seed + TRAIN_OFFSET,
    )
    history = train(train_set.features, train_set.labels, config, tcfg)
    preds = [predict(x, config, history.final_params) for x in test_set.features]
    return RunRecord(
        dataset=spec.dataset_name,
        encoding=kind,
        axis=axis,
        num_features=n,
        num_layers=m,
        ep_accuracies=list(history.epoch_train_accuracy),
        test_accuracy=accuracy(preds, test_set.labels),
        f1=f1_score(preds, test_set.labels, positive=1),
        seed=base_seed,
        wall_time_s=0.0,
        test_predictions=[int(p) for p in preds],
    )


def run_grid(spec: GridSpec) -> list[RunRecord]:
    """Run every grid cell; failed cells get an error tag, the rest proceed."""
    records = []
    for index, (kind, axis, n, m) in enumerate(_cells(spec)):
        base_seed = cell_seed(spec.seed, index)
        started = time.perf_counter()
        try:
            record = _run_cell(spec, kind, axis, n, m, base_seed)
        except Exception as exc:  # cell isolation: report, keep going
            record = RunRecord(
                dataset=spec.dataset_name,
                encoding=kind,
                axis=axis,
                num_features=n,
                num_layers=m,
                ep_accuracies=[0.0] * spec.epochs,
                test_accuracy=0.0,
                f1=0.0,
                seed=base_seed,
                wall_time_s=0.0,
                error=f"{type(exc).__name__}: {exc}",
            )
        record.wall_time_s = time.perf_counter() - started
        records.append(record)
    return records


def csv_header(epochs: int, with_error: bool = False) -> list[str]:
    cols = ["dataset", "encoding", "axis", "N", "M"]
    cols += [f"ep{i + 1}" for i in range(epochs)]
    cols += ["test", "f1", "seed", "wall_time_s"]
    if with_error:
        cols.append("error")
    return cols


def records_to_csv(records: list[RunRecord]) -> str:
    """Render records as CSV text with the fixed benchmark schema."""
    if not records:
        raise ValueError("no records to emit")
    epochs = len(records[0].ep_accuracies)
    with_error = any(r.error for r in records)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(csv_header(epochs, with_error))
    for r in records:
        row = [r.dataset, r.encoding, r.axis or "", r.num_features, r.num_layers]
        row += [f"{a:.6f}" for a in r.ep_accuracies]
        row += [f"{r.test_accuracy:.6f}", f"{r.f1:.6f}", r.seed, f"{r.wall_time_s:.3f}"]
        if with_error:
            row.append(r.error or "")
        writer.writerow(row)
    return out.getvalue()


def records_to_json(records: list[RunRecord]) -> str:
    if not records:
        raise ValueError("no records to emit")
    return json.dumps([asdict(r) for r in records], indent=2) + "\n"


def records_from_json(text: str) -> list[RunRecord]:
    return [RunRecord(**entry) for entry in json.loads(text)]


def records_to_markdown(records: list[RunRecord]) -> str:
    """Markdown tables grouped by (N, M); the best F1 per block is bolded."""
    if not records:
        raise ValueError("no records to emit")
    epochs = len(records[0].ep_accuracies)
    groups: dict[tuple[int, int], list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.num_features, r.num_layers), []).append(r)

    lines = []
    for (n, m), rows in groups.items():
        best = max(row.f1 for row in rows if row.error is None) if any(
            row.error is None for row in rows
        ) else None
        lines.append(f"### ({n}F, {m}L)")
        lines.append("")
        header = ["encoding", "axis"] + [f"ep{i + 1}" for i in range(epochs)]
        header += ["test", "F1-score"]
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "---|" * len(header))
        for row in rows:
            if row.error is not None:
                cells = [row.encoding, row.axis or ""] + ["-"] * epochs
                cells += ["-", f"error: {row.error}"]
            else:
                name = f"**{row.encoding}**" if row.f1 == best else row.encoding
                cells = [name, row.axis or ""]
                cells += [f"{a:.4f}" for a in row.ep_accuracies]
                cells += [f"{row.test_accuracy:.4f}", f"{row.f1:.4f}"]
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
    return "\n".join(lines)


def emit_results(records: list[RunRecord], path, fmt: str = "csv"):
    """Write records to `path` as csv, json or markdown; returns the path."""
    renderers = {"csv": records_to_csv, "json": records_to_json, "md": records_to_markdown}
    if fmt not in renderers:
        raise ValueError(f"format must be one of {sorted(renderers)}, got {fmt!r}")
    text = renderers[fmt](records)
    with open(path, "w") as fh:
        fh.write(text)
    return path
