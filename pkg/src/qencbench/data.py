"""Dataset ingestion and preprocessing.

Loaders produce a LabeledDataset (float feature matrix + binary labels);
the transforms here cover the benchmark pipeline: feature selection by a
supplied ranking, PCA reduction for image data, per-feature rescaling into
rotation range fitted on the training split only, L2 normalization for
amplitude inputs, seeded train/test splitting and subsampling.
"""
from __future__ import annotations

import csv
import struct
from dataclasses import dataclass
from math import pi

import numpy as np

MNIST_IMAGE_MAGIC = 0x00000803
MNIST_LABEL_MAGIC = 0x00000801


@dataclass
class LabeledDataset:
    """Feature matrix (m, d) with binary labels (m,)."""

    features: np.ndarray
    labels: np.ndarray
    name: str = ""

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        self.labels = np.asarray(self.labels, dtype=int)
        if self.features.ndim != 2:
            raise ValueError(f"features must be 2-D, got shape {self.features.shape}")
        if len(self.features) != len(self.labels):
            raise ValueError(
                f"{len(self.features)} feature rows but {len(self.labels)} labels"
            )
        bad = set(np.unique(self.labels)) - {0, 1}
        if bad:
            raise ValueError(f"labels must be binary, found {sorted(bad)}")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def feature_dim(self) -> int:
        return self.features.shape[1]

    def take(self, indices, name: str | None = None) -> "LabeledDataset":
        """Row subset, preserving index order."""
        indices = np.asarray(indices, dtype=int)
        return LabeledDataset(
            self.features[indices], self.labels[indices],
            self.name if name is None else name,
        )


def load_csv(path, label_column, positive_label: str) -> LabeledDataset:
    """Load a comma-separated file with one label column.

    `label_column` is either a 0-based column index or a header name (a
    header row is auto-detected by non-numeric feature cells in the first
    row). Rows whose label equals `positive_label` get label 1; exactly one
    other label token is allowed and maps to 0.
    """
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]
    if not rows:
        raise ValueError(f"{path}: no samples (empty file)")

    header = None
    first = [cell.strip() for cell in rows[0]]
    if isinstance(label_column, str):
        if label_column not in first:
            raise ValueError(f"{path}: label column {label_column!r} not in header")
        header = first
        label_idx = first.index(label_column)
    else:
        label_idx = int(label_column)
        if not 0 <= label_idx < len(first):
            raise ValueError(f"{path}: label column {label_idx} out of range")
        feature_cells = [c for i, c in enumerate(first) if i != label_idx]
        # a header row has no numeric feature cells; a data row with a bad
        # cell still has some and should be reported as a parse error
        if not any(_is_number(c) for c in feature_cells):
            header = first
    body = rows[1:] if header is not None else rows
    if not body:
        raise ValueError(f"{path}: no samples (header only)")

    width = len(rows[0])
    if width < 2:
        raise ValueError(f"{path}: need at least one feature column")
    features, labels, tokens = [], [], set()
    for r, row in enumerate(body, start=2 if header is not None else 1):
        if len(row) != width:
            raise ValueError(f"{path}: row {r} has {len(row)} cells, expected {width}")
        token = row[label_idx].strip()
        tokens.add(token)
        labels.append(1 if token == positive_label else 0)
        sample = []
        for c, cell in enumerate(row):
            if c == label_idx:
                continue
            try:
                sample.append(float(cell))
            except ValueError:
                raise ValueError(
                    f"{path}: non-numeric cell {cell!r} at row {r}, column {c}"
                ) from None
        features.append(sample)

    others = tokens - {positive_label}
    if len(others) > 1:
        raise ValueError(
            f"{path}: expected binary labels with positive {positive_label!r}, "
            f"found extra tokens {sorted(others)}"
        )
    return LabeledDataset(np.array(features), np.array(labels), name="csv")


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def _read_be32(fh, path, what: str) -> int:
    raw = fh.read(4)
    if len(raw) != 4:
        raise ValueError(f"{path}: truncated file while reading {what}")
    return struct.unpack(">I", raw)[0]


def load_mnist_idx(images_path, labels_path, class_a: int, class_b: int) -> LabeledDataset:
    """Load a big-endian IDX image/label pair, keeping two digit classes.

    class_a maps to label 0, class_b to label 1. Pixels are flattened
    row-major and scaled to [0, 1] by dividing by 255.
    """
    if class_a == class_b:
        raise ValueError(f"classes must differ, got ({class_a}, {class_b})")

    with open(images_path, "rb") as fh:
        magic = _read_be32(fh, images_path, "magic")
        if magic != MNIST_IMAGE_MAGIC:
            raise ValueError(
                f"{images_path}: bad image magic 0x{magic:08x}, "
                f"expected 0x{MNIST_IMAGE_MAGIC:08x}"
            )
        count = _read_be32(fh, images_path, "image count")
        rows = _read_be32(fh, images_path, "row count")
        cols = _read_be32(fh, images_path, "column count")
        raw = fh.read(count * rows * cols)
        if len(raw) != count * rows * cols:
            raise ValueError(f"{images_path}: truncated pixel data")
        images = np.frombuffer(raw, dtype=np.uint8).reshape(count, rows * cols)

    with open(labels_path, "rb") as fh:
        magic = _read_be32(fh, labels_path, "magic")
        if magic != MNIST_LABEL_MAGIC:
            raise ValueError(
                f"{labels_path}: bad label magic 0x{magic:08x}, "
                f"expected 0x{MNIST_LABEL_MAGIC:08x}"
            )
        label_count = _read_be32(fh, labels_path, "label count")
        raw = fh.read(label_count)
        if len(raw) != label_count:
            raise ValueError(f"{labels_path}: truncated label data")
        digits = np.frombuffer(raw, dtype=np.uint8)

    if label_count != count:
        raise ValueError(
            f"image/label count mismatch: {count} images vs {label_count} labels"
        )
    keep = (digits == class_a) | (digits == class_b)
    features = images[keep].astype(float) / 255.0
    labels = (digits[keep] == class_b).astype(int)
    return LabeledDataset(features, labels, name=f"mnist{class_a}{class_b}")


@dataclass
class PcaModel:
    """Fitted PCA: training mean and k orthonormal principal directions (rows)."""

    mean: np.ndarray
    components: np.ndarray
    k: int


def pca_fit(train: LabeledDataset, k: int) -> PcaModel:
    """Top-k principal directions of the training features.

    Uses the SVD of the centered data; each component's sign is fixed so
    its largest-magnitude coordinate is positive.
    """
    if not 1 <= k <= train.feature_dim:
        raise ValueError(f"k must be in [1, {train.feature_dim}], got {k}")
    centered = train.features - train.features.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[:k].copy()
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return PcaModel(train.features.mean(axis=0), components, k)


def pca_transform(model: PcaModel, data: LabeledDataset) -> LabeledDataset:
    """Project onto the fitted principal directions."""
    if data.feature_dim != model.mean.shape[0]:
        raise ValueError(
            f"data has {data.feature_dim} features, model was fitted on "
            f"{model.mean.shape[0]}"
        )
    projected = (data.features - model.mean) @ model.components.T
    return LabeledDataset(projected, data.labels, data.name)


def rescale_to_range(
    train: LabeledDataset,
    test: LabeledDataset,
    lo: float = 0.0,
    hi: float = pi / 2.0,
) -> tuple[LabeledDataset, LabeledDataset]:
    """Affine per-feature map fitted on train, applied to both splits.

    Train features land exactly in [lo, hi]; test values outside the
    training range are clamped. Constant training columns map to lo.
    """
    mins = train.features.min(axis=0)
    spans = train.features.max(axis=0) - mins
    safe = np.where(spans > 0, spans, 1.0)

    def apply(x: np.ndarray) -> np.ndarray:
        scaled = lo + (x - mins) / safe * (hi - lo)
        scaled[:, spans == 0] = lo
        return np.clip(scaled, lo, hi)

    return (
        LabeledDataset(apply(train.features), train.labels, train.name),
        LabeledDataset(apply(test.features), test.labels, test.name),
    )


def l2_normalize(sample) -> np.ndarray:
    """Scale a vector to unit L2 norm; an all-zero vector becomes e_0."""
    sample = np.asarray(sample, dtype=float)
    norm = float(np.linalg.norm(sample))
    if norm == 0.0:
        out = np.zeros_like(sample)
        out[0] = 1.0
        return out
    return sample / norm


def l2_normalize_rows(data: LabeledDataset) -> LabeledDataset:
    """Unit-normalize every sample (amplitude-encoding preprocessing)."""
    rows = np.stack([l2_normalize(row) for row in data.features])
    return LabeledDataset(rows, data.labels, data.name)


def split_train_test(
    data: LabeledDataset, ratio: float = 0.8, seed: int = 0
) -> tuple[LabeledDataset, LabeledDataset]:
    """Seeded shuffle, then split with int(ratio * m) training samples."""
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"split ratio must be in (0, 1), got {ratio}")
    perm = np.random.default_rng(seed).permutation(len(data))
    cut = int(ratio * len(data))
    return data.take(perm[:cut]), data.take(perm[cut:])


def select_features(data: LabeledDataset, ranked_indices, n: int) -> LabeledDataset:
    """Keep the first `n` ranked feature columns, in ranked order."""
    ranked = list(ranked_indices)
    if n > len(ranked):
        raise ValueError(f"need {n} ranked features, only {len(ranked)} supplied")
    for idx in ranked[:n]:
        if not 0 <= idx < data.feature_dim:
            raise ValueError(f"ranked feature index {idx} out of range")
    return LabeledDataset(data.features[:, ranked[:n]], data.labels, data.name)


def cap_samples(data: LabeledDataset, cap: int, seed: int = 0) -> LabeledDataset:
    """Seeded subsample without replacement, keeping both classes when possible.

    Class counts are kept proportional (at least one sample per present
    class when cap >= 2). Returns the dataset unchanged when cap >= size.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    if cap >= len(data):
        return data
    rng = np.random.default_rng(seed)
    ones = np.flatnonzero(data.labels == 1)
    zeros = np.flatnonzero(data.labels == 0)
    n_one = int(round(cap * len(ones) / len(data)))
    if len(ones) and len(zeros) and cap >= 2:
        n_one = min(max(n_one, 1), cap - 1)
    n_one = min(n_one, len(ones))
    n_zero = min(cap - n_one, len(zeros))
    n_one = cap - n_zero  # re-balance if the zero class ran short
    picked = np.concatenate(
        [
            rng.choice(zeros, size=n_zero, replace=False),
            rng.choice(ones, size=n_one, replace=False),
        ]
    )
    return data.take(np.sort(picked))


def synth_binary_dataset(
    m: int, dim: int, seed: int = 0, separation: float = 3.0
) -> LabeledDataset:
    """Two seeded Gaussian blobs with balanced labels.

    Class means sit at -separation/2 and +separation/2 on every coordinate
    with unit variance, so separation 0 makes the classes indistinguishable.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    rng = np.random.default_rng(seed)
    n_one = m // 2
    n_zero = m - n_one
    features = np.vstack(
        [
            rng.normal(-separation / 2.0, 1.0, size=(n_zero, dim)),
            rng.normal(+separation / 2.0, 1.0, size=(n_one, dim)),
        ]
    )
    labels = np.concatenate([np.zeros(n_zero, dtype=int), np.ones(n_one, dtype=int)])
    order = rng.permutation(m)
    return LabeledDataset(features[order], labels[order], name="synth")
