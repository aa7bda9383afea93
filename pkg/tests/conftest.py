"""Shared fixtures: the frozen WDBC CSV and MNIST-format IDX files.

Real MNIST IDX files can be supplied through the environment variables
QENCBENCH_MNIST_TRAIN_IMAGES / _TRAIN_LABELS / _TEST_IMAGES / _TEST_LABELS;
otherwise a deterministic stand-in with the same file format and a
comparable 0-vs-1 shape discrimination task is generated on the fly.
"""
from __future__ import annotations

import os
import struct
from pathlib import Path

import numpy as np
import pytest

from qencbench.data import MNIST_IMAGE_MAGIC, MNIST_LABEL_MAGIC

DATA_DIR = Path(__file__).parent / "data"

MNIST_ENV_KEYS = (
    "QENCBENCH_MNIST_TRAIN_IMAGES",
    "QENCBENCH_MNIST_TRAIN_LABELS",
    "QENCBENCH_MNIST_TEST_IMAGES",
    "QENCBENCH_MNIST_TEST_LABELS",
)


@pytest.fixture(scope="session")
def wdbc_csv_path() -> Path:
    return DATA_DIR / "wdbc.csv"


def write_idx_pair(images: np.ndarray, labels: np.ndarray, images_path, labels_path):
    """Write a (count, rows, cols) uint8 array and labels as IDX files."""
    count, rows, cols = images.shape
    with open(images_path, "wb") as fh:
        fh.write(struct.pack(">IIII", MNIST_IMAGE_MAGIC, count, rows, cols))
        fh.write(images.tobytes())
    with open(labels_path, "wb") as fh:
        fh.write(struct.pack(">II", MNIST_LABEL_MAGIC, count))
        fh.write(labels.astype(np.uint8).tobytes())


def _digit_image(rng: np.random.Generator, digit: int) -> np.ndarray:
    """28x28 grayscale glyph: 0 = elliptic ring, 1 = near-vertical stroke."""
    yy, xx = np.mgrid[0:28, 0:28].astype(float)
    cx = 13.5 + rng.uniform(-2.5, 2.5)
    cy = 13.5 + rng.uniform(-2.5, 2.5)
    if digit == 0:
        rx_ax = rng.uniform(5.5, 8.5)
        ry_ax = rng.uniform(7.0, 10.0)
        r = np.sqrt(((xx - cx) / rx_ax) ** 2 + ((yy - cy) / ry_ax) ** 2)
        img = np.exp(-((r - 1.0) ** 2) / 0.03)
    elif digit == 1:
        slope = rng.uniform(-0.2, 0.2)
        width = rng.uniform(1.0, 2.0)
        dist = np.abs((xx - cx) - slope * (yy - cy))
        img = np.exp(-((dist / width) ** 2)) * (np.abs(yy - cy) < rng.uniform(8, 11))
    else:
        # filler class, only present to exercise class filtering
        img = rng.random((28, 28)) * 0.6
    img = img + rng.normal(0.0, 0.06, size=(28, 28))
    return np.clip(img * 255.0, 0, 255).astype(np.uint8)


def make_digit_idx_files(directory: Path, n_train: int = 1800, n_test: int = 800,
                         seed: int = 7) -> dict:
    """Generate the stand-in IDX quartet in `directory`."""
    rng = np.random.default_rng(seed)
    paths = {}
    for split, count in (("train", n_train), ("test", n_test)):
        digits = rng.choice([0, 1, 7], size=count, p=[0.45, 0.45, 0.10])
        images = np.stack([_digit_image(rng, int(d)) for d in digits])
        images_path = directory / f"{split}-images.idx3-ubyte"
        labels_path = directory / f"{split}-labels.idx1-ubyte"
        write_idx_pair(images, digits, images_path, labels_path)
        paths[f"{split}_images"] = images_path
        paths[f"{split}_labels"] = labels_path
    return paths


@pytest.fixture(scope="session")
def mnist_files(tmp_path_factory) -> dict:
    """Paths to MNIST-format IDX files: real ones if configured, else stand-ins."""
    env = [os.environ.get(key) for key in MNIST_ENV_KEYS]
    if all(env):
        return {
            "train_images": Path(env[0]),
            "train_labels": Path(env[1]),
            "test_images": Path(env[2]),
            "test_labels": Path(env[3]),
            "real": True,
        }
    directory = tmp_path_factory.mktemp("digit-idx")
    paths = make_digit_idx_files(directory)
    paths["real"] = False
    return paths
