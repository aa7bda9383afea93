"""Command-line entry point for running encoding benchmark grids.

Configuration is layered: built-in defaults, then an optional JSON config
file (keys mirror the flag names with underscores), then explicit flags.
Exit codes: 0 = success, 1 = at least one grid cell failed, 2 = bad
configuration.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bench import GridSpec, emit_results, run_grid
from .data import load_csv, load_mnist_idx, split_train_test, synth_binary_dataset
from .encodings import ENCODING_KINDS

# Feature ranking used for --dataset wdbc, ordered most impactful first
# (0-based indices into the 30 feature columns, frozen configuration data):
# worst perimeter, worst radius, worst area, worst concave points,
# mean concave points, mean perimeter, mean area, mean concavity.
WDBC_RANKED_FEATURES = [22, 20, 23, 27, 7, 2, 3, 6]

DEFAULTS = {
    "dataset": None,
    "csv_path": None,
    "label_column": None,
    "positive_label": None,
    "mnist_images": None,
    "mnist_labels": None,
    "classes": "0,1",
    "encoding": "all",
    "axis": "x",
    "features": "4,6,8",
    "layers": "2,4",
    "epochs": 5,
    "lr": 0.1,
    "batch_size": 32,
    "train_cap": 4000,
    "test_cap": 2000,
    "split": 0.8,
    "seed": 0,
    "out": None,
    "format": "csv",
    "ranked_features": None,
}


class ConfigError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qencbench",
        description="Benchmark quantum data encodings on a re-uploading classifier.",
    )
    parser.add_argument("--config", help="JSON file with defaults for any flag")
    parser.add_argument("--dataset", choices=["wdbc", "mnist", "synth", "csv"])
    parser.add_argument("--csv-path")
    parser.add_argument("--label-column", help="label column name or 0-based index")
    parser.add_argument("--positive-label", help="label token mapped to class 1")
    parser.add_argument("--mnist-images", help="IDX image file")
    parser.add_argument("--mnist-labels", help="IDX label file")
    parser.add_argument("--classes", help="two digit classes, e.g. 0,1")
    parser.add_argument(
        "--encoding", choices=list(ENCODING_KINDS) + ["all"], help="default: all"
    )
    parser.add_argument("--axis", choices=["x", "y"], help="simple-angle rotation axis")
    parser.add_argument("--features", help="comma list of feature counts, e.g. 4,6,8")
    parser.add_argument("--layers", help="comma list of layer counts, e.g. 2,4")
    parser.add_argument("--epochs", type=int)
    parser.add_argument("--lr", type=float)
    parser.add_argument("--batch-size", type=int)
    parser.add_argument("--train-cap", type=int)
    parser.add_argument("--test-cap", type=int)
    parser.add_argument("--split", type=float)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", help="output path (default results.<format>)")
    parser.add_argument("--format", choices=["csv", "json", "md"])
    return parser


def _merge_config(args: argparse.Namespace) -> dict:
    merged = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        unknown = set(file_values) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(file_values)
    for key in DEFAULTS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            merged[key] = flag_value
    return merged


def _int_list(text, what: str) -> list[int]:
    if isinstance(text, list):
        return [int(v) for v in text]
    try:
        return [int(part) for part in str(text).split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"bad {what} list: {text!r}") from None


def _resolve_dataset(cfg: dict):
    """Return (name, train, test, reduce, ranked_features)."""
    dataset = cfg["dataset"]
    if dataset is None:
        raise ConfigError("--dataset is required")
    split, seed = float(cfg["split"]), int(cfg["seed"])

    if dataset == "mnist":
        if not cfg["mnist_images"] or not cfg["mnist_labels"]:
            raise ConfigError("--mnist-images and --mnist-labels are required")
        classes = _int_list(cfg["classes"], "classes")
        if len(classes) != 2:
            raise ConfigError(f"--classes needs exactly two digits, got {classes}")
        data = load_mnist_idx(cfg["mnist_images"], cfg["mnist_labels"], *classes)
        train, test = split_train_test(data, split, seed)
        return data.name, train, test, "pca", None

    if dataset == "synth":
        features = _int_list(cfg["features"], "features")
        total = int(cfg["train_cap"]) + int(cfg["test_cap"])
        data = synth_binary_dataset(total, max(features), seed=seed)
        train, test = split_train_test(data, split, seed)
        return "synth", train, test, "select", cfg["ranked_features"]

    # wdbc and csv both ingest a CSV file; wdbc presets its label mapping
    # and carries a built-in feature ranking.
    if not cfg["csv_path"]:
        raise ConfigError("--csv-path is required")
    if dataset == "wdbc":
        label_column = cfg["label_column"] or "diagnosis"
        positive = cfg["positive_label"] or "M"
        ranked = cfg["ranked_features"] or WDBC_RANKED_FEATURES
    else:
        if cfg["label_column"] is None or cfg["positive_label"] is None:
            raise ConfigError("--label-column and --positive-label are required")
        label_column, positive, ranked = (
            cfg["label_column"], cfg["positive_label"], cfg["ranked_features"],
        )
    if isinstance(label_column, str) and label_column.lstrip("-").isdigit():
        label_column = int(label_column)
    data = load_csv(cfg["csv_path"], label_column, positive)
    train, test = split_train_test(data, split, seed)
    name = "wdbc" if dataset == "wdbc" else "csv"
    return name, train, test, "select", ranked


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _merge_config(args)
        name, train, test, reduce, ranked = _resolve_dataset(cfg)
        encodings = (
            list(ENCODING_KINDS) if cfg["encoding"] == "all" else [cfg["encoding"]]
        )
        spec = GridSpec(
            dataset_name=name,
            train=train,
            test=test,
            encodings=encodings,
            feature_counts=_int_list(cfg["features"], "features"),
            layer_counts=_int_list(cfg["layers"], "layers"),
            axes=[cfg["axis"]],
            reduce=reduce,
            ranked_features=ranked,
            train_cap=int(cfg["train_cap"]),
            test_cap=int(cfg["test_cap"]),
            epochs=int(cfg["epochs"]),
            learning_rate=float(cfg["lr"]),
            batch_size=int(cfg["batch_size"]),
            seed=int(cfg["seed"]),
        )
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    records = run_grid(spec)
    out = cfg["out"] or f"results.{cfg['format']}"
    emit_results(records, out, cfg["format"])

    failures = 0
    for r in records:
        if r.error is not None:
            failures += 1
            print(f"[fail] {r.encoding} {r.num_features}F/{r.num_layers}L: {r.error}")
        else:
            print(
                f"[ ok ] {r.encoding:10s} {r.num_features}F/{r.num_layers}L "
                f"test={r.test_accuracy:.4f} f1={r.f1:.4f} ({r.wall_time_s:.1f}s)"
            )
    print(f"wrote {len(records)} records to {out}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
