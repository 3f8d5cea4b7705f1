"""Tabular ingestion and preprocessing: CSV loading, one-hot encoding,
PCA down to the qubit count, min-max normalization, stratified splitting.

PCA and min-max models are fit on training rows only and are immutable
afterwards, so applying them to test rows cannot leak information back.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError

MAX_CATEGORIES = 64


@dataclass
class RawTable:
    """Rectangular string table with a designated two-valued label column."""

    columns: list[str]
    rows: list[list[str]]
    label_column: str
    positive_label: str


@dataclass
class Dataset:
    """Numeric feature matrix with binary labels (positive class = 1).

    ``sample_ids`` carry each row's index in the originating table so
    splits and predictions stay traceable to the input file.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: list[str]
    sample_ids: np.ndarray

    def __len__(self) -> int:
        return int(self.labels.size)


@dataclass(frozen=True)
class PcaModel:
    """Centering mean plus top-k orthonormal principal directions."""

    mean: np.ndarray
    components: np.ndarray
    explained_variance: np.ndarray


@dataclass(frozen=True)
class MinMaxModel:
    """Per-feature training minimum and maximum."""

    minimum: np.ndarray
    maximum: np.ndarray


def load_csv(path: str, label_column: str, positive_label: str) -> RawTable:
    """Read a comma-delimited UTF-8 table with a header row.

    The label column must exist and hold exactly two distinct values,
    one of which is ``positive_label``. The first structural defect is
    reported with its 1-based data-row number.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                columns = next(reader)
            except StopIteration:
                raise DataError(f"{path}: file is empty (no header row)") from None
            rows = list(reader)
    except FileNotFoundError:
        raise DataError(f"input file not found: {path}") from None
    if label_column not in columns:
        raise DataError(f"{path}: label column {label_column!r} not among {columns}")
    width = len(columns)
    for i, row in enumerate(rows, start=1):
        if len(row) != width:
            raise DataError(f"{path}: row {i} has {len(row)} cells, expected {width}")
    if not rows:
        raise DataError(f"{path}: no data rows")
    label_idx = columns.index(label_column)
    label_values = sorted({row[label_idx] for row in rows})
    if len(label_values) != 2:
        raise DataError(
            f"{path}: label column {label_column!r} has {len(label_values)} distinct "
            f"values {label_values}, expected exactly 2"
        )
    if positive_label not in label_values:
        raise DataError(
            f"{path}: positive label {positive_label!r} not among {label_values}"
        )
    return RawTable(columns, rows, label_column, positive_label)


def _try_numeric(values: list[str]) -> np.ndarray | None:
    try:
        return np.array([float(v) for v in values], dtype=np.float64)
    except ValueError:
        return None


def one_hot_encode(table: RawTable) -> Dataset:
    """Numeric columns pass through; each non-numeric column expands
    into one 0/1 indicator column per distinct value, lexicographic order."""
    label_idx = table.columns.index(table.label_column)
    labels = np.array(
        [1 if row[label_idx] == table.positive_label else 0 for row in table.rows],
        dtype=np.int64,
    )
    feature_cols: list[np.ndarray] = []
    feature_names: list[str] = []
    for j, name in enumerate(table.columns):
        if j == label_idx:
            continue
        values = [row[j] for row in table.rows]
        numeric = _try_numeric(values)
        if numeric is not None:
            if not np.all(np.isfinite(numeric)):
                bad = int(np.argmax(~np.isfinite(numeric)))
                raise DataError(
                    f"column {name!r} row {bad + 1}: non-finite value {values[bad]!r}"
                )
            feature_cols.append(numeric)
            feature_names.append(name)
            continue
        categories = sorted(set(values))
        if len(categories) > MAX_CATEGORIES:
            raise DataError(
                f"column {name!r} has {len(categories)} distinct categories "
                f"(> {MAX_CATEGORIES}); is it a misdeclared numeric column?"
            )
        for cat in categories:
            feature_cols.append(
                np.array([1.0 if v == cat else 0.0 for v in values], dtype=np.float64)
            )
            feature_names.append(f"{name}={cat}")
    features = np.column_stack(feature_cols) if feature_cols else np.zeros((len(table.rows), 0))
    return Dataset(features, labels, feature_names, np.arange(len(table.rows)))


def pca_fit(train_features: np.ndarray, k: int) -> PcaModel:
    """Top-k principal directions of the training rows, via SVD.

    Sign convention: each component's largest-magnitude entry is made
    positive, so the decomposition is deterministic.
    """
    x = np.asarray(train_features, dtype=np.float64)
    if x.ndim != 2:
        raise ConfigError(f"expected a 2-D feature matrix, got shape {x.shape}")
    n, d = x.shape
    if not 1 <= k <= min(n, d):
        raise ConfigError(f"pca_k must be in [1, min(N, d)] = [1, {min(n, d)}], got {k}")
    mean = x.mean(axis=0)
    centered = x - mean
    if not np.any(np.abs(centered) > 0.0):
        raise DataError("PCA input has zero variance in every feature (all rows identical)")
    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[:k].copy()
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    explained = singular[:k] ** 2 / (n - 1) if n > 1 else np.zeros(k)
    return PcaModel(mean, components, explained)


def pca_transform(model: PcaModel, features: np.ndarray) -> np.ndarray:
    """Project rows onto the fitted principal directions."""
    x = np.asarray(features, dtype=np.float64)
    return (x - model.mean) @ model.components.T


def minmax_fit(train_features: np.ndarray) -> MinMaxModel:
    """Per-feature min and max of the training rows."""
    x = np.asarray(train_features, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 1:
        raise ConfigError(f"expected a non-empty 2-D feature matrix, got shape {x.shape}")
    return MinMaxModel(x.min(axis=0), x.max(axis=0))


def minmax_transform(model: MinMaxModel, features: np.ndarray) -> np.ndarray:
    """(x - min) / (max - min), clipped into [0, 1].

    A degenerate feature (max == min on the training rows) maps to 0.0;
    out-of-range test values are clipped so downstream angle encodings
    stay bounded.
    """
    x = np.asarray(features, dtype=np.float64)
    span = model.maximum - model.minimum
    safe = np.where(span > 0.0, span, 1.0)
    scaled = np.where(span > 0.0, (x - model.minimum) / safe, 0.0)
    return np.clip(scaled, 0.0, 1.0)


def stratified_split(
    dataset: Dataset,
    test_fraction: float,
    seed: int,
) -> tuple[Dataset, Dataset]:
    """Per-class shuffle then proportional allocation to the test split.

    Test size per class is round(count * fraction) (half rounds up) and
    at least 1; every class must keep at least one training sample.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ConfigError(f"test_fraction must be in (0, 1), got {test_fraction}")
    labels = dataset.labels
    classes = np.unique(labels)
    if classes.size != 2:
        raise DataError(f"need exactly 2 classes to split, got {classes.tolist()}")
    rng = np.random.default_rng(seed)
    test_idx: list[np.ndarray] = []
    train_idx: list[np.ndarray] = []
    for cls in classes:
        members = np.flatnonzero(labels == cls)
        n_test = max(1, int(np.floor(members.size * test_fraction + 0.5)))
        if members.size - n_test < 1:
            raise DataError(
                f"class {cls} has {members.size} sample(s); cannot allocate "
                f"{n_test} test sample(s) and keep one for training"
            )
        perm = rng.permutation(members)
        test_idx.append(perm[:n_test])
        train_idx.append(perm[n_test:])
    test = np.sort(np.concatenate(test_idx))
    train = np.sort(np.concatenate(train_idx))
    return subset(dataset, train), subset(dataset, test)


def subset(dataset: Dataset, indices: np.ndarray) -> Dataset:
    """Row-select a dataset by positional indices."""
    return Dataset(
        dataset.features[indices],
        dataset.labels[indices],
        list(dataset.feature_names),
        dataset.sample_ids[indices],
    )


def pca_to_dict(model: PcaModel) -> dict:
    return {
        "mean": model.mean.tolist(),
        "components": model.components.tolist(),
        "explained_variance": model.explained_variance.tolist(),
    }


def pca_from_dict(data: dict) -> PcaModel:
    return PcaModel(
        np.asarray(data["mean"], dtype=np.float64),
        np.asarray(data["components"], dtype=np.float64),
        np.asarray(data["explained_variance"], dtype=np.float64),
    )


def minmax_to_dict(model: MinMaxModel) -> dict:
    return {"min": model.minimum.tolist(), "max": model.maximum.tolist()}


def minmax_from_dict(data: dict) -> MinMaxModel:
    return MinMaxModel(
        np.asarray(data["min"], dtype=np.float64),
        np.asarray(data["max"], dtype=np.float64),
    )
