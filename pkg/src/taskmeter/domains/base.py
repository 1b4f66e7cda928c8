"""Labeled classification datasets with deterministic train/test splits."""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from ..errors import FormatError, InvalidArgument

CSV_LABEL_COLUMN = "label"


@dataclass
class TaskDataset:
    """One classification domain: features, integer labels, and a fixed split.

    Invariants are checked on construction: features are an (N, D) matrix,
    labels lie in [0, class_count), and the train/test index sets are
    disjoint and together cover every row. Instances are treated as
    immutable after construction and are safe to share between threads.
    """

    name: str
    features: np.ndarray
    labels: np.ndarray
    class_count: int
    train_idx: np.ndarray
    test_idx: np.ndarray
    image_shape: tuple[int, int] | None = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.train_idx = np.asarray(self.train_idx, dtype=np.int64)
        self.test_idx = np.asarray(self.test_idx, dtype=np.int64)
        if self.features.ndim != 2:
            raise InvalidArgument(f"features must be 2-D, got shape {self.features.shape}")
        n = self.features.shape[0]
        if self.labels.shape != (n,):
            raise InvalidArgument(
                f"labels must have shape ({n},), got {self.labels.shape}"
            )
        if self.class_count < 1:
            raise InvalidArgument(f"class_count must be >= 1, got {self.class_count}")
        if n and (self.labels.min() < 0 or self.labels.max() >= self.class_count):
            raise InvalidArgument(
                f"labels must lie in [0, {self.class_count}), got "
                f"[{self.labels.min()}, {self.labels.max()}]"
            )
        combined = np.concatenate([self.train_idx, self.test_idx])
        if len(combined) != n or len(np.unique(combined)) != n:
            raise InvalidArgument("train/test indices must partition the rows")
        if n and (combined.min() < 0 or combined.max() >= n):
            raise InvalidArgument("split indices out of range")
        if self.image_shape is not None:
            h, w = self.image_shape
            if h * w != self.features.shape[1]:
                raise InvalidArgument(
                    f"image_shape {self.image_shape} does not match feature "
                    f"dimension {self.features.shape[1]}"
                )

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def feature_dim(self) -> int:
        return self.features.shape[1]

    def split_arrays(self, split: str) -> tuple[np.ndarray, np.ndarray]:
        """(features, labels) of one split; ``split`` is 'train' or 'test'."""
        if split == "train":
            idx = self.train_idx
        elif split == "test":
            idx = self.test_idx
        else:
            raise InvalidArgument(f"split must be 'train' or 'test', got {split!r}")
        return self.features[idx], self.labels[idx]

    def renamed(self, name: str) -> "TaskDataset":
        return replace(self, name=name)


def stratified_split(
    labels: np.ndarray, test_fraction: float, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Per-class seeded split; floor(test_fraction * class size) rows go to test."""
    if not 0.0 <= test_fraction < 1.0:
        raise InvalidArgument(f"test_fraction must be in [0, 1), got {test_fraction}")
    labels = np.asarray(labels, dtype=np.int64)
    rng = np.random.default_rng(seed)
    test_parts = []
    for cls in np.unique(labels):
        rows = np.flatnonzero(labels == cls)
        n_test = int(len(rows) * test_fraction)
        test_parts.append(rng.permutation(rows)[:n_test])
    test_idx = (
        np.sort(np.concatenate(test_parts)) if test_parts else np.empty(0, np.int64)
    )
    mask = np.ones(len(labels), dtype=bool)
    mask[test_idx] = False
    return np.flatnonzero(mask), test_idx


def from_arrays(
    name: str,
    features: np.ndarray,
    labels: np.ndarray,
    class_count: int | None = None,
    test_fraction: float = 0.25,
    split_seed: int = 0,
    image_shape: tuple[int, int] | None = None,
) -> TaskDataset:
    """Wrap raw arrays into a TaskDataset with a seeded stratified split."""
    labels = np.asarray(labels, dtype=np.int64)
    if class_count is None:
        class_count = int(labels.max()) + 1 if labels.size else 1
    train_idx, test_idx = stratified_split(labels, test_fraction, split_seed)
    return TaskDataset(
        name=name,
        features=features,
        labels=labels,
        class_count=class_count,
        train_idx=train_idx,
        test_idx=test_idx,
        image_shape=image_shape,
    )


def class_subset(dataset: TaskDataset, k: int, seed: int) -> TaskDataset:
    """Restrict a dataset to ``k`` randomly chosen classes, relabeled 0..k-1.

    The k distinct classes are sampled uniformly without replacement
    (seeded) and relabeled in ascending original-label order, so applying
    the operation again with the same seed and full ``k`` is a no-op. Rows
    keep their train/test membership.
    """
    if not 1 <= k <= dataset.class_count:
        raise InvalidArgument(
            f"k must be in [1, {dataset.class_count}], got {k}"
        )
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(dataset.class_count, size=k, replace=False))

    keep = np.isin(dataset.labels, chosen)
    keep_rows = np.flatnonzero(keep)
    new_pos = np.full(dataset.n_rows, -1, dtype=np.int64)
    new_pos[keep_rows] = np.arange(len(keep_rows))

    relabel = np.full(dataset.class_count, -1, dtype=np.int64)
    relabel[chosen] = np.arange(k)

    train_idx = new_pos[dataset.train_idx[keep[dataset.train_idx]]]
    test_idx = new_pos[dataset.test_idx[keep[dataset.test_idx]]]
    return TaskDataset(
        name=f"{dataset.name}_k{k}",
        features=dataset.features[keep_rows],
        labels=relabel[dataset.labels[keep_rows]],
        class_count=k,
        train_idx=np.sort(train_idx),
        test_idx=np.sort(test_idx),
        image_shape=dataset.image_shape,
    )


def save_dataset_csv(dataset: TaskDataset, path) -> None:
    """Write ``feature_0..feature_{D-1},label`` rows for external inspection."""
    header = [f"feature_{i}" for i in range(dataset.feature_dim)] + [CSV_LABEL_COLUMN]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row, label in zip(dataset.features, dataset.labels):
            writer.writerow([repr(float(v)) for v in row] + [int(label)])


def load_dataset_csv(
    path,
    name: str | None = None,
    class_count: int | None = None,
    test_fraction: float = 0.25,
    split_seed: int = 0,
) -> TaskDataset:
    """Read a dataset written by :func:`save_dataset_csv` (split is recomputed)."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            rows = list(reader)
    except OSError as exc:
        raise FormatError(f"cannot read dataset csv {path}: {exc}") from exc
    if not header or header[-1] != CSV_LABEL_COLUMN:
        raise FormatError(f"{path}: expected a feature_*,label header row")
    dim = len(header) - 1
    features = np.empty((len(rows), dim))
    labels = np.empty(len(rows), dtype=np.int64)
    try:
        for i, row in enumerate(rows):
            if len(row) != dim + 1:
                raise FormatError(f"{path}: row {i} has {len(row)} fields, expected {dim + 1}")
            features[i] = [float(v) for v in row[:dim]]
            labels[i] = int(row[dim])
    except ValueError as exc:
        raise FormatError(f"{path}: unparsable value ({exc})") from exc
    if name is None:
        name = str(path)
    return from_arrays(
        name, features, labels, class_count, test_fraction, split_seed
    )
