"""Synthetic Gaussian-cluster classification tasks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgument
from .base import TaskDataset, from_arrays


@dataclass
class ClusterConfig:
    """Two isotropic Gaussian clusters at a controlled distance.

    Cluster 0 is centered at the origin, cluster 1 at ``separation`` along
    the first axis (any direction is equivalent by isotropy).
    """

    dims: int
    sigma: float
    separation: float
    samples_per_cluster: int
    seed: int = 0

    def __post_init__(self):
        if self.dims < 1:
            raise InvalidArgument(f"dims must be >= 1, got {self.dims}")
        if self.sigma <= 0:
            raise InvalidArgument(f"sigma must be > 0, got {self.sigma}")
        if self.separation < 0:
            raise InvalidArgument(f"separation must be >= 0, got {self.separation}")
        if self.samples_per_cluster < 1:
            raise InvalidArgument(
                f"samples_per_cluster must be >= 1, got {self.samples_per_cluster}"
            )


def make_clusters(
    config: ClusterConfig,
    name: str | None = None,
    test_fraction: float = 0.25,
) -> TaskDataset:
    """Sample the two-cluster task; deterministic in ``config.seed``."""
    rng = np.random.default_rng(config.seed)
    n = config.samples_per_cluster
    cluster0 = rng.normal(0.0, config.sigma, size=(n, config.dims))
    cluster1 = rng.normal(0.0, config.sigma, size=(n, config.dims))
    cluster1[:, 0] += config.separation
    features = np.concatenate([cluster0, cluster1])
    labels = np.concatenate([np.zeros(n, np.int64), np.ones(n, np.int64)])
    return from_arrays(
        name or f"clusters_sep{config.separation:g}",
        features,
        labels,
        class_count=2,
        test_fraction=test_fraction,
        split_seed=config.seed,
    )


def make_blobs(
    class_count: int,
    dims: int,
    sigma: float,
    spacing: float,
    samples_per_class: int,
    seed: int = 0,
    name: str | None = None,
    test_fraction: float = 0.25,
) -> TaskDataset:
    """Many-class variant: one isotropic Gaussian per class on a square grid.

    Class c is centered at ``spacing * (c % side, c // side, 0, ...)`` with
    ``side = ceil(sqrt(class_count))``; useful as a source with a tunable
    amount of between-class overlap.
    """
    if class_count < 1:
        raise InvalidArgument(f"class_count must be >= 1, got {class_count}")
    if dims < 2 and class_count > 2:
        raise InvalidArgument("grid layout needs dims >= 2 for more than two classes")
    if sigma <= 0 or spacing < 0 or samples_per_class < 1:
        raise InvalidArgument("sigma must be > 0, spacing >= 0, samples_per_class >= 1")

    side = math.ceil(math.sqrt(class_count))
    rng = np.random.default_rng(seed)
    parts = []
    labels = []
    for cls in range(class_count):
        center = np.zeros(dims)
        center[0] = spacing * (cls % side)
        if dims > 1:
            center[1] = spacing * (cls // side)
        parts.append(rng.normal(0.0, sigma, size=(samples_per_class, dims)) + center)
        labels.append(np.full(samples_per_class, cls, np.int64))
    return from_arrays(
        name or f"blobs{class_count}",
        np.concatenate(parts),
        np.concatenate(labels),
        class_count=class_count,
        test_fraction=test_fraction,
        split_seed=seed,
    )


def overlap_coefficient(separation: float, sigma: float) -> float:
    """Shared probability mass of two equal isotropic normals at distance
    ``separation``: 2 * Phi(-separation / (2 * sigma))."""
    if sigma <= 0:
        raise InvalidArgument(f"sigma must be > 0, got {sigma}")
    return math.erfc(separation / (2.0 * sigma * math.sqrt(2.0)))
