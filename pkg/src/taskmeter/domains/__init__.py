"""Dataset sources: binary image formats, synthetic clusters, cart-pole."""

from .base import (
    TaskDataset,
    class_subset,
    from_arrays,
    load_dataset_csv,
    save_dataset_csv,
    stratified_split,
)
from .cartpole import (
    CartpoleConfig,
    CartpoleState,
    balance_action,
    cartpole_dataset,
    cartpole_step,
)
from .cifar import grayscale, load_cifar_binary, write_cifar_binary
from .clusters import ClusterConfig, make_blobs, make_clusters, overlap_coefficient
from .idx import load_idx_images, write_idx_images

__all__ = [
    "TaskDataset",
    "class_subset",
    "from_arrays",
    "load_dataset_csv",
    "save_dataset_csv",
    "stratified_split",
    "CartpoleConfig",
    "CartpoleState",
    "balance_action",
    "cartpole_dataset",
    "cartpole_step",
    "grayscale",
    "load_cifar_binary",
    "write_cifar_binary",
    "ClusterConfig",
    "make_blobs",
    "make_clusters",
    "overlap_coefficient",
    "load_idx_images",
    "write_idx_images",
]
