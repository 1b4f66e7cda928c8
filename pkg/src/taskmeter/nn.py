"""Minimal dense feed-forward classifier: init, SGD training, evaluation.

Hidden layers use the rectifier, the output layer a softmax trained with
cross-entropy. Everything is deterministic given the seeds carried by the
network and the training protocol; there is deliberately no early stopping,
momentum, or adaptivity, so every agent of a population consumes exactly the
same training budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import backend
from .errors import EmptyDataset, InvalidArgument, InvalidTopology, ShapeError


@dataclass
class TrainingProtocol:
    """Fixed training budget shared by every agent in a population."""

    epochs: int
    learning_rate: float
    batch_size: int
    shuffle_seed: int = 0

    def __post_init__(self):
        if self.epochs < 0:
            raise InvalidArgument(f"epochs must be >= 0, got {self.epochs}")
        if self.learning_rate <= 0:
            raise InvalidArgument(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.batch_size < 1:
            raise InvalidArgument(f"batch_size must be >= 1, got {self.batch_size}")


@dataclass(eq=False)
class MlpNetwork:
    """Weights and biases of one fully connected network."""

    layer_sizes: tuple[int, ...]
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    rng_seed: int

    def copy(self) -> "MlpNetwork":
        return MlpNetwork(
            self.layer_sizes,
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
            self.rng_seed,
        )


def init_network(layer_sizes: Sequence[int], seed: int) -> MlpNetwork:
    """Build a network with fan-scaled uniform weights and zero biases.

    Weights of layer i are uniform in +/- sqrt(6 / (n_in + n_out)). Identical
    (layer_sizes, seed) always produce bit-identical weights.
    """
    sizes = tuple(int(s) for s in layer_sizes)
    if len(sizes) < 2:
        raise InvalidTopology(f"need at least input and output sizes, got {sizes}")
    if any(s < 1 for s in sizes):
        raise InvalidTopology(f"every layer size must be >= 1, got {sizes}")

    rng = np.random.default_rng(seed)
    weights = []
    biases = []
    for n_in, n_out in zip(sizes[:-1], sizes[1:]):
        limit = math.sqrt(6.0 / (n_in + n_out))
        weights.append(rng.uniform(-limit, limit, size=(n_in, n_out)))
        biases.append(np.zeros(n_out))
    return MlpNetwork(sizes, weights, biases, int(seed))


def param_count(net: MlpNetwork) -> int:
    """Number of trainable parameters: sum of (n_in + 1) * n_out per layer."""
    sizes = net.layer_sizes
    return sum((a + 1) * b for a, b in zip(sizes[:-1], sizes[1:]))


def _batch_logits(net: MlpNetwork, x: np.ndarray) -> np.ndarray:
    a = x
    for w, b in zip(net.weights[:-1], net.biases[:-1]):
        a = np.maximum(a @ w + b, 0.0)
    return a @ net.weights[-1] + net.biases[-1]


def forward(net: MlpNetwork, features: Sequence[float]) -> np.ndarray:
    """Class probabilities for one feature vector (softmax output)."""
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != net.layer_sizes[0]:
        raise ShapeError(
            f"expected feature vector of length {net.layer_sizes[0]}, got shape {x.shape}"
        )
    logits = _batch_logits(net, x[np.newaxis, :])[0]
    logits = logits - logits.max()
    probs = np.exp(logits)
    return probs / probs.sum()


def cross_entropy_loss(net: MlpNetwork, features: np.ndarray, labels: np.ndarray) -> float:
    """Mean softmax cross-entropy of the network on (features, labels)."""
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    logits = _batch_logits(net, x)
    peak = logits.max(axis=1)
    lse = peak + np.log(np.exp(logits - peak[:, np.newaxis]).sum(axis=1))
    return float(np.mean(lse - logits[np.arange(len(y)), y]))


def train_arrays(
    net: MlpNetwork,
    features: np.ndarray,
    labels: np.ndarray,
    protocol: TrainingProtocol,
    epoch_hook: Callable[[int], None] | None = None,
) -> MlpNetwork:
    """Train on raw arrays; returns a new network, the input is untouched.

    Runs exactly ``protocol.epochs`` passes regardless of achieved loss.
    Shuffle order depends only on ``protocol.shuffle_seed``, so retraining is
    bit-reproducible. ``epoch_hook`` is called with the epoch index after each
    completed pass.
    """
    x = np.ascontiguousarray(features, dtype=np.float64)
    y = np.ascontiguousarray(labels, dtype=np.int64)
    if x.ndim != 2 or x.shape[0] != y.shape[0]:
        raise ShapeError(f"features {x.shape} do not pair with labels {y.shape}")
    if x.shape[1] != net.layer_sizes[0]:
        raise ShapeError(
            f"network expects {net.layer_sizes[0]} inputs, data has {x.shape[1]}"
        )
    if y.size and (y.min() < 0 or y.max() >= net.layer_sizes[-1]):
        raise ShapeError(
            f"labels must lie in [0, {net.layer_sizes[-1]}), got "
            f"[{y.min()}, {y.max()}]"
        )

    trained = net.copy()
    rng = np.random.default_rng(protocol.shuffle_seed)
    kernels = backend.kernels()
    for epoch in range(protocol.epochs):
        perm = rng.permutation(x.shape[0]).astype(np.int64)
        kernels.sgd_epoch(
            trained.weights,
            trained.biases,
            x,
            y,
            perm,
            protocol.batch_size,
            protocol.learning_rate,
        )
        if epoch_hook is not None:
            epoch_hook(epoch)
    return trained


def train(
    net: MlpNetwork,
    dataset,
    protocol: TrainingProtocol,
    epoch_hook: Callable[[int], None] | None = None,
) -> MlpNetwork:
    """Train on the dataset's train split; see :func:`train_arrays`."""
    if dataset.class_count != net.layer_sizes[-1]:
        raise ShapeError(
            f"network emits {net.layer_sizes[-1]} classes, dataset has "
            f"{dataset.class_count}"
        )
    x, y = dataset.split_arrays("train")
    return train_arrays(net, x, y, protocol, epoch_hook)


def evaluate(net: MlpNetwork, dataset, split: str = "test") -> float:
    """Classification accuracy on a dataset split, in [0, 1].

    Prediction is the argmax class; ties break toward the lowest index.
    """
    x, y = dataset.split_arrays(split)
    if x.shape[0] == 0:
        raise EmptyDataset(f"dataset {dataset.name!r} has an empty {split} split")
    if x.shape[1] != net.layer_sizes[0]:
        raise ShapeError(
            f"network expects {net.layer_sizes[0]} inputs, data has {x.shape[1]}"
        )
    predictions = np.argmax(_batch_logits(net, x), axis=1)
    return float(np.mean(predictions == y))
