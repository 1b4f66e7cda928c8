"""Reader for the CIFAR binary batch format, grayscaled on load.

Records are fixed length: 1 label byte (cifar10) or coarse+fine label bytes
(cifar100) followed by 3072 pixel bytes laid out as three 1024-byte planes
(R, then G, then B), each a row-major 32x32 image.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

from ..errors import FormatError, InvalidArgument
from .base import TaskDataset, from_arrays

_PLANE = 1024
_PIXELS = 3 * _PLANE
_VARIANTS = {
    "cifar10": (1 + _PIXELS, 0),  # (record length, label byte offset)
    "cifar100": (2 + _PIXELS, 1),  # fine label; the coarse byte is ignored
}


def grayscale(r, g, b):
    """Luminance of byte channels, scaled to [0, 1]: (0.299r + 0.587g + 0.114b)/255."""
    return (0.299 * r + 0.587 * g + 0.114 * b) / 255.0


def load_cifar_binary(
    paths,
    variant: str,
    name: str | None = None,
    class_count: int | None = None,
    test_fraction: float = 0.25,
    split_seed: int = 0,
) -> TaskDataset:
    """Load one or more CIFAR binary batch files as a grayscale dataset."""
    if variant not in _VARIANTS:
        raise InvalidArgument(f"variant must be one of {sorted(_VARIANTS)}, got {variant!r}")
    record_len, label_offset = _VARIANTS[variant]
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]

    all_labels = []
    all_gray = []
    for path in paths:
        try:
            with open(path, "rb") as fh:
                blob = fh.read()
        except OSError as exc:
            raise FormatError(f"cannot read {path}: {exc}") from exc
        if len(blob) == 0 or len(blob) % record_len != 0:
            raise FormatError(
                f"{path}: {len(blob)} bytes is not a positive multiple of the "
                f"{record_len}-byte {variant} record"
            )
        records = np.frombuffer(blob, dtype=np.uint8).reshape(-1, record_len)
        all_labels.append(records[:, label_offset].astype(np.int64))
        planes = records[:, record_len - _PIXELS :].astype(np.float64)
        red = planes[:, :_PLANE]
        green = planes[:, _PLANE : 2 * _PLANE]
        blue = planes[:, 2 * _PLANE :]
        all_gray.append(grayscale(red, green, blue))

    features = np.concatenate(all_gray)
    labels = np.concatenate(all_labels)
    return from_arrays(
        name or variant,
        features,
        labels,
        class_count,
        test_fraction,
        split_seed,
        image_shape=(32, 32),
    )


def write_cifar_binary(path, variant: str, images: np.ndarray, labels: Iterable[int]) -> None:
    """Write (N, 3072) uint8 plane-ordered pixels as CIFAR records (cifar100
    records get a zero coarse byte)."""
    if variant not in _VARIANTS:
        raise InvalidArgument(f"variant must be one of {sorted(_VARIANTS)}, got {variant!r}")
    images = np.asarray(images, dtype=np.uint8)
    labels = list(labels)
    if images.ndim != 2 or images.shape[1] != _PIXELS or len(labels) != images.shape[0]:
        raise FormatError(
            f"need (N, {_PIXELS}) pixels and N labels, got {images.shape} / {len(labels)}"
        )
    with open(path, "wb") as fh:
        for row, label in zip(images, labels):
            if variant == "cifar100":
                fh.write(bytes([0, int(label)]))
            else:
                fh.write(bytes([int(label)]))
            fh.write(row.tobytes())
