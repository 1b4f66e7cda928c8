"""Reader/writer for the big-endian IDX image/label container.

Layout (everything big-endian):
  images: int32 magic 0x00000803, int32 count, int32 rows, int32 cols,
          then count*rows*cols unsigned pixel bytes
  labels: int32 magic 0x00000801, int32 count, then count label bytes
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import FormatError
from .base import TaskDataset, from_arrays

IMAGE_MAGIC = 0x00000803
LABEL_MAGIC = 0x00000801


def _read_bytes(path) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _unpack_header(blob: bytes, n_fields: int, path) -> tuple:
    size = 4 * n_fields
    if len(blob) < size:
        raise FormatError(f"{path}: truncated header ({len(blob)} bytes)")
    return struct.unpack(f">{n_fields}i", blob[:size])


def load_idx_images(
    image_path,
    label_path,
    name: str | None = None,
    class_count: int | None = None,
    test_fraction: float = 0.25,
    split_seed: int = 0,
) -> TaskDataset:
    """Load a paired IDX image/label file into a dataset.

    Pixels are scaled to [0, 1] by division by 255 and images flattened
    row-major; labels pair with images by index.
    """
    image_blob = _read_bytes(image_path)
    magic, count, rows, cols = _unpack_header(image_blob, 4, image_path)
    if magic != IMAGE_MAGIC:
        raise FormatError(
            f"{image_path}: bad image magic 0x{magic:08x}, expected 0x{IMAGE_MAGIC:08x}"
        )
    expected = 16 + count * rows * cols
    if len(image_blob) != expected:
        raise FormatError(
            f"{image_path}: expected {expected} bytes for {count} images, got {len(image_blob)}"
        )

    label_blob = _read_bytes(label_path)
    lmagic, lcount = _unpack_header(label_blob, 2, label_path)
    if lmagic != LABEL_MAGIC:
        raise FormatError(
            f"{label_path}: bad label magic 0x{lmagic:08x}, expected 0x{LABEL_MAGIC:08x}"
        )
    if len(label_blob) != 8 + lcount:
        raise FormatError(
            f"{label_path}: expected {8 + lcount} bytes for {lcount} labels, got {len(label_blob)}"
        )
    if lcount != count:
        raise FormatError(f"{count} images but {lcount} labels")

    pixels = np.frombuffer(image_blob, dtype=np.uint8, offset=16)
    features = pixels.reshape(count, rows * cols).astype(np.float64) / 255.0
    labels = np.frombuffer(label_blob, dtype=np.uint8, offset=8).astype(np.int64)
    return from_arrays(
        name or str(image_path),
        features,
        labels,
        class_count,
        test_fraction,
        split_seed,
        image_shape=(rows, cols),
    )


def write_idx_images(image_path, label_path, pixels: np.ndarray, labels) -> None:
    """Write (N, rows, cols) uint8 pixels and N labels as an IDX pair."""
    pixels = np.asarray(pixels, dtype=np.uint8)
    labels = np.asarray(labels, dtype=np.uint8)
    if pixels.ndim != 3 or labels.shape != (pixels.shape[0],):
        raise FormatError(
            f"need (N, rows, cols) pixels and N labels, got {pixels.shape} / {labels.shape}"
        )
    count, rows, cols = pixels.shape
    with open(image_path, "wb") as fh:
        fh.write(struct.pack(">4i", IMAGE_MAGIC, count, rows, cols))
        fh.write(pixels.tobytes())
    with open(label_path, "wb") as fh:
        fh.write(struct.pack(">2i", LABEL_MAGIC, count))
        fh.write(labels.tobytes())
