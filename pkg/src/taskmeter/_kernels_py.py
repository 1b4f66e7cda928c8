"""Numpy implementations of the two hot kernels.

These are the reference semantics for ``taskmeter._native`` and the fallback
used when the compiled extension is unavailable (or when forced through
``TASKMETER_BACKEND=python``). Both kernels mutate nothing but their stated
outputs and are safe to call from independent threads on independent data.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def sgd_epoch(
    weights: list[np.ndarray],
    biases: list[np.ndarray],
    x: np.ndarray,
    y: np.ndarray,
    perm: np.ndarray,
    batch_size: int,
    lr: float,
) -> None:
    """Run one epoch of mini-batch SGD on softmax cross-entropy, in place.

    ``perm`` fixes the visit order; batches are consecutive slices of it and
    the last batch may be short. Hidden layers use the rectifier; the loss
    gradient is averaged over the actual batch length.
    """
    n = perm.shape[0]
    last = len(weights) - 1
    for start in range(0, n, batch_size):
        idx = perm[start : start + batch_size]
        xb = x[idx]
        yb = y[idx]
        b = len(yb)

        acts = [xb]
        for l in range(last):
            acts.append(np.maximum(acts[-1] @ weights[l] + biases[l], 0.0))
        logits = acts[-1] @ weights[last] + biases[last]
        logits -= logits.max(axis=1, keepdims=True)
        probs = np.exp(logits)
        probs /= probs.sum(axis=1, keepdims=True)

        delta = probs
        delta[np.arange(b), yb] -= 1.0
        delta /= b
        for l in range(last, -1, -1):
            grad_w = acts[l].T @ delta
            grad_b = delta.sum(axis=0)
            if l > 0:
                # backprop through the pre-update weights
                delta = (delta @ weights[l].T) * (acts[l] > 0.0)
            weights[l] -= lr * grad_w
            biases[l] -= lr * grad_b


def mean_local_entropy(values: np.ndarray, radius: int, levels: int) -> float:
    """Mean per-pixel Shannon entropy (bits) of cross-shaped localities.

    A pixel's locality is every in-bounds cell within Manhattan distance
    ``radius``, itself included; border localities are smaller. ``levels`` is
    accepted for signature parity with the compiled kernel (the counting here
    never builds a histogram array).
    """
    h, w = values.shape
    offsets = [
        (dr, dc)
        for dr in range(-radius, radius + 1)
        for dc in range(-radius, radius + 1)
        if abs(dr) + abs(dc) <= radius
    ]
    k = len(offsets)

    stack = np.zeros((k, h, w), dtype=values.dtype)
    mask = np.zeros((k, h, w), dtype=bool)
    for m, (dr, dc) in enumerate(offsets):
        r0, r1 = max(0, -dr), h - max(0, dr)
        c0, c1 = max(0, -dc), w - max(0, dc)
        stack[m, r0:r1, c0:c1] = values[r0 + dr : r1 + dr, c0 + dc : c1 + dc]
        mask[m, r0:r1, c0:c1] = True

    # count_i = |{j : v_j == v_i}| within the locality; the locality entropy
    # is then -(1/n) * sum_i log2(count_i / n) taken over its members.
    counts = np.zeros((k, h, w), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            counts[i] += mask[i] & mask[j] & (stack[i] == stack[j])
    n = mask.sum(axis=0).astype(np.float64)

    log_terms = np.zeros((k, h, w))
    np.log2(counts / n, out=log_terms, where=mask)
    per_pixel = -log_terms.sum(axis=0) / n
    return float(per_pixel.mean())
