"""Deterministic derivation of child seeds from one master seed.

Uses numpy's SeedSequence spawn keys, so adding new key paths never
reshuffles streams derived from existing ones.
"""

from __future__ import annotations

import numpy as np


def derive_seed(master: int, *key: int) -> int:
    """Return a 63-bit seed for the stream identified by ``key`` under ``master``."""
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in key))
    state = ss.generate_state(2, np.uint32).view(np.uint64)
    return int(state[0] >> np.uint64(1))


def derived_rng(master: int, *key: int) -> np.random.Generator:
    """Generator seeded by :func:`derive_seed` for the same ``(master, key)``."""
    return np.random.default_rng(derive_seed(master, *key))
