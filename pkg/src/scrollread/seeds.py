"""Deterministic seed derivation.

Every random choice in the toolkit flows from one integer seed. Subsystems
get independent streams by deriving a child seed from (seed, label), so no
subsystem can perturb another's stream.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(seed: int, *labels: str | int) -> int:
    """Derive a child seed from a root seed and a label path."""
    h = hashlib.sha256()
    h.update(str(int(seed)).encode())
    for label in labels:
        h.update(b"/")
        h.update(str(label).encode())
    return int.from_bytes(h.digest()[:8], "big")


def child_rng(seed: int, *labels: str | int) -> np.random.Generator:
    """Generator seeded from (seed, labels); same inputs, same stream."""
    return np.random.default_rng(derive_seed(seed, *labels))
