"""Deterministic seed derivation.

Every random choice is keyed by a tuple of non-negative integers hashed
through numpy's SeedSequence, so a child seed depends only on its key path:

    root seed -> (n, d) cell -> instance index -> generator / linear-form trial
"""

from __future__ import annotations

import numpy as np

# Key tags keep different kinds of children from colliding.
TAG_GENERATOR = 1
TAG_LINEAR_FORM = 2
TAG_INSTANCE = 3
TAG_TOWER = 4


def derive_seed(*keys: int) -> int:
    """64-bit seed determined by the key path."""
    words = []
    for k in keys:
        k = int(k)
        if k < 0:
            raise ValueError("seed keys must be non-negative")
        words.append(k)
    state = np.random.SeedSequence(words).generate_state(2, dtype=np.uint32)
    return int(state[0]) | (int(state[1]) << 32)


def instance_seed(root: int, n: int, d: int, instance: int) -> int:
    return derive_seed(root, TAG_INSTANCE, n, d, instance)
