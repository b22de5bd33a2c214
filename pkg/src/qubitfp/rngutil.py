"""Counter-based, splittable random number generation.

Audit loops draw one independent Philox stream per trial, keyed by
(seed, trial index).  Results are therefore reproducible no matter how the
trials are ordered or sharded.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *key: int) -> np.random.Generator:
    """Philox generator keyed by a seed plus an arbitrary split key."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=key)))


def split_seed(seed: int, index: int) -> int:
    """Derive a per-trial integer seed from a base seed and a trial index."""
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return int(seq.generate_state(1, np.uint64)[0])
