"""Counter-based random streams for reproducible, order-independent trials."""

from __future__ import annotations

import numpy as np

__all__ = ["trial_rng"]


def trial_rng(seed: int, *path: int) -> np.random.Generator:
    """Generator for one trial, independent of trial ordering.

    Expands a single 64-bit seed through a Philox counter-based stream
    keyed by ``path`` (suite index, trial index, ...), so trial k can be
    reproduced in isolation and trials may run in any order or in
    parallel.
    """
    ss = np.random.SeedSequence(
        entropy=int(seed) & (2**64 - 1),
        spawn_key=tuple(int(p) for p in path),
    )
    return np.random.Generator(np.random.Philox(seed=ss))
