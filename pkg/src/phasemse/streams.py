"""Deterministic random-stream derivation.

Every Monte Carlo consumer draws from a generator derived from
(master seed, index path), never from a shared stateful generator.
This makes results independent of execution order and worker count:
trajectory (k, t) sees the same draws whether it runs first, last,
serially or in another process.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RngTree:
    """A node in a deterministic seed tree.

    `child(i, j, ...)` extends the key path; `generator()` yields a fresh
    PCG64 generator for this node. Equal (seed, key) always give identical
    streams.
    """

    seed: int
    key: tuple[int, ...] = ()

    def child(self, *indices: int) -> "RngTree":
        return RngTree(self.seed, self.key + tuple(int(i) for i in indices))

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=self.key)
        return np.random.Generator(np.random.PCG64(ss))
