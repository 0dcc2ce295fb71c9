# ./BatchSampler/epoch.py

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from utils.errors import ConfigError

PRNG_NAME = "PCG64"


def epoch_rng(seed: int, epoch: int, stream: int = 0) -> np.random.Generator:
    """Deterministic generator for (seed, epoch); stream 0 shuffles, other streams drive dropout."""
    if seed < 0 or epoch < 0:
        raise ConfigError("seed and epoch must be non-negative")
    entropy = [seed, epoch] if stream == 0 else [seed, epoch, stream]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


@dataclass
class EpochPlan:
    """A uniform shuffle of the users cut into consecutive chunks of batch_size."""
    permutation: np.ndarray
    batch_size: int

    @property
    def num_batches(self) -> int:
        return -(-len(self.permutation) // self.batch_size)

    def batch(self, index: int) -> np.ndarray:
        start = index * self.batch_size
        return self.permutation[start:start + self.batch_size]

    def batches(self) -> Iterator[np.ndarray]:
        for index in range(self.num_batches):
            yield self.batch(index)


def plan_epoch(num_users: int, m: int, seed: int, epoch: int) -> EpochPlan:
    """Shuffle the users for one epoch; the last chunk may be ragged."""
    if m < 1:
        raise ConfigError(f"batch size must be >= 1, got {m}")
    rng = epoch_rng(seed, epoch)
    return EpochPlan(permutation=rng.permutation(num_users), batch_size=m)
