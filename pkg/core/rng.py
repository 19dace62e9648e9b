"""Seedable, splittable random source shared by every stochastic operation."""
from dataclasses import dataclass, field
from typing import List

import numpy as np

from config import DEFAULT_SEED


@dataclass
class Rng:
    seed: int = DEFAULT_SEED
    seed_sequence: np.random.SeedSequence = field(default=None, repr=False)
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.seed_sequence is None:
            self.seed_sequence = np.random.SeedSequence(int(self.seed))
        self.generator = np.random.Generator(np.random.PCG64(self.seed_sequence))

    def split(self, n: int) -> List["Rng"]:
        """Derive n independent child generators from this generator's seed sequence."""
        return [Rng(self.seed, child) for child in self.seed_sequence.spawn(n)]

    def random(self, size=None):
        return self.generator.random(size)

    def integers(self, low, high=None, size=None):
        return self.generator.integers(low, high, size=size)

    def below(self, bound: int) -> int:
        """One uniform draw from [0, bound) for any bound up to 2^64."""
        return int(self.generator.integers(0, bound, dtype=np.int64 if bound < 2 ** 63 else np.uint64))

    def choice(self, a, size=None, p=None):
        return self.generator.choice(a, size=size, p=p)

    def bits(self, n: int) -> np.ndarray:
        return self.generator.integers(0, 2, size=n, dtype=np.int8)


def make_rng(seed=None) -> Rng:
    if isinstance(seed, Rng):
        return seed
    return Rng(DEFAULT_SEED if seed is None else int(seed))
