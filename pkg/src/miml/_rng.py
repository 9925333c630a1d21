"""Frozen seeded random source.

Everything that needs randomness (partitioning, bootstrap sampling,
tie-breaking) draws from :class:`SeededRandom`. It sits on the raw 64-bit
output of numpy's PCG64 bit generator, whose stream is guaranteed stable
across numpy releases, and derives bounded integers and shuffles itself
so that no higher-level numpy sampling routine (which numpy is free to
change) is involved. A given seed therefore reproduces across versions.
"""

import numpy as np

_MASK64 = (1 << 64) - 1


class SeededRandom:

    def __init__(self, seed):
        self.seed = int(seed)
        # PCG64 wants a non-negative seed; fold negatives into 64 bits
        self._bits = np.random.PCG64(self.seed & _MASK64)

    def _next64(self):
        return int(self._bits.random_raw())

    def below(self, n):
        """Uniform integer in ``[0, n)`` by rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        if n == 1:
            return 0
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self._next64()
            if x < limit:
                return x % n

    def choice(self, items):
        return items[self.below(len(items))]

    def shuffle(self, items):
        """In-place Fisher-Yates shuffle of a list."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items
