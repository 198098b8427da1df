"""SplitMix64, scalar and vectorized over independent streams.

Both variants produce identical bits: the state advances by the golden
gamma, is mixed, and the top 53 bits become a uniform in [0, 1).
"""

import numpy as np

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1
TWO_NEG_53 = 2.0**-53


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * TWO_NEG_53


class SplitMix64Array:
    """Many SplitMix64 streams advanced in lockstep; state ``i`` starts at ``seeds[i]``."""

    def __init__(self, seeds):
        self.state = np.asarray(seeds, dtype=np.uint64).copy()

    @classmethod
    def consecutive(cls, seed: int, count: int):
        base = np.uint64(seed & MASK64)
        with np.errstate(over="ignore"):
            return cls(base + np.arange(count, dtype=np.uint64))

    def next_u64(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            self.state += np.uint64(GOLDEN_GAMMA)
            z = self.state.copy()
            z ^= z >> np.uint64(30)
            z *= np.uint64(MIX1)
            z ^= z >> np.uint64(27)
            z *= np.uint64(MIX2)
            z ^= z >> np.uint64(31)
        return z

    def uniform(self) -> np.ndarray:
        return (self.next_u64() >> np.uint64(11)).astype(np.float64) * TWO_NEG_53
