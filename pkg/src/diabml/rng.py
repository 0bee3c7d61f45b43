"""SplitMix64 generator.

Every stochastic step in the package draws from this generator so that
datasets and fold plans are bit-identical across platforms.
"""

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Integer in [0, n) via multiply-shift: ``(next_u64() * n) >> 64``."""
        if n <= 0:
            raise ValueError("n must be positive")
        return (self.next_u64() * n) >> 64

    def uniform01(self) -> float:
        """Float in [0, 1) from the top 53 bits of one draw."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> None:
        # Fisher-Yates from the tail, one draw per position.
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_seed(seed: int, salt: int) -> int:
    """First output of a SplitMix64 seeded with ``seed ^ salt``."""
    return SplitMix64((seed ^ salt) & MASK64).next_u64()
