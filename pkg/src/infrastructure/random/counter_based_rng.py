import numpy as np

from domain.errors import InvalidArgumentError
from domain.random_source import RandomSource, Stream

MAX_INDICES = 3


class CounterBasedRNG(RandomSource):
    """
    Philox keyed by (seed, stream); the indices occupy the high counter words, so
    distinct coordinates never share a counter block for any realistic number of draws.
    """

    def __init__(self, seed: int) -> None:
        if seed < 0:
            raise InvalidArgumentError(f"seed must be >= 0, got {seed}")
        self.seed = seed

    def generator(self, stream: Stream, *indices: int) -> np.random.Generator:
        if len(indices) > MAX_INDICES:
            raise InvalidArgumentError(f"at most {MAX_INDICES} indices per coordinate, got {len(indices)}")
        if any(i < 0 for i in indices):
            raise InvalidArgumentError(f"indices must be non-negative, got {indices}")

        counter = np.zeros(4, dtype=np.uint64)
        for k, index in enumerate(indices):
            counter[1 + k] = index
        key = np.array([self.seed, int(stream)], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(counter=counter, key=key))
