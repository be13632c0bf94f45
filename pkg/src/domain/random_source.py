from abc import ABC, abstractmethod
from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    CODEBOOK = 1
    RESTART = 2
    MONTE_CARLO = 3
    CHERNOFF = 4
    PARTITION = 5


class RandomSource(ABC):
    @abstractmethod
    def generator(self, stream: Stream, *indices: int) -> np.random.Generator:
        """
        Independent generator for one (stream, indices) coordinate.
        The same coordinate always yields the same draws, whatever the call order.
        :param stream: purpose of the draws
        :param indices: up to three non-negative integers, e.g. (encoder, j, l)
        """
