from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np

from domain.models import Channel


class DegradationSolver(ABC):
    @abstractmethod
    def best_kernel(self, base: Channel, target: Channel) -> Tuple[np.ndarray, float]:
        """
        Find the row-stochastic kernel D minimizing max |base @ D - target|.
        :param base: channel A -> B
        :param target: channel A -> C
        :return: Tuple[kernel, residual]
            - kernel of shape (|B|, |C|), rows non-negative and summing to 1
            - max-abs entrywise residual of base @ kernel against target
        """
