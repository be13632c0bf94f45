from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from domain.secrecy_objectives import Point, SimplexObjective


class OptimizationMethod(str, Enum):
    GRID_SEARCH = "grid-search"
    MULTI_START = "multi-start"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True, slots=True, eq=False)
class MaximizationResult:
    point: Point
    value: float
    method: OptimizationMethod
    start_index: int = 0


class SimplexMaximizer(ABC):
    @abstractmethod
    def maximize(self, objective: SimplexObjective, seeds: Sequence[Point] = ()) -> MaximizationResult:
        """
        Maximize `objective` over its product of simplices.
        :param objective: objective to maximize
        :param seeds: extra starting points tried besides the maximizer's own
        :return: best point found with its value
        """


def project_rows_to_simplex(values: np.ndarray) -> np.ndarray:
    """Euclidean projection of every row onto the probability simplex."""
    values = np.atleast_2d(values)
    k = values.shape[1]
    ordered = -np.sort(-values, axis=1)
    cumulative = np.cumsum(ordered, axis=1) - 1.0
    ranks = np.arange(1, k + 1)
    active = ordered - cumulative / ranks > 0.0
    rho = active.sum(axis=1) - 1
    theta = cumulative[np.arange(values.shape[0]), rho] / (rho + 1)
    return np.maximum(values - theta[:, None], 0.0)
