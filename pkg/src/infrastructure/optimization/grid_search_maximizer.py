from typing import Optional, Sequence

import numpy as np
from loguru import logger
from scipy.optimize import minimize_scalar

from domain.errors import InvalidArgumentError
from domain.secrecy_objectives import Point, SecrecyGapObjective, SimplexObjective
from domain.settings import OptimizerSettings
from domain.simplex_maximizer import MaximizationResult, OptimizationMethod, SimplexMaximizer
from infrastructure.optimization.projected_gradient_maximizer import ProjectedGradientMaximizer

MAX_GRID_INPUTS = 3
CHUNK_SIZE = 1 << 16


def grid_point_count(input_size: int, resolution: int) -> int:
    if input_size == 1:
        return 1
    if input_size == 2:
        return resolution + 1
    return (resolution + 1) * (resolution + 2) // 2


def simplex_grid(input_size: int, resolution: int) -> np.ndarray:
    """Every distribution with entries in {0, 1/N, ..., 1} for |A| <= 3, one per row."""
    if input_size == 1:
        return np.ones((1, 1))
    if input_size == 2:
        k = np.arange(resolution + 1)
        return np.stack([(resolution - k) / resolution, k / resolution], axis=1)
    if input_size == 3:
        i, j = np.triu_indices(resolution + 1)
        # (i, j - i, N - j) enumerates all compositions of N into three parts
        return np.stack([i, j - i, resolution - j], axis=1) / resolution
    raise InvalidArgumentError(f"grid search supports at most {MAX_GRID_INPUTS} inputs, got {input_size}")


class GridSearchMaximizer(SimplexMaximizer):
    """
    Sweep of the simplex at step 1/grid. With `refine` the best grid point is polished
    (bounded scalar search for two inputs, projected ascent for three); without it the
    sweep is the brute-force oracle and reports EXHAUSTIVE.
    """

    def __init__(
        self,
        settings: OptimizerSettings,
        refine: bool = True,
        local_maximizer: Optional[ProjectedGradientMaximizer] = None,
    ) -> None:
        self.settings = settings
        self.refine = refine
        self.local_maximizer = local_maximizer

    def _resolution(self, input_size: int) -> int:
        resolution = self.settings.grid
        while resolution > 1 and grid_point_count(input_size, resolution) > self.settings.max_grid_points:
            resolution //= 2
        if resolution != self.settings.grid:
            logger.warning(
                f"Grid resolution reduced from {self.settings.grid} to {resolution} "
                f"to stay within {self.settings.max_grid_points} points"
            )
        return resolution

    def maximize(self, objective: SimplexObjective, seeds: Sequence[Point] = ()) -> MaximizationResult:
        if not isinstance(objective, SecrecyGapObjective):
            raise InvalidArgumentError("grid search only applies to single-distribution objectives")
        size = objective.input_size
        resolution = self._resolution(size)
        grid = simplex_grid(size, resolution)

        values = np.concatenate([objective.values(grid[i : i + CHUNK_SIZE]) for i in range(0, len(grid), CHUNK_SIZE)])
        best = int(np.argmax(values))
        point: Point = (grid[best][None, :],)
        value = objective.value(point)

        if not self.refine:
            return MaximizationResult(point, value, OptimizationMethod.EXHAUSTIVE, best)

        step = 1.0 / resolution
        if size == 2:
            x0 = float(grid[best][1])
            result = minimize_scalar(
                lambda x: -float(objective.values(np.array([[1.0 - x, x]]))[0]),
                bounds=(max(0.0, x0 - step), min(1.0, x0 + step)),
                method="bounded",
                options={"xatol": 1e-10},
            )
            candidate: Point = (np.array([[1.0 - result.x, result.x]]),)
            candidate_value = objective.value(candidate)
            if candidate_value > value:
                point, value = candidate, candidate_value
        elif size == 3 and self.local_maximizer is not None:
            candidate, candidate_value = self.local_maximizer.ascend(objective, point)
            if candidate_value > value:
                point, value = candidate, candidate_value

        for seed in seeds:
            seed_value = objective.value(seed)
            if seed_value > value:
                point, value = seed, seed_value

        return MaximizationResult(point, value, OptimizationMethod.GRID_SEARCH, best)

    @staticmethod
    def create(settings: OptimizerSettings, refine: bool = True) -> "GridSearchMaximizer":
        return GridSearchMaximizer(settings, refine, ProjectedGradientMaximizer.create(settings))
