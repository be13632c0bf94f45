from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger

from domain.random_source import RandomSource, Stream
from domain.secrecy_objectives import Point, SimplexObjective
from domain.settings import OptimizerSettings
from domain.simplex_maximizer import (
    MaximizationResult,
    OptimizationMethod,
    SimplexMaximizer,
    project_rows_to_simplex,
)
from infrastructure.random.counter_based_rng import CounterBasedRNG

MAX_BACKTRACKS = 60
MAX_STEP = 1e3


class ProjectedGradientMaximizer(SimplexMaximizer):
    """
    Monotone projected-gradient ascent from the uniform point, the caller's seeds and
    `settings.restarts` random points. Restarts are reduced by (value, -start index).
    """

    def __init__(self, settings: OptimizerSettings, random_source: RandomSource) -> None:
        self.settings = settings
        self.random_source = random_source

    def ascend(self, objective: SimplexObjective, start: Point) -> Tuple[Point, float]:
        point = tuple(project_rows_to_simplex(block) for block in start)
        value = objective.value(point)
        step = self.settings.initial_step
        gain = 0.0

        for _ in range(self.settings.max_iterations):
            gradient = objective.gradient(point)
            improved = False
            for _ in range(MAX_BACKTRACKS):
                candidate = tuple(project_rows_to_simplex(b + step * g) for b, g in zip(point, gradient))
                candidate_value = objective.value(candidate)
                if candidate_value > value:
                    gain = candidate_value - value
                    point, value = candidate, candidate_value
                    step = min(step * 2.0, MAX_STEP)
                    improved = True
                    break
                step *= 0.5
            if not improved or gain <= self.settings.tolerance:
                break

        return point, value

    def _random_start(self, objective: SimplexObjective, index: int) -> Point:
        rng = self.random_source.generator(Stream.RESTART, index)
        return tuple(rng.dirichlet(np.ones(cols), size=rows) for rows, cols in objective.block_shapes)

    def maximize(self, objective: SimplexObjective, seeds: Sequence[Point] = ()) -> MaximizationResult:
        starts: List[Point] = [objective.uniform_point(), *seeds]
        starts += [self._random_start(objective, i) for i in range(self.settings.restarts)]

        if self.settings.workers > 1:
            with ThreadPoolExecutor(max_workers=self.settings.workers) as pool:
                outcomes = list(pool.map(lambda s: self.ascend(objective, s), starts))
        else:
            outcomes = [self.ascend(objective, s) for s in starts]

        best_index = 0
        for i, (_, value) in enumerate(outcomes):
            logger.debug(f"start {i}: value {value:.12f}")
            if value > outcomes[best_index][1]:
                best_index = i

        point, value = outcomes[best_index]
        return MaximizationResult(point, value, OptimizationMethod.MULTI_START, best_index)

    @staticmethod
    def create(settings: OptimizerSettings) -> "ProjectedGradientMaximizer":
        return ProjectedGradientMaximizer(settings, CounterBasedRNG(settings.seed))
