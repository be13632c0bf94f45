from dataclasses import dataclass
from typing import Optional

from domain.errors import InvalidArgumentError

DEFAULT_GRID = 1000
DEFAULT_RESTARTS = 32


@dataclass(frozen=True, slots=True)
class OptimizerSettings:
    """Configuration shared by the simplex maximizers."""

    grid: int = DEFAULT_GRID
    restarts: int = DEFAULT_RESTARTS
    max_iterations: int = 400
    tolerance: float = 1e-12
    seed: int = 0
    workers: int = 1
    aux_cardinality: Optional[int] = None  # None means |A| + 1
    max_grid_points: int = 2_000_000
    initial_step: float = 0.5

    def __post_init__(self) -> None:
        if self.grid < 1:
            raise InvalidArgumentError(f"grid resolution must be >= 1, got {self.grid}")
        if self.restarts < 0:
            raise InvalidArgumentError(f"restarts must be >= 0, got {self.restarts}")
        if self.max_iterations < 1:
            raise InvalidArgumentError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.tolerance < 0.0:
            raise InvalidArgumentError(f"tolerance must be >= 0, got {self.tolerance}")
        if self.seed < 0:
            raise InvalidArgumentError(f"seed must be >= 0, got {self.seed}")
        if self.workers < 1:
            raise InvalidArgumentError(f"workers must be >= 1, got {self.workers}")
        if self.aux_cardinality is not None and self.aux_cardinality < 1:
            raise InvalidArgumentError(f"aux_cardinality must be >= 1, got {self.aux_cardinality}")
        if self.max_grid_points < 1:
            raise InvalidArgumentError(f"max_grid_points must be >= 1, got {self.max_grid_points}")
        if self.initial_step <= 0.0:
            raise InvalidArgumentError(f"initial_step must be > 0, got {self.initial_step}")

    def resolved_aux_cardinality(self, input_size: int) -> int:
        return self.aux_cardinality if self.aux_cardinality is not None else input_size + 1


@dataclass(frozen=True, slots=True)
class TypicalityConstants:
    """c0 in the default f1(delta) = f2(delta) = f(delta) = c0 * |A| * |B| * delta."""

    c0: float = 4.0

    def __post_init__(self) -> None:
        if self.c0 <= 0.0:
            raise InvalidArgumentError(f"c0 must be > 0, got {self.c0}")

    def slack(self, input_size: int, output_size: int, delta: float) -> float:
        return self.c0 * input_size * output_size * delta
