from typing import Optional, Sequence, Tuple

from loguru import logger

from domain.degradation_solver import DegradationSolver
from domain.models import Channel, DegradationWitness
from infrastructure.optimization.scipy_degradation_solver import ScipyDegradationSolver

DEGRADATION_TOLERANCE = 1e-9


class DegradationService:
    def __init__(self, solver: DegradationSolver, tolerance: float = DEGRADATION_TOLERANCE) -> None:
        self.solver = solver
        self.tolerance = tolerance

    def find(self, base: Channel, target: Channel) -> Optional[DegradationWitness]:
        """Witness D with base @ D == target, or None when target is not a degraded version of base."""
        kernel, residual = self.solver.best_kernel(base, target)
        if residual > self.tolerance:
            logger.debug(f"No degradation kernel: best residual {residual:.3e} > {self.tolerance:.0e}")
            return None
        return DegradationWitness(kernel=Channel(kernel), residual=residual)

    def first_violation(self, bases: Sequence[Channel], targets: Sequence[Channel]) -> Optional[Tuple[int, int]]:
        """Smallest (base index, target index) pair for which the target is not degraded w.r.t. the base."""
        for i, base in enumerate(bases):
            for k, target in enumerate(targets):
                if self.find(base, target) is None:
                    return i, k
        return None

    @staticmethod
    def create(tolerance: float = DEGRADATION_TOLERANCE) -> "DegradationService":
        return DegradationService(ScipyDegradationSolver(), tolerance)


def find_degradation(
    base: Channel, target: Channel, service: Optional[DegradationService] = None
) -> Optional[DegradationWitness]:
    return (service or DegradationService.create()).find(base, target)


def is_degraded(base: Channel, target: Channel, service: Optional[DegradationService] = None) -> bool:
    """True when `target` is a degraded version of `base`."""
    return find_degradation(base, target, service) is not None
