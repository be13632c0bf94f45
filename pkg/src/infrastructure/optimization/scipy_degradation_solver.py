from dataclasses import dataclass
from typing import Tuple

import numpy as np
from loguru import logger
from scipy.optimize import linprog

from domain.degradation_solver import DegradationSolver
from domain.errors import DimensionMismatchError
from domain.models import Channel


@dataclass(frozen=True, slots=True)
class ScipyDegradationSolverConfig:
    method: str = "highs-ds"
    feasibility_tolerance: float = 1e-10


class ScipyDegradationSolver(DegradationSolver):
    """
    Min-max residual program solved with scipy's HiGHS backend.

    Variables are the |B|*|C| kernel entries (row-major) followed by the residual bound r:
        minimize r
        subject to  -r <= (base @ D - target)[a, c] <= r,   D >= 0,   sum_c D[b, c] = 1
    """

    def __init__(self, config: ScipyDegradationSolverConfig = ScipyDegradationSolverConfig()) -> None:
        self.config = config

    def best_kernel(self, base: Channel, target: Channel) -> Tuple[np.ndarray, float]:
        if base.input_size != target.input_size:
            raise DimensionMismatchError(
                f"base has {base.input_size} inputs, target has {target.input_size}",
                base.input_size,
                target.input_size,
            )
        n_in, n_mid, n_out = base.input_size, base.output_size, target.output_size
        n_kernel = n_mid * n_out

        # (base @ D)[a, c] = sum_b base[a, b] * D[b, c]
        mixing = np.kron(base.rows, np.eye(n_out))
        ones = np.ones((n_in * n_out, 1))
        a_ub = np.vstack([np.hstack([mixing, -ones]), np.hstack([-mixing, -ones])])
        b_ub = np.concatenate([target.rows.reshape(-1), -target.rows.reshape(-1)])

        a_eq = np.hstack([np.kron(np.eye(n_mid), np.ones((1, n_out))), np.zeros((n_mid, 1))])
        b_eq = np.ones(n_mid)

        cost = np.zeros(n_kernel + 1)
        cost[-1] = 1.0

        result = linprog(
            cost,
            A_ub=a_ub,
            b_ub=b_ub,
            A_eq=a_eq,
            b_eq=b_eq,
            bounds=[(0.0, None)] * (n_kernel + 1),
            method=self.config.method,
            options={
                "primal_feasibility_tolerance": self.config.feasibility_tolerance,
                "dual_feasibility_tolerance": self.config.feasibility_tolerance,
            },
        )
        if result.x is None:
            logger.warning(f"Degradation program did not return a point: {result.message}")
            kernel = np.full((n_mid, n_out), 1.0 / n_out)
        else:
            kernel = np.clip(result.x[:n_kernel].reshape(n_mid, n_out), 0.0, None)
            kernel = kernel / kernel.sum(axis=1, keepdims=True)

        residual = float(np.max(np.abs(base.rows @ kernel - target.rows)))
        return kernel, residual
