"""
The two worked binary examples: a compound where the message but not the (message, randomisation)
pair can be decoded, and a convex family with positive CSI secrecy rate but zero rate without CSI.
"""

from dataclasses import asdict, dataclass
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from application.capacity_service import SecrecyCapacityService
from application.degradation_service import DegradationService
from domain.channel_algebra import binary_convolution, bsc, compose, convex_combine, product_extension
from domain.errors import InvalidArgumentError
from domain.example_reports import ExampleReport, ScenarioCheck
from domain.information import binary_entropy, mutual_information, mutual_information_batch
from domain.models import Channel, CompoundWiretap, ComputationBudget, Distribution, Pairing
from infrastructure.optimization.grid_search_maximizer import simplex_grid

MARGIN = 1e-3
NULL_TOLERANCE = 1e-12
CONVERSE_TOLERANCE = 1e-6
OPTIMIZER_SLACK = 2e-4
ALGEBRA_TOLERANCE = 1e-12


def lattice_points(size: int, resolution: int) -> np.ndarray:
    """Every distribution on `size` letters with entries in {0, 1/N, ..., 1}."""
    if size < 1 or resolution < 1:
        raise InvalidArgumentError(f"need size >= 1 and resolution >= 1, got {size} and {resolution}")
    rows = []
    # stars and bars: the bar positions split N stars into `size` parts
    for bars in combinations(range(resolution + size - 1), size - 1):
        edges = (-1,) + bars + (resolution + size - 1,)
        rows.append([edges[k + 1] - edges[k] - 1 for k in range(size)])
    return np.array(rows, dtype=float) / resolution


def _check(name: str, value: float, threshold: float, passed: bool) -> ScenarioCheck:
    if not passed:
        logger.warning(f"{name}: {value:.6g} against {threshold:.6g}")
    return ScenarioCheck(name=name, value=float(value), threshold=float(threshold), passed=bool(passed))


@dataclass(frozen=True, slots=True)
class Example1Parameters:
    eta: float = 0.01
    tau: float = 0.05
    tau_hat: float = 0.45
    nu: float = 0.01

    def __post_init__(self) -> None:
        if not 0.0 <= self.eta < 0.5 or not 0.0 <= self.tau < 0.5:
            raise InvalidArgumentError(f"eta and tau must lie in [0, 1/2), got {self.eta} and {self.tau}")
        if not 0.0 < self.tau_hat <= 0.5:
            raise InvalidArgumentError(f"tau_hat must lie in (0, 1/2], got {self.tau_hat}")
        if self.nu <= 0.0:
            raise InvalidArgumentError(f"nu must be > 0, got {self.nu}")


@dataclass(frozen=True, slots=True)
class Example2Parameters:
    eta: float = 0.1
    tau: float = 0.1
    grid_points: int = 21
    lengths: Tuple[int, ...] = (1, 2)
    lattice_resolution: int = 10
    multiletter: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.eta < 0.5 or not 0.0 < self.tau < 0.5:
            raise InvalidArgumentError(f"eta and tau must lie in (0, 1/2), got {self.eta} and {self.tau}")
        if self.grid_points < 2:
            raise InvalidArgumentError(f"grid_points must be >= 2, got {self.grid_points}")
        if not self.lengths or any(n < 1 for n in self.lengths):
            raise InvalidArgumentError(f"lengths must be positive, got {self.lengths}")


def example2_crossover(t: float, eta: float, tau: float) -> float:
    """f(t, eta, tau) = eta + t s - 2 eta t s with s = 2 tau - 2 tau^2, so that W_t = D_f."""
    step = 2.0 * tau - 2.0 * tau**2
    return eta + t * step - 2.0 * eta * t * step


@dataclass(frozen=True, slots=True, eq=False)
class Example2Family:
    times: np.ndarray
    legit: Tuple[Channel, ...]
    eaves: Tuple[Channel, ...]

    @property
    def compound(self) -> CompoundWiretap:
        return CompoundWiretap(legit=self.legit, eaves=self.eaves, pairing=Pairing.MATCHED)


def example2_family(parameters: Example2Parameters) -> Example2Family:
    """W_t = (1 - t) W_0 + t W_1 and V_t = (1 - t) V_0 + t V_1 on an even grid of t in [0, 1]."""
    w0 = bsc(parameters.eta)
    v0 = compose(w0, bsc(parameters.tau))
    w1 = compose(v0, bsc(parameters.tau))
    v1 = compose(w1, bsc(parameters.tau))
    times = np.linspace(0.0, 1.0, parameters.grid_points)
    legit = tuple(convex_combine([w0, w1], (1.0 - t, t)) for t in times)
    eaves = tuple(convex_combine([v0, v1], (1.0 - t, t)) for t in times)
    return Example2Family(times=times, legit=legit, eaves=eaves)


class GoldenScenarios:
    def __init__(
        self,
        capacity_service: SecrecyCapacityService,
        degradation_service: DegradationService,
        budget: ComputationBudget,
    ) -> None:
        self.capacity_service = capacity_service
        self.degradation_service = degradation_service
        self.budget = budget

    def _binary_grid(self) -> np.ndarray:
        return simplex_grid(2, self.capacity_service.settings.grid)

    def run_example1(self, parameters: Example1Parameters = Example1Parameters()) -> ExampleReport:
        logger.info(f"Example 1 with {asdict(parameters)}")
        w0 = bsc(parameters.eta)
        v0 = compose(w0, bsc(parameters.tau))
        w1 = compose(v0, bsc(parameters.tau_hat))
        v1 = bsc(0.5)
        compound = CompoundWiretap(legit=(w0, w1), eaves=(v0, v1), pairing=Pairing.MATCHED)
        p0 = Distribution.uniform(2)

        legit_0 = mutual_information(p0, w0)
        eaves_0 = mutual_information(p0, v0)
        joint_rate = legit_0 - 3.0 * parameters.nu / 4.0
        message_rate = legit_0 - eaves_0 - parameters.nu
        ceiling = self.capacity_service.compound_capacity(compound)
        worst_eaves_1 = float(mutual_information_batch(self._binary_grid(), v1.rows).max())
        csi = self.capacity_service.csi_rate_no_prefix(compound)

        quantities = {
            "I(p0,W0)": legit_0,
            "I(p0,V0)": eaves_0,
            "I(p0,W1)": mutual_information(p0, w1),
            "max_p I(p,W1)": ceiling.value,
            "max_p I(p,V1)": worst_eaves_1,
            "joint_rate": joint_rate,
            "message_rate": message_rate,
            "randomisation_exponent": eaves_0 + parameters.nu / 4.0,
            "csi_rate": csi.value,
            "W1_crossover": float(w1.rows[0, 1]),
        }
        checks = (
            _check(
                "eavesdropper state 1 learns nothing", worst_eaves_1, NULL_TOLERANCE, worst_eaves_1 <= NULL_TOLERANCE
            ),
            _check(
                "(j, l) pairs exceed the compound capacity",
                joint_rate - ceiling.value,
                MARGIN,
                joint_rate > ceiling.value + MARGIN,
            ),
            _check("message rate is positive", message_rate, MARGIN, message_rate > MARGIN),
        )
        return ExampleReport(name="example1", parameters=asdict(parameters), quantities=quantities, checks=checks)

    def _converse_gap(self, family: Example2Family, n: int, resolution: int) -> float:
        """max over lattice p on A^n of I(p, W_1^n) - max_t I(p, V_t^n)."""
        inputs = lattice_points(2**n, resolution) if n > 1 else self._binary_grid()
        w1 = product_extension(family.legit[-1], n, self.budget)
        eaves = [product_extension(v, n, self.budget) for v in family.eaves]
        best_eaves = np.max([mutual_information_batch(inputs, v.rows) for v in eaves], axis=0)
        return float((mutual_information_batch(inputs, w1.rows) - best_eaves).max())

    def run_example2(self, parameters: Example2Parameters = Example2Parameters()) -> ExampleReport:
        logger.info(f"Example 2 with {asdict(parameters)}")
        family = example2_family(parameters)
        eta, tau = parameters.eta, parameters.tau
        uniform = Distribution.uniform(2)

        crossovers = np.array([example2_crossover(t, eta, tau) for t in family.times])
        algebra_error = max(
            float(np.abs(w.rows - bsc(f).rows).max()) for w, f in zip(family.legit, crossovers)
        )
        closed_form = np.array([binary_entropy(binary_convolution(tau, f)) - binary_entropy(f) for f in crossovers])
        uniform_gaps = np.array(
            [
                mutual_information(uniform, w) - mutual_information(uniform, v)
                for w, v in zip(family.legit, family.eaves)
            ]
        )
        closed_form_error = float(np.abs(closed_form - uniform_gaps).max())

        compound = family.compound
        csi = self.capacity_service.csi_rate_no_prefix(compound)
        no_csi = self.capacity_service.no_csi_lower(compound)
        v0 = family.eaves[0]
        degraded = [self.degradation_service.find(v0, v) is not None for v in family.eaves]
        w1_below_v0 = self.degradation_service.find(v0, family.legit[-1]) is not None
        converse = {n: self._converse_gap(family, n, parameters.lattice_resolution) for n in parameters.lengths}

        quantities = {
            "t": family.times.tolist(),
            "f": crossovers.tolist(),
            "closed_form_gaps": closed_form.tolist(),
            "min_closed_form_gap": float(closed_form.min()),
            "algebra_error": algebra_error,
            "closed_form_error": closed_form_error,
            "csi_rate": csi.value,
            "no_csi_raw": no_csi.raw_value,
            "V_t_degraded_from_V0": degraded,
            "W1_degraded_from_V0": w1_below_v0,
        }
        checks: List[ScenarioCheck] = [
            _check("W_t equals D_f", algebra_error, ALGEBRA_TOLERANCE, algebra_error <= ALGEBRA_TOLERANCE),
            _check("uniform gap matches h(tau * f) - h(f)", closed_form_error, 1e-9, closed_form_error <= 1e-9),
            _check("CSI positivity on every grid state", float(closed_form.min()), MARGIN, closed_form.min() > MARGIN),
            _check("CSI rate is positive", csi.value, 0.0, csi.value > 0.0),
            _check(
                "no-CSI lower bound vanishes",
                no_csi.raw_value,
                CONVERSE_TOLERANCE,
                no_csi.raw_value <= CONVERSE_TOLERANCE,
            ),
            _check("every V_t is degraded from V_0", float(sum(degraded)), float(len(degraded)), all(degraded)),
            _check("W_1 is degraded from V_0", float(w1_below_v0), 1.0, w1_below_v0),
        ]
        for n, gap in converse.items():
            quantities[f"converse_gap_n{n}"] = gap
            checks.append(
                _check(f"I(p,W_1^n) <= max_t I(p,V_t^n) at n={n}", gap, CONVERSE_TOLERANCE, gap <= CONVERSE_TOLERANCE)
            )

        if parameters.multiletter:
            ladder = self.capacity_service.superadditivity_ladder(compound, max(parameters.lengths))
            for n in parameters.lengths:
                rate = ladder.rates[n - 1]
                quantities[f"multiletter_rate_n{n}"] = rate
                ceiling = CONVERSE_TOLERANCE + OPTIMIZER_SLACK
                checks.append(_check(f"multi-letter rate vanishes at n={n}", rate, ceiling, rate <= ceiling))

        return ExampleReport(
            name="example2", parameters=asdict(parameters), quantities=quantities, checks=tuple(checks)
        )

    @staticmethod
    def create(
        capacity_service: Optional[SecrecyCapacityService] = None,
        budget: ComputationBudget = ComputationBudget(),
    ) -> "GoldenScenarios":
        capacity_service = capacity_service or SecrecyCapacityService.create(budget=budget)
        return GoldenScenarios(
            capacity_service=capacity_service,
            degradation_service=capacity_service.degradation_service,
            budget=budget,
        )
