from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from loguru import logger

from application.capacity_service import SecrecyCapacityService
from domain.bounds import default_epsilon
from domain.coding import (
    Codebook,
    CodingRegime,
    DecoderSets,
    ExpurgationResult,
    StateErrors,
    StateLeakage,
    build_decoder,
    encoder_layout,
    evaluate_error,
    evaluate_leakage,
    expurgate,
    sample_codebook,
    truncated_inputs,
)
from domain.coding_report import CodingReport, StateCodingSummary
from domain.errors import InvalidArgumentError
from domain.models import CompoundWiretap, ComputationBudget, Distribution
from domain.secrecy_events import EventDiagnostics, build_theta, check_chernoff_events, secrecy_chain_distances
from domain.settings import TypicalityConstants
from domain.typicality import TypicalityParams
from infrastructure.random.counter_based_rng import CounterBasedRNG

SweepRow = Tuple[int, float, float, float]


class InputStrategy(str, Enum):
    UNIFORM = "uniform"
    OPTIMIZED = "optimized"


@dataclass(frozen=True, slots=True)
class SimulationParameters:
    regime: CodingRegime
    n: int
    delta: Optional[float] = None  # None means 1/n
    tau: float = 0.1
    seed: int = 0
    override_messages: Optional[int] = None
    override_randomisation: Optional[int] = None
    eta: Optional[float] = None
    epsilon: Optional[float] = None  # None means 2^(-n c' delta^2)
    inputs: InputStrategy = InputStrategy.UNIFORM

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidArgumentError(f"blocklength must be >= 1, got {self.n}")
        if self.tau <= 0.0:
            raise InvalidArgumentError(f"tau must be > 0, got {self.tau}")
        if self.seed < 0:
            raise InvalidArgumentError(f"seed must be >= 0, got {self.seed}")

    @property
    def typicality(self) -> TypicalityParams:
        return TypicalityParams(delta=self.delta if self.delta is not None else 1.0 / self.n, n=self.n)


@dataclass(frozen=True, slots=True, eq=False)
class SimulationResult:
    report: CodingReport
    codebook: Codebook
    decoder: DecoderSets
    errors: Tuple[StateErrors, ...]
    leakage: Tuple[StateLeakage, ...]
    expurgation: ExpurgationResult
    events: Tuple[EventDiagnostics, ...]


@dataclass(frozen=True, slots=True)
class ChernoffFailureRate:
    trials: int
    failures: int
    analytic_bound: Optional[float]
    vacuous: bool

    @property
    def rate(self) -> float:
        return self.failures / self.trials if self.trials else 0.0


class CodingLabService:
    """Sample, decode, expurgate and evaluate one random code of the selected regime."""

    def __init__(
        self,
        capacity_service: SecrecyCapacityService,
        constants: TypicalityConstants,
        budget: ComputationBudget,
    ) -> None:
        self.capacity_service = capacity_service
        self.constants = constants
        self.budget = budget

    def encoder_inputs(
        self, compound: CompoundWiretap, regime: CodingRegime, strategy: InputStrategy
    ) -> List[Distribution]:
        """One input distribution per encoder: uniform, or the optimizers of the matching rate formula."""
        encoders, state_encoders, _ = encoder_layout(compound, regime)
        if strategy is InputStrategy.UNIFORM:
            return [Distribution.uniform(compound.input_size)] * encoders

        if regime is CodingRegime.NO_CSI:
            return [self.capacity_service.no_csi_lower(compound).argmax_input]
        if regime is CodingRegime.CSI:
            report = self.capacity_service.csi_rate_no_prefix(compound)
            by_state = {(term.legit_index, term.eaves_index): term.argmax for term in report.per_state_terms}
            return [by_state[(t, s)] for t, s, _ in state_encoders]
        report = self.capacity_service.csi_t_lower(compound)
        by_legit = {term.legit_index: term.argmax for term in report.per_state_terms}
        return [by_legit[t] for t in range(encoders)]

    def sample(
        self,
        compound: CompoundWiretap,
        parameters: SimulationParameters,
        inputs: Optional[Sequence[Distribution]] = None,
    ) -> Tuple[Codebook, Sequence[Distribution]]:
        if inputs is None:
            inputs = self.encoder_inputs(compound, parameters.regime, parameters.inputs)
        codebook = sample_codebook(
            compound,
            parameters.regime,
            inputs,
            parameters.typicality,
            parameters.tau,
            CounterBasedRNG(parameters.seed),
            seed=parameters.seed,
            override_messages=parameters.override_messages,
            override_randomisation=parameters.override_randomisation,
            budget=self.budget,
        )
        return codebook, inputs

    def _events(
        self,
        compound: CompoundWiretap,
        codebook: Codebook,
        inputs: Sequence[Distribution],
        epsilon: float,
    ) -> Tuple[Tuple[EventDiagnostics, ...], Tuple[float, ...], Tuple[float, ...]]:
        params = codebook.params
        truncated = truncated_inputs(inputs, params, self.budget)
        events, masses, chains = [], [], []
        for t, s, e in codebook.state_encoders:
            theta = build_theta(
                truncated[e], compound.eaves[s], params, epsilon, constants=self.constants, budget=self.budget
            )
            events.append(check_chernoff_events(codebook, e, compound.eaves[s], theta, params, self.budget))
            masses.append(theta.mass)
            chains.append(float(secrecy_chain_distances(codebook, e, compound.eaves[s], theta, self.budget).max()))
        return tuple(events), tuple(masses), tuple(chains)

    def evaluate(
        self,
        compound: CompoundWiretap,
        codebook: Codebook,
        inputs: Sequence[Distribution],
        eta: Optional[float] = None,
        epsilon: Optional[float] = None,
    ) -> SimulationResult:
        decoder = build_decoder(codebook, compound.legit, budget=self.budget)
        errors = evaluate_error(codebook, decoder, compound.legit, self.budget)
        expurgation = expurgate(codebook, decoder, errors, eta)
        leakage = evaluate_leakage(codebook, compound.eaves, self.budget)
        epsilon = epsilon if epsilon is not None else default_epsilon(codebook.params)
        events, masses, chains = self._events(compound, codebook, inputs, epsilon)

        states = []
        for k, (t, s, e) in enumerate(codebook.state_encoders):
            kept_max = None if expurgation.is_empty else float(errors[k].per_message[expurgation.kept].max())
            states.append(
                StateCodingSummary(
                    legit_index=t,
                    eaves_index=s,
                    encoder=e,
                    average_error=errors[k].average,
                    max_error=errors[k].maximum,
                    expurgated_max_error=kept_max,
                    leakage_bits=leakage[k].leakage_bits,
                    max_output_distance=leakage[k].max_distance,
                    theta_mass=masses[k],
                    events_held=events[k].held,
                    chain_distance=chains[k],
                    chernoff_bound=events[k].analytic_bound,
                )
            )

        report = CodingReport(
            regime=codebook.regime,
            n=codebook.n,
            delta=codebook.delta,
            tau=codebook.tau,
            epsilon=epsilon,
            seed=codebook.seed,
            message_count=codebook.message_count,
            randomisation_counts=codebook.randomisation_counts,
            message_rate=codebook.message_rate,
            randomisation_rates=codebook.randomisation_rates,
            exponent_scaled=codebook.exponent_scaled,
            states=tuple(states),
            eta=expurgation.eta,
            removed_fraction=expurgation.removed_fraction,
            kept_messages=int(expurgation.kept.size),
        )
        return SimulationResult(report, codebook, decoder, errors, leakage, expurgation, events)

    def simulate(self, compound: CompoundWiretap, parameters: SimulationParameters) -> SimulationResult:
        logger.info(f"Simulating {parameters.regime.value} code at n={parameters.n}, seed={parameters.seed}")
        codebook, inputs = self.sample(compound, parameters)
        return self.evaluate(compound, codebook, inputs, parameters.eta, parameters.epsilon)

    def sweep(
        self, compound: CompoundWiretap, parameters: SimulationParameters, lengths: Sequence[int]
    ) -> List[SweepRow]:
        """(n, message rate, worst average error, worst leakage) per blocklength; delta follows 1/n unless fixed."""
        rows = []
        for n in lengths:
            result = self.simulate(compound, replace(parameters, n=n))
            rows.append(result.report.sweep_row())
        return rows

    def chernoff_failure_rate(
        self, compound: CompoundWiretap, parameters: SimulationParameters, seeds: int
    ) -> ChernoffFailureRate:
        """Fraction of failed concentration events over `seeds` independently sampled codebooks."""
        if seeds < 1:
            raise InvalidArgumentError(f"seeds must be >= 1, got {seeds}")
        params = parameters.typicality
        epsilon = parameters.epsilon if parameters.epsilon is not None else default_epsilon(params)
        inputs = self.encoder_inputs(compound, parameters.regime, parameters.inputs)
        truncated = truncated_inputs(inputs, params, self.budget)

        thetas = {}
        trials = failures = 0
        bound: Optional[float] = None
        vacuous = False
        for seed in range(seeds):
            codebook, _ = self.sample(compound, replace(parameters, seed=seed), inputs)
            for t, s, e in codebook.state_encoders:
                if (e, s) not in thetas:
                    thetas[(e, s)] = build_theta(
                        truncated[e], compound.eaves[s], params, epsilon, constants=self.constants, budget=self.budget
                    )
                diagnostics = check_chernoff_events(codebook, e, compound.eaves[s], thetas[(e, s)], params, self.budget)
                trials += diagnostics.holds.size
                failures += int((~diagnostics.holds).sum())
                vacuous = vacuous or diagnostics.vacuous
                if diagnostics.analytic_bound is not None:
                    bound = max(bound or 0.0, diagnostics.analytic_bound)

        logger.info(f"Concentration events failed {failures} / {trials} times over {seeds} codebook(s)")
        return ChernoffFailureRate(trials=trials, failures=failures, analytic_bound=bound, vacuous=vacuous)

    @staticmethod
    def create(
        capacity_service: Optional[SecrecyCapacityService] = None,
        constants: TypicalityConstants = TypicalityConstants(),
        budget: ComputationBudget = ComputationBudget(),
    ) -> "CodingLabService":
        return CodingLabService(
            capacity_service=capacity_service or SecrecyCapacityService.create(budget=budget),
            constants=constants,
            budget=budget,
        )

